#include "necklab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "necklab/lorentz.hpp"
#include "necklab/ops.hpp"

namespace necklab {

bool decreasing_last_half(const std::vector<double>& v) {
  // non-increasing, allowing 5% jitter once a series hits its quadrature
  // floor; genuine growth (the defect doubling, say) still fails
  if (v.size() < 2) return true;
  for (std::size_t i = v.size() / 2; i + 1 < v.size(); ++i)
    if (v[i + 1] > v[i] * 1.05 + 1e-14) return false;
  return true;
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

namespace {

// limit references for one bubble: energy, L^{2,1} gradient norm, Hessian L^1
// over the whole plane (truncated to a 16-decade log annulus)
struct BubbleReference {
  double E2, E21, H1;
};

BubbleReference bubble_reference(const RationalMap& m) {
  GridPtr g = Grid::annulus(1e-8, 1e8, 1024, 64);
  BubbleReference ref{0.0, 0.0, 0.0};
  std::vector<std::pair<double, double>> pairs;
  for (int i = 0; i < g->n_r(); ++i) {
    const double h = 0.25 * (g->edge(i + 1) - g->edge(i));
    for (int j = 0; j < g->n_theta(); ++j) {
      const double x = g->radius(i) * std::cos(g->theta(j));
      const double y = g->radius(i) * std::sin(g->theta(j));
      const double w = g->cell_measure(i);
      const double e = m.energy_density({x, y});
      ref.E2 += e * w;
      pairs.emplace_back(std::sqrt(e), w);

      double u[3], gp[3][2], gm[3][2], hx[3][2], hy[3][2];
      m.value_and_gradient({x + h, y}, u, gp);
      m.value_and_gradient({x - h, y}, u, gm);
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 2; ++d) hx[c][d] = (gp[c][d] - gm[c][d]) / (2 * h);
      m.value_and_gradient({x, y + h}, u, gp);
      m.value_and_gradient({x, y - h}, u, gm);
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 2; ++d) hy[c][d] = (gp[c][d] - gm[c][d]) / (2 * h);
      double s = 0.0;
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 2; ++d)
          s += hx[c][d] * hx[c][d] + hy[c][d] * hy[c][d];
      ref.H1 += std::sqrt(s) * w;
    }
  }
  ref.E21 = RearrangedProfile::from_pairs(std::move(pairs)).norm_L21();
  return ref;
}

// integrate g(|f|) over cells of an origin-centered grid whose centers avoid
// the mask disks
template <typename Fn>
double masked_integral(const Field& f, const std::vector<Disk>& masks,
                       Fn&& fn) {
  const Grid& g = f.grid();
  double s = 0.0;
  for (int i = 0; i < g.n_r(); ++i)
    for (int j = 0; j < g.n_theta(); ++j) {
      const double x = g.radius(i) * std::cos(g.theta(j));
      const double y = g.radius(i) * std::sin(g.theta(j));
      bool masked = false;
      for (const auto& d : masks)
        if (in_disk(x, y, d)) {
          masked = true;
          break;
        }
      if (!masked) s += fn(f.at(i, j)) * g.cell_measure(i);
    }
  return s;
}

struct NeckSpec {
  double x, y, r_in, r_out;
};

}  // namespace

SequenceReport verify_sequence(const SequenceSetup& s) {
  SequenceReport rep;
  for (const auto& b : s.bubbles) {
    BubbleReference ref = bubble_reference(b.map);
    rep.bubble_E2.push_back(ref.E2);
    rep.bubble_E21.push_back(ref.E21);
    rep.bubble_H1.push_back(ref.H1);
  }

  const double r = s.r;
  std::vector<CompositeDomain> doms;
  std::vector<SequenceEvaluator> evs;
  std::vector<SampleCloud> omegas;
  for (int k : s.ks) {
    evs.emplace_back(s.body, s.bubbles, k);
    doms.push_back(CompositeDomain::for_sequence(
        evs.back(), 1.0, s.central_n_r, s.central_n_theta,
        s.patch_nodes_per_decade, s.patch_n_theta));
    omegas.push_back(doms.back().cloud([&ev = evs.back()](double x, double y) {
      double u[3], g[3][2];
      if (!ev.eval(x, y, u, g)) return 0.0;
      double t = 0.0;
      for (int c = 0; c < 3; ++c) t += g[c][0] * g[c][0] + g[c][1] * g[c][1];
      return std::sqrt(2.0 * t);
    }));
  }

  rep.extraction = extract_point_scales(omegas, s.eps, s.theta);
  rep.tree = group_strings(rep.extraction, s.theta);
  rep.decomposition = decompose_domains(omegas.back(), rep.tree,
                                        rep.extraction, s.eps, s.delta);

  const double sum_E2 = [&] {
    double t = 0.0;
    for (double e : rep.bubble_E2) t += e;
    return t;
  }();
  const double sum_E21sq = [&] {
    double t = 0.0;
    for (double e : rep.bubble_E21) t += e * e;
    return t;
  }();
  const double sum_H1 = [&] {
    double t = 0.0;
    for (double e : rep.bubble_H1) t += e;
    return t;
  }();

  for (std::size_t ki = 0; ki < s.ks.size(); ++ki) {
    const SequenceEvaluator& ev = evs[ki];
    const CompositeDomain& dom = doms[ki];
    SequenceReportRow row;
    row.k = s.ks[ki];
    row.separation = separation_quantity(s.bubbles, row.k);

    auto grad2 = [&ev](double x, double y) {
      double u[3], g[3][2];
      if (!ev.eval(x, y, u, g)) return 0.0;
      double t = 0.0;
      for (int c = 0; c < 3; ++c) t += g[c][0] * g[c][0] + g[c][1] * g[c][1];
      return t;
    };
    auto in_ball = [r](double x, double y) { return x * x + y * y < r * r; };

    row.E2 = dom.integrate([&](double x, double y) {
      return in_ball(x, y) ? grad2(x, y) : 0.0;
    });
    row.E21 = dom.profile([&](double x, double y) {
                   return in_ball(x, y) ? std::sqrt(grad2(x, y)) : 0.0;
                 }).norm_L21();
    row.grad_L2 = std::sqrt(dom.integrate(grad2));
    row.omega_L2 = std::sqrt(2.0) * row.grad_L2;
    row.sup_grad = dom.max_value([&](double x, double y) {
      return std::sqrt(grad2(x, y));
    });
    row.sqrt_phi_L21K =
        dom.profile([&](double x, double y) {
             if (!in_ball(x, y)) return 0.0;
             double u[3], g[3][2];
             if (!ev.eval(x, y, u, g)) return 0.0;
             double xx = 0, yy = 0, xy = 0;
             for (int c = 0; c < 3; ++c) {
               xx += g[c][0] * g[c][0];
               yy += g[c][1] * g[c][1];
               xy += g[c][0] * g[c][1];
             }
             return std::sqrt(std::hypot(xx - yy, 2.0 * xy));
           }).norm_L21();

    // Hessian L^1 over B_r from second differences of the analytic gradient
    double hess = 0.0;
    dom.for_each_node([&](double x, double y, double w, double h) {
      if (!in_ball(x, y)) return;
      const double hh = 0.25 * h;
      double u[3], gp[3][2], gm[3][2];
      double sum = 0.0;
      if (!ev.eval(x + hh, y, u, gp) || !ev.eval(x - hh, y, u, gm)) return;
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 2; ++d) {
          const double v = (gp[c][d] - gm[c][d]) / (2 * hh);
          sum += v * v;
        }
      if (!ev.eval(x, y + hh, u, gp) || !ev.eval(x, y - hh, u, gm)) return;
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 2; ++d) {
          const double v = (gp[c][d] - gm[c][d]) / (2 * hh);
          sum += v * v;
        }
      hess += std::sqrt(sum) * w;
    });
    row.hess_l1 = hess;
    row.W21 = row.hess_l1 + row.E21;

    // measured gluing defect f_k = -Delta u_k - Omega . grad u_k, assembled
    // piecewise: central grid away from the patches, patch grids inside
    {
      std::vector<Disk> masks;
      for (const auto& p : dom.patches())
        masks.push_back({p.cx, p.cy, p.grid->r_max()});
      Field body_c = constant_body(dom.central(), s.body);
      SynthResult syn = synthesize_sequence(body_c, s.bubbles, row.k);
      Field fm = syn.f.magnitude();
      row.f_LlogL = masked_integral(fm, masks, [](double v) {
        return std::fabs(v) * std::log(2.0 + std::fabs(v));
      });
      row.f_L2 = masked_integral(fm, masks, [](double v) { return v * v; });
      for (const auto& p : dom.patches()) {
        Field body_p = constant_body(p.grid, s.body);
        SynthResult ps =
            synthesize_sequence(body_p, s.bubbles, row.k, p.cx, p.cy);
        Field pfm = ps.f.magnitude();
        const std::vector<Disk> none;
        row.f_LlogL += masked_integral(pfm, none, [](double v) {
          return std::fabs(v) * std::log(2.0 + std::fabs(v));
        });
        row.f_L2 += masked_integral(pfm, none, [](double v) { return v * v; });
      }
      row.f_L2 = std::sqrt(row.f_L2);
    }

    // neck quantities: one annulus per string, taken at this index when the
    // root sequence was matched there
    std::vector<NeckSpec> necks;
    for (const auto& str : rep.tree.strings) {
      const auto& root = rep.extraction.retained[str.root];
      for (std::size_t m = 0; m < root.ks.size(); ++m)
        if (root.ks[m] == static_cast<int>(ki)) {
          // inner radius at the geometric mean of the bubble ball and the
          // neck outer radius: it shrinks absolutely but grows relative to
          // the bubble scale, so neck energy and oscillation genuinely decay
          const double ball = str.gamma * root.rho[m];
          necks.push_back(
              {root.x[m], root.y[m], std::sqrt(ball * s.delta), s.delta});
          break;
        }
    }
    if (!necks.empty()) {
      row.has_neck = true;
      const double a = s.inject_neck;
      auto in_neck = [&necks](double x, double y, const NeckSpec*& hit) {
        for (const auto& n : necks) {
          const double d = std::hypot(x - n.x, y - n.y);
          if (d > n.r_in && d <= n.r_out) {
            hit = &n;
            return true;
          }
        }
        return false;
      };
      auto neck_grad2 = [&](double x, double y) {
        const NeckSpec* n = nullptr;
        if (!in_neck(x, y, n)) return 0.0;
        double g2 = grad2(x, y);
        if (a > 0.0) {
          const double d = std::hypot(x - n->x, y - n->y);
          g2 += (a / d) * (a / d);
        }
        return g2;
      };
      row.neck_E2 = dom.integrate(neck_grad2);
      row.neck_E21 = dom.profile([&](double x, double y) {
                          return std::sqrt(neck_grad2(x, y));
                        }).norm_L21();
      row.neck_sqrt_phi_L21 =
          dom.profile([&](double x, double y) {
               const NeckSpec* n = nullptr;
               if (!in_neck(x, y, n)) return 0.0;
               double u[3], g[3][2];
               if (!ev.eval(x, y, u, g)) return 0.0;
               double xx = 0, yy = 0, xy = 0;
               for (int c = 0; c < 3; ++c) {
                 xx += g[c][0] * g[c][0];
                 yy += g[c][1] * g[c][1];
                 xy += g[c][0] * g[c][1];
               }
               return std::sqrt(std::hypot(xx - yy, 2.0 * xy));
             }).norm_L21();
      double lo[3] = {1e300, 1e300, 1e300}, hi[3] = {-1e300, -1e300, -1e300};
      dom.for_each_node([&](double x, double y, double, double) {
        const NeckSpec* n = nullptr;
        if (!in_neck(x, y, n)) return;
        double u[3], g[3][2];
        if (!ev.eval(x, y, u, g)) return;
        for (int c = 0; c < 3; ++c) {
          lo[c] = std::min(lo[c], u[c]);
          hi[c] = std::max(hi[c], u[c]);
        }
      });
      for (int c = 0; c < 3; ++c)
        row.neck_osc = std::max(row.neck_osc, hi[c] - lo[c]);
      if (a > 0.0) row.neck_osc += 2.0 * a;
    }

    row.defect2 = std::fabs(row.E2 - rep.body_E2 - sum_E2);
    row.defect21 = std::fabs(row.E21 * row.E21 - rep.body_E21 * rep.body_E21 -
                             sum_E21sq);
    row.defectW21 = std::fabs(row.hess_l1 - sum_H1);
    rep.rows.push_back(row);
  }

  // contracts
  std::vector<double> d2, d21, w21, sup, nE2, nE21, nOsc, nPhi;
  for (const auto& row : rep.rows) {
    d2.push_back(row.defect2);
    d21.push_back(row.defect21);
    w21.push_back(row.W21);
    sup.push_back(row.sup_grad);
    if (row.has_neck) {
      nE2.push_back(row.neck_E2);
      nE21.push_back(row.neck_E21);
      nOsc.push_back(row.neck_osc);
      nPhi.push_back(row.neck_sqrt_phi_L21);
    }
  }
  const double total2 = std::max(rep.rows.back().E2, 1e-30);
  const double total21 =
      std::max(rep.rows.back().E21 * rep.rows.back().E21, 1e-30);
  rep.pass_energy =
      decreasing_last_half(d2) && d2.back() < s.tol_ei * std::max(total2, 1.0);
  rep.pass_lorentz = decreasing_last_half(d21) &&
                     d21.back() < s.tol_ei * std::max(total21, 1.0) &&
                     decreasing_last_half(nPhi);
  if (s.bubbles.empty()) {
    rep.pass_neck = nE2.empty();
    rep.pass_global = w21.empty() ? false
                                  : *std::max_element(w21.begin(), w21.end()) <=
                                        3.0 * std::max(median(w21), 1e-30);
  } else {
    rep.pass_neck = !nE2.empty() && decreasing_last_half(nE2) &&
                    decreasing_last_half(nE21) && decreasing_last_half(nOsc) &&
                    nOsc.back() < 0.1;
    rep.pass_global =
        *std::max_element(w21.begin(), w21.end()) <=
            3.0 * std::max(median(w21), 1e-30) &&
        sup.back() >= 10.0 * sup.front();
  }
  return rep;
}

}  // namespace necklab
