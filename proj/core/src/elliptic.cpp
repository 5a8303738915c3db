#include "necklab/elliptic.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "necklab/fft.hpp"
#include "necklab/lorentz.hpp"
#include "necklab/ops.hpp"

namespace necklab {

namespace {

using cplx = std::complex<double>;

// Thomas algorithm; diag/lower/upper are real, rhs complex. Overwrites inputs.
void solve_tridiag(std::vector<double>& lower, std::vector<double>& diag,
                   std::vector<double>& upper, std::vector<cplx>& rhs) {
  const std::size_t n = diag.size();
  for (std::size_t i = 1; i < n; ++i) {
    const double m = lower[i] / diag[i - 1];
    diag[i] -= m * upper[i - 1];
    rhs[i] -= m * rhs[i - 1];
  }
  rhs[n - 1] /= diag[n - 1];
  for (std::size_t i = n - 1; i-- > 0;)
    rhs[i] = (rhs[i] - upper[i] * rhs[i + 1]) / diag[i];
}

std::vector<std::vector<cplx>> mode_rings(const Field& v) {
  ModeTable t = angular_modes(v);
  return std::move(t.rings);
}

}  // namespace

BoundaryData BoundaryData::zero(const Grid& g) {
  BoundaryData bc;
  bc.outer.assign(g.n_theta(), 0.0);
  if (!g.is_disc()) bc.inner = std::vector<double>(g.n_theta(), 0.0);
  return bc;
}

Field poisson_solve(const Field& rhs, const BoundaryData& bc) {
  if (rhs.dim() != 1)
    throw std::invalid_argument("poisson_solve: scalar rhs required");
  const Grid& g = rhs.grid();
  const int nr = g.n_r(), nt = g.n_theta();
  if (static_cast<int>(bc.outer.size()) != nt)
    throw std::invalid_argument("poisson_solve: outer bc size mismatch");
  if (g.is_disc() && bc.inner)
    throw std::invalid_argument("poisson_solve: inner bc on a disc grid");
  if (!g.is_disc() &&
      (!bc.inner || static_cast<int>(bc.inner->size()) != nt))
    throw std::invalid_argument("poisson_solve: inner bc required on annulus");

  auto f = mode_rings(rhs);
  auto outer_modes = dft_ring(bc.outer);
  std::vector<cplx> inner_modes;
  if (bc.inner) inner_modes = dft_ring(*bc.inner);

  // per-mode radial solve; solution modes stored ring-major like f
  std::vector<std::vector<cplx>> sol(nr, std::vector<cplx>(nt));
  std::vector<double> lower(nr), diag(nr), upper(nr);
  std::vector<cplx> b(nr);

  for (int k = 0; k < nt; ++k) {
    const int n = fft_mode(k, nt);
    const double n2 = static_cast<double>(n) * n;
    if (g.is_disc()) {
      const double dr = g.radius(1) - g.radius(0);
      for (int i = 0; i < nr; ++i) {
        const double r = g.radius(i);
        lower[i] = 1.0 / (dr * dr) - 1.0 / (2.0 * r * dr);
        diag[i] = -2.0 / (dr * dr) - n2 / (r * r);
        upper[i] = 1.0 / (dr * dr) + 1.0 / (2.0 * r * dr);
        b[i] = f[i][k];
      }
      // innermost ring: the through-origin ghost carries zero weight
      // because r_0 = dr/2 makes the lower coefficient vanish
      lower[0] = 0.0;
      // outer Dirichlet
      lower[nr - 1] = 0.0;
      diag[nr - 1] = 1.0;
      upper[nr - 1] = 0.0;
      b[nr - 1] = outer_modes[k];
    } else {
      // s = log r uniform: psi_ss - n^2 psi = r^2 rhs
      const double h = std::log(g.radius(1) / g.radius(0));
      for (int i = 0; i < nr; ++i) {
        const double r = g.radius(i);
        lower[i] = 1.0 / (h * h);
        diag[i] = -2.0 / (h * h) - n2;
        upper[i] = 1.0 / (h * h);
        b[i] = f[i][k] * r * r;
      }
      lower[0] = 0.0;
      diag[0] = 1.0;
      upper[0] = 0.0;
      b[0] = inner_modes[k];
      lower[nr - 1] = 0.0;
      diag[nr - 1] = 1.0;
      upper[nr - 1] = 0.0;
      b[nr - 1] = outer_modes[k];
    }
    upper[nr - 1] = 0.0;
    solve_tridiag(lower, diag, upper, b);
    for (int i = 0; i < nr; ++i) sol[i][k] = b[i];
  }

  Field out(rhs.grid_ptr(), 1);
  for (int i = 0; i < nr; ++i) {
    auto ring = idft_ring(sol[i]);
    for (int j = 0; j < nt; ++j) out.at(i, j) = ring[j];
  }
  return out;
}

Field harmonic_extension(GridPtr grid, const BoundaryData& bc) {
  return poisson_solve(Field(grid, 1), bc);
}

namespace {

template <typename Fn>
double radius_filtered(const Field& v, double r_lo, double r_hi, Fn&& fn) {
  const Grid& g = v.grid();
  std::vector<std::pair<double, double>> pairs;
  for (int i = 0; i < g.n_r(); ++i) {
    if (g.radius(i) < r_lo || g.radius(i) > r_hi) continue;
    for (int j = 0; j < g.n_theta(); ++j)
      pairs.emplace_back(std::fabs(v.at(i, j)), g.cell_measure(i));
  }
  if (pairs.empty()) return 0.0;
  return fn(RearrangedProfile::from_pairs(std::move(pairs)));
}

}  // namespace

double integrate_on(const Field& v, double r_lo, double r_hi) {
  const Grid& g = v.grid();
  double s = 0.0;
  for (int i = 0; i < g.n_r(); ++i) {
    if (g.radius(i) < r_lo || g.radius(i) > r_hi) continue;
    for (int j = 0; j < g.n_theta(); ++j) s += v.at(i, j) * g.cell_measure(i);
  }
  return s;
}

double norm_L21_on(const Field& v, double r_lo, double r_hi) {
  return radius_filtered(v, r_lo, r_hi,
                         [](const RearrangedProfile& p) { return p.norm_L21(); });
}

double norm_L2_on(const Field& v, double r_lo, double r_hi) {
  return radius_filtered(v, r_lo, r_hi, [](const RearrangedProfile& p) {
    return p.norm_L2_layercake();
  });
}

WenteReport wente_solve(const Field& a, const Field& b, GridPtr annulus,
                        double lambda) {
  if (a.dim() != 1 || b.dim() != 1 || !a.grid().same_layout(b.grid()))
    throw std::invalid_argument("wente_solve: scalar a, b on one grid");
  if (!a.grid().is_disc())
    throw std::invalid_argument("wente_solve: a, b must live on a disc grid");
  if (annulus->is_disc() || annulus->r_max() > a.grid().r_max())
    throw std::invalid_argument("wente_solve: annulus not covered by disc");

  CartesianGradient ga = to_cartesian(polar_gradient(a));
  CartesianGradient gb = to_cartesian(polar_gradient(b));
  const Grid& gd = a.grid();
  Field rhs(a.grid_ptr(), 1), na2(a.grid_ptr(), 1), nb2(a.grid_ptr(), 1);
  for (int i = 0; i < gd.n_r(); ++i)
    for (int j = 0; j < gd.n_theta(); ++j) {
      // grad a . grad^perp b with grad^perp = (-d_y, d_x)
      rhs.at(i, j) = -ga.u_x.at(i, j) * gb.u_y.at(i, j) +
                     ga.u_y.at(i, j) * gb.u_x.at(i, j);
      na2.at(i, j) = ga.u_x.at(i, j) * ga.u_x.at(i, j) +
                     ga.u_y.at(i, j) * ga.u_y.at(i, j);
      nb2.at(i, j) = gb.u_x.at(i, j) * gb.u_x.at(i, j) +
                     gb.u_y.at(i, j) * gb.u_y.at(i, j);
    }

  Field rhs_a = resample(rhs, annulus);
  Field psi = poisson_solve(rhs_a, BoundaryData::zero(*annulus));

  const double r_in = annulus->r_min();
  const double lo = r_in / lambda, hi = lambda;
  WenteReport rep{psi, 0.0, 0.0, 0.0, 0.0};
  rep.hess_l1 = integrate_on(hessian_norm(psi), lo, hi);
  {
    Field gm(annulus, 1);
    Field g2 = gradient_squared(polar_gradient(psi));
    for (int i = 0; i < annulus->n_r(); ++i)
      for (int j = 0; j < annulus->n_theta(); ++j)
        gm.at(i, j) = std::sqrt(g2.at(i, j));
    rep.grad_l21 = norm_L21_on(gm, lo, hi);
  }
  rep.denom = std::sqrt(integrate(na2)) * std::sqrt(integrate(nb2));
  const double lhs = rep.hess_l1 + rep.grad_l21;
  if (rep.denom == 0.0) {
    if (lhs > 1e-10)
      throw std::runtime_error("wente_solve: zero data with nonzero solution");
    rep.ratio = 0.0;
  } else {
    rep.ratio = lhs / rep.denom;
  }
  return rep;
}

HodgeDecomposition hodge_decompose(const Field& V) {
  if (V.dim() != 2) throw std::invalid_argument("hodge_decompose: dim 2 required");
  if (!V.grid().is_disc())
    throw std::invalid_argument("hodge_decompose: disc grid required");
  V.validate();
  const Grid& g = V.grid();
  GridPtr gp = V.grid_ptr();
  const int nr = g.n_r(), nt = g.n_theta();

  // polar components
  Field vr(gp, 1), vt(gp, 1);
  for (int j = 0; j < nt; ++j) {
    const double ct = std::cos(g.theta(j)), st = std::sin(g.theta(j));
    for (int i = 0; i < nr; ++i) {
      vr.at(i, j) = V.at(i, j, 0) * ct + V.at(i, j, 1) * st;
      vt.at(i, j) = -V.at(i, j, 0) * st + V.at(i, j, 1) * ct;
    }
  }
  Field vr_r = radial_derivative(vr), vt_r = radial_derivative(vt);
  Field vr_t = theta_derivative(vr), vt_t = theta_derivative(vt);
  Field div(gp, 1), curl(gp, 1);
  for (int i = 0; i < nr; ++i) {
    const double r = g.radius(i);
    for (int j = 0; j < nt; ++j) {
      div.at(i, j) = vr_r.at(i, j) + vr.at(i, j) / r + vt_t.at(i, j) / r;
      curl.at(i, j) = vt_r.at(i, j) + vt.at(i, j) / r - vr_t.at(i, j) / r;
    }
  }

  Field C = poisson_solve(div, BoundaryData::zero(g));
  CartesianGradient gc = to_cartesian(polar_gradient(C));

  // solenoidal remainder and its tangential trace at the outer ring
  Field wt(gp, 1);
  for (int j = 0; j < nt; ++j) {
    const double ct = std::cos(g.theta(j)), st = std::sin(g.theta(j));
    for (int i = 0; i < nr; ++i) {
      const double wx = V.at(i, j, 0) - gc.u_x.at(i, j);
      const double wy = V.at(i, j, 1) - gc.u_y.at(i, j);
      wt.at(i, j) = -wx * st + wy * ct;
    }
  }
  std::vector<double> trace(nt);
  for (int j = 0; j < nt; ++j) trace[j] = wt.at(nr - 1, j);
  auto trace_modes = dft_ring(trace);

  auto c_modes = mode_rings(curl);
  std::vector<std::vector<cplx>> dsol(nr, std::vector<cplx>(nt));
  const double dr = g.radius(1) - g.radius(0);

  // mode 0 by direct integration: (r D0')' = r c_0
  {
    std::vector<cplx> d0p(nr), d0(nr);
    cplx cum = 0.0;
    for (int i = 0; i < nr; ++i) {
      const double e0 = g.edge(i), r = g.radius(i);
      cum += c_modes[i][0] * (r * r - e0 * e0) / 2.0;
      d0p[i] = cum / r;
      cum += c_modes[i][0] * (g.edge(i + 1) * g.edge(i + 1) - r * r) / 2.0;
    }
    d0[0] = d0p[0] * g.radius(0);  // D0(0) = 0 reference; value at r_0
    for (int i = 1; i < nr; ++i)
      d0[i] = d0[i - 1] + 0.5 * (d0p[i] + d0p[i - 1]) * dr;
    const cplx shift = d0[nr - 1];
    for (int i = 0; i < nr; ++i) dsol[i][0] = d0[i] - shift;
  }

  std::vector<double> lower(nr), diag(nr), upper(nr);
  std::vector<cplx> b(nr);
  for (int k = 1; k < nt; ++k) {
    const int n = fft_mode(k, nt);
    const double n2 = static_cast<double>(n) * n;
    for (int i = 0; i < nr; ++i) {
      const double r = g.radius(i);
      lower[i] = 1.0 / (dr * dr) - 1.0 / (2.0 * r * dr);
      diag[i] = -2.0 / (dr * dr) - n2 / (r * r);
      upper[i] = 1.0 / (dr * dr) + 1.0 / (2.0 * r * dr);
      b[i] = c_modes[i][k];
    }
    lower[0] = 0.0;
    // outer Neumann via ghost: psi_N = psi_{N-2} + 2 dr t_n
    b[nr - 1] -= upper[nr - 1] * 2.0 * dr * trace_modes[k];
    lower[nr - 1] += upper[nr - 1];
    upper[nr - 1] = 0.0;
    solve_tridiag(lower, diag, upper, b);
    for (int i = 0; i < nr; ++i) dsol[i][k] = b[i];
  }

  Field D(gp, 1);
  for (int i = 0; i < nr; ++i) {
    auto ring = idft_ring(dsol[i]);
    for (int j = 0; j < nt; ++j) D.at(i, j) = ring[j];
  }

  CartesianGradient gdd = to_cartesian(polar_gradient(D));
  Field recon(gp, 2);
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nt; ++j) {
      recon.at(i, j, 0) = gc.u_x.at(i, j) - gdd.u_y.at(i, j);
      recon.at(i, j, 1) = gc.u_y.at(i, j) + gdd.u_x.at(i, j);
    }
  return {std::move(C), std::move(D), std::move(recon)};
}

Field resample(const Field& src, GridPtr dst) {
  const Grid& gs = src.grid();
  const int ns = gs.n_theta(), nd = dst->n_theta();
  Field out(dst, src.dim());
  for (int c = 0; c < src.dim(); ++c) {
    ModeTable t = angular_modes(src.dim() == 1 ? src : src.component(c));
    for (int id = 0; id < dst->n_r(); ++id) {
      const double r = dst->radius(id);
      // 4-point Lagrange window in r, clamped at the ends
      int i1 = 0;
      while (i1 + 1 < gs.n_r() && gs.radius(i1 + 1) < r) ++i1;
      int lo = std::max(0, std::min(i1 - 1, gs.n_r() - 4));
      double w[4];
      for (int m = 0; m < 4; ++m) {
        w[m] = 1.0;
        for (int l = 0; l < 4; ++l) {
          if (l == m) continue;
          w[m] *= (r - gs.radius(lo + l)) /
                  (gs.radius(lo + m) - gs.radius(lo + l));
        }
      }
      std::vector<cplx> modes(nd, cplx(0.0, 0.0));
      const int half = std::min(ns, nd) / 2;
      for (int n = -half + 1; n < half; ++n) {
        cplx v(0.0, 0.0);
        for (int m = 0; m < 4; ++m) v += w[m] * t.mode(lo + m, n);
        modes[n >= 0 ? n : n + nd] = v;
      }
      auto ring = idft_ring(modes);
      for (int j = 0; j < nd; ++j) out.at(id, j, c) = ring[j];
    }
  }
  return out;
}

}  // namespace necklab
