#include "necklab/bubbletree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace necklab {

namespace {

constexpr double kLadderBase = 1.0905077326652577;  // 2^{1/8}
constexpr double kRhoMin = 1e-8;
constexpr int kMaxCandidates = 600;
constexpr int kMaxExtractionsPerIndex = 8;

int ladder_rungs() {
  return static_cast<int>(std::ceil(8.0 * std::log2(4.0 / kRhoMin))) + 1;
}

double rung_radius(int m) { return kRhoMin * std::pow(kLadderBase, m); }

}  // namespace

Concentration concentration_radius(const SampleCloud& omega, double eps,
                                   const std::vector<Disk>& excluded) {
  const double eps2 = eps * eps;
  std::vector<char> active(omega.pts.size(), 1);
  for (std::size_t i = 0; i < omega.pts.size(); ++i)
    for (const auto& e : excluded)
      if (in_disk(omega.pts[i].x, omega.pts[i].y, e)) {
        active[i] = 0;
        break;
      }

  double total = 0.0;
  for (std::size_t i = 0; i < omega.pts.size(); ++i)
    if (active[i]) total += omega.pts[i].w * omega.pts[i].v * omega.pts[i].v;
  if (total < eps2) return {};  // no-concentration

  // candidate centers: highest-mass active points, deterministic order
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < omega.pts.size(); ++i)
    if (active[i] && omega.pts[i].v != 0.0) order.push_back(i);
  // rank by density, not cell mass: concentration centers sit where |v| peaks
  // (cell weights would bias the ranking toward coarse far-field cells)
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double ma = omega.pts[a].v * omega.pts[a].v;
    const double mb = omega.pts[b].v * omega.pts[b].v;
    if (ma != mb) return ma > mb;
    return a < b;
  });
  if (order.size() > kMaxCandidates) order.resize(kMaxCandidates);

  const int rungs = ladder_rungs();
  int best_rung = rungs;
  std::size_t best_center = 0;
  double best_cum = 0.0;
  std::vector<double> bins(rungs);
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    const auto& c = omega.pts[order[rank]];
    std::fill(bins.begin(), bins.end(), 0.0);
    for (std::size_t i = 0; i < omega.pts.size(); ++i) {
      if (!active[i]) continue;
      const auto& p = omega.pts[i];
      const double d = std::hypot(p.x - c.x, p.y - c.y);
      int m = d <= kRhoMin
                  ? 0
                  : static_cast<int>(std::ceil(8.0 * std::log2(d / kRhoMin)));
      if (m >= rungs) m = rungs - 1;
      bins[m] += p.w * p.v * p.v;
    }
    double cum = 0.0;
    for (int m = 0; m <= best_rung && m < rungs; ++m) {
      cum += bins[m];
      if (cum >= eps2) {
        // smallest rung wins; on the same rung prefer the most concentrated
        // center so a symmetric blob is located at its middle
        if (m < best_rung || (m == best_rung && cum > best_cum)) {
          best_rung = m;
          best_center = order[rank];
          best_cum = cum;
        }
        break;
      }
    }
  }
  if (best_rung == rungs) return {};
  return {true, rung_radius(best_rung), omega.pts[best_center].x,
          omega.pts[best_center].y};
}

ExtractionResult extract_point_scales(const std::vector<SampleCloud>& omegas,
                                      double eps, double theta) {
  if (omegas.size() < 4)
    throw std::invalid_argument("extract_point_scales: need >= 4 indices");
  ExtractionResult out;
  out.eps = eps;
  out.theta = theta;

  // raw per-index extraction, each found ball excluded at twice its radius
  std::vector<std::vector<Concentration>> raw(omegas.size());
  for (std::size_t k = 0; k < omegas.size(); ++k) {
    std::vector<Disk> excluded;
    for (int step = 0; step < kMaxExtractionsPerIndex; ++step) {
      Concentration c = concentration_radius(omegas[k], eps, excluded);
      if (!c.found) break;
      raw[k].push_back(c);
      excluded.push_back({c.x, c.y, 2.0 * c.rho});
    }
    out.raw_counts.push_back(static_cast<int>(raw[k].size()));
    // canonical order: scale descending, then position
    std::stable_sort(raw[k].begin(), raw[k].end(),
                     [](const Concentration& a, const Concentration& b) {
                       if (a.rho != b.rho) return a.rho > b.rho;
                       if (a.x != b.x) return a.x < b.x;
                       return a.y < b.y;
                     });
  }

  const std::size_t q = raw.back().size();
  if (q == 0) return out;

  // candidate sequences anchored at the final index; an earlier index
  // contributes only when its extraction count matches
  std::vector<PointScaleSequence> cand(q);
  for (std::size_t s = 0; s < q; ++s) cand[s].id = static_cast<int>(s);
  for (std::size_t k = 0; k < omegas.size(); ++k) {
    if (raw[k].size() != q) continue;
    for (std::size_t s = 0; s < q; ++s) {
      cand[s].ks.push_back(static_cast<int>(k));
      cand[s].x.push_back(raw[k][s].x);
      cand[s].y.push_back(raw[k][s].y);
      cand[s].rho.push_back(raw[k][s].rho);
    }
  }

  // separation-based retention against already-retained sequences
  auto separation = [](const PointScaleSequence& a, const PointScaleSequence& b,
                       std::size_t i) {
    const double d = std::hypot(a.x[i] - b.x[i], a.y[i] - b.y[i]);
    return std::max({a.rho[i] / b.rho[i], b.rho[i] / a.rho[i],
                     d / (a.rho[i] + b.rho[i])});
  };
  for (std::size_t s = 0; s < q; ++s) {
    int absorbed_by = -1;
    for (const auto& kept : out.retained) {
      const std::size_t n = cand[s].ks.size();
      const double s_final = separation(cand[s], kept, n - 1);
      bool ok = s_final > theta;
      for (std::size_t i = n / 2; ok && i + 1 < n; ++i)
        if (separation(cand[s], kept, i + 1) <
            separation(cand[s], kept, i) * (1.0 - 1e-9))
          ok = false;
      if (!ok) {
        absorbed_by = kept.id;
        break;
      }
    }
    if (absorbed_by < 0)
      out.retained.push_back(cand[s]);
    else
      out.discards.push_back({cand[s].id, absorbed_by});
  }
  return out;
}

BubbleTree group_strings(const ExtractionResult& ext, double theta) {
  BubbleTree tree;
  std::vector<std::size_t> order(ext.retained.size());
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return ext.retained[a].rho.back() > ext.retained[b].rho.back();
  });

  for (std::size_t idx : order) {
    const auto& s = ext.retained[idx];
    int home = -1;
    for (auto& str : tree.strings) {
      const auto& root = ext.retained[str.root];
      const double d = std::hypot(s.x.back() - root.x.back(),
                                  s.y.back() - root.y.back());
      if (d / root.rho.back() <= theta) {
        home = static_cast<int>(&str - tree.strings.data());
        break;
      }
    }
    if (home < 0)
      tree.strings.push_back({static_cast<int>(idx), {}, 1.0});
    else
      tree.strings[home].children.push_back(static_cast<int>(idx));
  }

  for (auto& str : tree.strings) {
    const auto& root = ext.retained[str.root];
    double g = 1.0;
    for (int c : str.children) {
      const auto& s = ext.retained[c];
      const double d = std::hypot(s.x.back() - root.x.back(),
                                  s.y.back() - root.y.back());
      g = std::max(g, (d + s.rho.back()) / root.rho.back());
    }
    str.gamma = g;
    tree.gamma = std::max(tree.gamma, g);
  }
  return tree;
}

DomainDecomposition decompose_domains(const SampleCloud& omega_final,
                                      const BubbleTree& tree,
                                      const ExtractionResult& ext, double eps,
                                      double delta) {
  DomainDecomposition dec;
  const double eps2 = eps * eps;

  std::vector<Disk> bubble_balls;
  for (std::size_t si = 0; si < tree.strings.size(); ++si) {
    const auto& str = tree.strings[si];
    const auto& root = ext.retained[str.root];
    const double x = root.x.back(), y = root.y.back();
    if (std::hypot(x, y) > 1.0 - delta) {
      dec.boundary_rejected.push_back(static_cast<int>(si));
      continue;
    }
    const double r_bubble = str.gamma * root.rho.back();
    dec.regions.push_back(
        {LabeledRegion::Kind::Bubble, x, y, 0.0, r_bubble, {}, true});
    bubble_balls.push_back({x, y, r_bubble});

    LabeledRegion neck{LabeledRegion::Kind::Neck, x, y, r_bubble, delta, {},
                       true};
    for (double rho = r_bubble; 2.0 * rho <= delta; rho *= 2.0) {
      const double m = mass_in_annulus(omega_final, x, y, rho, 2.0 * rho);
      neck.dyadic.emplace_back(rho, m);
      if (m >= eps2) neck.dyadic_ok = false;
    }
    if (!neck.dyadic_ok) {
      dec.all_necks_ok = false;
      // the failing neck hides a further concentration: re-extract there
      std::vector<Disk> excl = bubble_balls;
      Concentration c = concentration_radius(omega_final, eps, excl);
      dec.violations.push_back(c);
    }
    dec.regions.push_back(std::move(neck));
  }

  if (tree.strings.empty()) {
    const bool small = omega_final.mass() < eps2;
    dec.regions.push_back({small ? LabeledRegion::Kind::Empty
                                 : LabeledRegion::Kind::Body,
                           0.0, 0.0, 0.0, 1.0 - delta, {}, true});
    return dec;
  }
  dec.regions.push_back(
      {LabeledRegion::Kind::Body, 0.0, 0.0, 0.0, 1.0 - delta, {}, true});
  return dec;
}

}  // namespace necklab
