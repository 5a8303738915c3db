#include "necklab/composite.hpp"

#include <algorithm>
#include <cmath>

namespace necklab {

CompositeDomain CompositeDomain::for_sequence(const SequenceEvaluator& ev,
                                              double r_outer, int central_n_r,
                                              int central_n_theta,
                                              int patch_nodes_per_decade,
                                              int patch_n_theta) {
  CompositeDomain dom;
  dom.central_ = Grid::disc(r_outer, central_n_r, central_n_theta);

  // one patch per distinct bubble center, resolving the smallest scale there
  struct Center {
    double x, y, t_min;
  };
  std::vector<Center> centers;
  for (const auto& b : ev.bubbles()) {
    const double t = b.scale(ev.index());
    bool merged = false;
    for (auto& c : centers)
      if (std::hypot(c.x - b.cx, c.y - b.cy) < 1e-12) {
        c.t_min = std::min(c.t_min, t);
        merged = true;
        break;
      }
    if (!merged) centers.push_back({b.cx, b.cy, t});
  }

  for (std::size_t i = 0; i < centers.size(); ++i) {
    double r_patch = 0.1 * r_outer;
    for (std::size_t j = 0; j < centers.size(); ++j)
      if (j != i)
        r_patch = std::min(r_patch, 0.4 * std::hypot(centers[i].x - centers[j].x,
                                                     centers[i].y - centers[j].y));
    const double to_boundary = r_outer - std::hypot(centers[i].x, centers[i].y);
    r_patch = std::min(r_patch, 0.45 * to_boundary);

    const double r_in = 1e-3 * centers[i].t_min;
    const int n_r = std::max(
        32, static_cast<int>(std::ceil(patch_nodes_per_decade *
                                       std::log10(r_patch / r_in))));
    dom.patches_.push_back({Grid::annulus(r_in, r_patch, n_r, patch_n_theta),
                            centers[i].x, centers[i].y});
  }
  return dom;
}

void CompositeDomain::for_each_node(const NodeFn& fn) const {
  const Grid& g = *central_;
  const double dr = g.n_r() > 1 ? g.radius(1) - g.radius(0) : g.r_max();
  for (int i = 0; i < g.n_r(); ++i)
    for (int j = 0; j < g.n_theta(); ++j) {
      const double x = g.radius(i) * std::cos(g.theta(j));
      const double y = g.radius(i) * std::sin(g.theta(j));
      bool masked = false;
      for (const auto& p : patches_)
        if (std::hypot(x - p.cx, y - p.cy) <= p.grid->r_max()) {
          masked = true;
          break;
        }
      if (!masked) fn(x, y, g.cell_measure(i), dr);
    }
  for (const auto& p : patches_) {
    const Grid& pg = *p.grid;
    for (int i = 0; i < pg.n_r(); ++i) {
      const double h = pg.edge(i + 1) - pg.edge(i);
      for (int j = 0; j < pg.n_theta(); ++j) {
        const double x = p.cx + pg.radius(i) * std::cos(pg.theta(j));
        const double y = p.cy + pg.radius(i) * std::sin(pg.theta(j));
        fn(x, y, pg.cell_measure(i), h);
      }
    }
  }
}

double CompositeDomain::integrate(const PointFn& f) const {
  double s = 0.0;
  for_each_node([&](double x, double y, double w, double) { s += f(x, y) * w; });
  return s;
}

double CompositeDomain::max_value(const PointFn& f) const {
  double m = 0.0;
  for_each_node([&](double x, double y, double, double) {
    m = std::max(m, f(x, y));
  });
  return m;
}

RearrangedProfile CompositeDomain::profile(const PointFn& f) const {
  std::vector<std::pair<double, double>> pairs;
  for_each_node([&](double x, double y, double w, double) {
    pairs.emplace_back(std::fabs(f(x, y)), w);
  });
  return RearrangedProfile::from_pairs(std::move(pairs));
}

SampleCloud CompositeDomain::cloud(const PointFn& f) const {
  SampleCloud c;
  for_each_node([&](double x, double y, double w, double) {
    c.pts.push_back({x, y, w, f(x, y)});
  });
  return c;
}

}  // namespace necklab
