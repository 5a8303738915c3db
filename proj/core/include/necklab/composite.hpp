#pragma once

#include <functional>
#include <vector>

#include "necklab/bubbles.hpp"
#include "necklab/cloud.hpp"
#include "necklab/grid.hpp"
#include "necklab/lorentz.hpp"

namespace necklab {

// A disc-covering quadrature assembled from a uniform central grid plus
// log-radial patches around each distinct bubble center: patches resolve
// scales far below the central cell size, central cells under a patch are
// masked out. All functionals take point evaluators f(x, y).
class CompositeDomain {
 public:
  struct Patch {
    GridPtr grid;  // annulus grid in local coordinates around (cx, cy)
    double cx, cy;
  };

  using PointFn = std::function<double(double, double)>;
  using NodeFn = std::function<void(double x, double y, double w, double h)>;

  static CompositeDomain for_sequence(const SequenceEvaluator& ev,
                                      double r_outer = 1.0,
                                      int central_n_r = 128,
                                      int central_n_theta = 128,
                                      int patch_nodes_per_decade = 96,
                                      int patch_n_theta = 64);

  GridPtr central() const { return central_; }
  const std::vector<Patch>& patches() const { return patches_; }

  // visits every unmasked node with its weight and a local length scale h
  void for_each_node(const NodeFn& fn) const;

  double integrate(const PointFn& f) const;
  double max_value(const PointFn& f) const;
  // profile of |f|; zero values are dropped, so restricting f by an
  // indicator restricts the domain
  RearrangedProfile profile(const PointFn& f) const;
  SampleCloud cloud(const PointFn& f) const;

 private:
  GridPtr central_;
  std::vector<Patch> patches_;
};

}  // namespace necklab
