#pragma once

#include <cstddef>
#include <memory>
#include <vector>

namespace necklab {

// Polar grid on a disc (r_min = 0) or annulus (r_min > 0). Nodes sit at
// radii[i], theta_j = 2*pi*j/n_theta. Annulus radii are log-spaced with the
// first/last node exactly at r_min/r_max; disc radii are uniform with the
// innermost node at half spacing and the outermost at r_max. Cell edges are
// placed so that the cell measures sum exactly to pi*(r_max^2 - r_min^2).
class Grid {
 public:
  static std::shared_ptr<const Grid> disc(double r_max, int n_r, int n_theta);
  static std::shared_ptr<const Grid> annulus(double r_min, double r_max, int n_r,
                                             int n_theta);

  double r_min() const { return r_min_; }
  double r_max() const { return r_max_; }
  int n_r() const { return n_r_; }
  int n_theta() const { return n_theta_; }
  bool is_disc() const { return r_min_ == 0.0; }
  bool log_spaced() const { return log_spaced_; }

  double radius(int i) const { return radii_[i]; }
  const std::vector<double>& radii() const { return radii_; }
  double theta(int j) const;
  double edge(int i) const { return edges_[i]; }

  // Measure of the cell owned by node (i, j); independent of j.
  double cell_measure(int i) const { return ring_weight_[i]; }
  double total_measure() const;

  std::size_t nodes() const { return static_cast<std::size_t>(n_r_) * n_theta_; }
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * n_theta_ + j;
  }

  bool same_layout(const Grid& other) const;

 private:
  Grid(double r_min, double r_max, int n_r, int n_theta, bool log_spaced);

  double r_min_, r_max_;
  int n_r_, n_theta_;
  bool log_spaced_;
  std::vector<double> radii_;
  std::vector<double> edges_;        // n_r + 1 cell edges
  std::vector<double> ring_weight_;  // pi*(e_{i+1}^2 - e_i^2)/n_theta
};

using GridPtr = std::shared_ptr<const Grid>;

}  // namespace necklab
