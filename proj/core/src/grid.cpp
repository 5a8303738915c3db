#include "necklab/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "necklab/fft.hpp"

namespace necklab {

Grid::Grid(double r_min, double r_max, int n_r, int n_theta, bool log_spaced)
    : r_min_(r_min), r_max_(r_max), n_r_(n_r), n_theta_(n_theta),
      log_spaced_(log_spaced) {
  if (r_min < 0.0 || r_max <= r_min)
    throw std::invalid_argument("Grid: need 0 <= r_min < r_max");
  if (n_r < 3) throw std::invalid_argument("Grid: n_r >= 3 required");
  if (n_theta < 8 || !is_power_of_two(n_theta))
    throw std::invalid_argument("Grid: n_theta must be a power of two >= 8");

  radii_.resize(n_r);
  edges_.resize(n_r + 1);
  if (log_spaced) {
    const double q = std::pow(r_max / r_min, 1.0 / (n_r - 1));
    for (int i = 0; i < n_r; ++i) radii_[i] = r_min * std::pow(q, i);
    radii_.front() = r_min;
    radii_.back() = r_max;
    edges_.front() = r_min;
    edges_.back() = r_max;
    for (int i = 1; i < n_r; ++i)
      edges_[i] = std::sqrt(radii_[i - 1] * radii_[i]);
  } else {
    // disc: innermost node at dr/2, outermost at r_max
    const double dr = r_max / (n_r - 0.5);
    for (int i = 0; i < n_r; ++i) radii_[i] = (i + 0.5) * dr;
    radii_.back() = r_max;
    edges_.front() = 0.0;
    edges_.back() = r_max;
    for (int i = 1; i < n_r; ++i) edges_[i] = i * dr;
  }

  ring_weight_.resize(n_r);
  for (int i = 0; i < n_r; ++i)
    ring_weight_[i] = std::numbers::pi *
                      (edges_[i + 1] * edges_[i + 1] - edges_[i] * edges_[i]) /
                      n_theta;
}

std::shared_ptr<const Grid> Grid::disc(double r_max, int n_r, int n_theta) {
  return std::shared_ptr<const Grid>(
      new Grid(0.0, r_max, n_r, n_theta, /*log_spaced=*/false));
}

std::shared_ptr<const Grid> Grid::annulus(double r_min, double r_max, int n_r,
                                          int n_theta) {
  if (r_min <= 0.0)
    throw std::invalid_argument("Grid::annulus: r_min must be positive");
  return std::shared_ptr<const Grid>(
      new Grid(r_min, r_max, n_r, n_theta, /*log_spaced=*/true));
}

double Grid::theta(int j) const {
  return 2.0 * std::numbers::pi * j / n_theta_;
}

double Grid::total_measure() const {
  double s = 0.0;
  for (double w : ring_weight_) s += w;
  return s * n_theta_;
}

bool Grid::same_layout(const Grid& other) const {
  return r_min_ == other.r_min_ && r_max_ == other.r_max_ &&
         n_r_ == other.n_r_ && n_theta_ == other.n_theta_ &&
         log_spaced_ == other.log_spaced_;
}

}  // namespace necklab
