#include "necklab/lorentz.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "necklab/ops.hpp"

namespace necklab {

RearrangedProfile RearrangedProfile::from_pairs(
    std::vector<std::pair<double, double>> pairs) {
  RearrangedProfile p;
  std::sort(pairs.begin(), pairs.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  for (const auto& [v, w] : pairs) {
    if (w <= 0.0) throw std::invalid_argument("RearrangedProfile: measure <= 0");
    if (!std::isfinite(v) || v < 0.0)
      throw std::invalid_argument("RearrangedProfile: bad value");
    p.total_measure_ += w;
    if (v == 0.0) continue;
    if (!p.values_.empty() && p.values_.back() == v) {
      p.cumulative_.back() += w;
    } else {
      p.values_.push_back(v);
      p.cumulative_.push_back((p.cumulative_.empty() ? 0.0 : p.cumulative_.back()) + w);
    }
  }
  return p;
}

RearrangedProfile RearrangedProfile::from_field(const Field& v) {
  const Field mag = v.dim() == 1 ? v : v.magnitude();
  const Grid& g = mag.grid();
  std::vector<std::pair<double, double>> pairs;
  pairs.reserve(g.nodes());
  for (int i = 0; i < g.n_r(); ++i)
    for (int j = 0; j < g.n_theta(); ++j)
      pairs.emplace_back(std::fabs(mag.at(i, j)), g.cell_measure(i));
  return from_pairs(std::move(pairs));
}

double RearrangedProfile::distribution(double s) const {
  if (s < 0.0) throw std::invalid_argument("distribution: s < 0");
  // lambda(s) = measure of values strictly above s
  auto it = std::lower_bound(values_.begin(), values_.end(), s,
                             [](double a, double b) { return a > b; });
  if (it == values_.begin()) return 0.0;
  return cumulative_[static_cast<std::size_t>(it - values_.begin()) - 1];
}

double RearrangedProfile::norm_L21() const {
  // lambda(s) = cumulative_[j] for s in [values_[j+1], values_[j])
  double sum = 0.0;
  for (std::size_t j = 0; j < values_.size(); ++j) {
    const double lo = (j + 1 < values_.size()) ? values_[j + 1] : 0.0;
    sum += std::sqrt(cumulative_[j]) * (values_[j] - lo);
  }
  return sum;
}

double RearrangedProfile::norm_L2weak() const {
  // sup over s of s*sqrt(lambda(s)) is approached at s -> values_[j]^-
  double best = 0.0;
  for (std::size_t j = 0; j < values_.size(); ++j)
    best = std::max(best, values_[j] * std::sqrt(cumulative_[j]));
  return best;
}

double RearrangedProfile::norm_L2_layercake() const {
  double sum = 0.0;
  for (std::size_t j = 0; j < values_.size(); ++j) {
    const double lo = (j + 1 < values_.size()) ? values_[j + 1] : 0.0;
    sum += cumulative_[j] * (values_[j] * values_[j] - lo * lo);
  }
  return std::sqrt(sum);
}

double distribution_function(const Field& v, double s) {
  return RearrangedProfile::from_field(v).distribution(s);
}

double norm_L21(const Field& v) {
  return RearrangedProfile::from_field(v).norm_L21();
}

double norm_L2weak(const Field& v) {
  return RearrangedProfile::from_field(v).norm_L2weak();
}

double norm_L2_layercake(const Field& v) {
  return RearrangedProfile::from_field(v).norm_L2_layercake();
}

double norm_LlogL(const Field& v) {
  const Field mag = v.dim() == 1 ? v : v.magnitude();
  Field integrand(mag.grid_ptr(), 1);
  const Grid& g = mag.grid();
  for (int i = 0; i < g.n_r(); ++i)
    for (int j = 0; j < g.n_theta(); ++j) {
      const double a = std::fabs(mag.at(i, j));
      integrand.at(i, j) = a * std::log(2.0 + a);
    }
  return integrate(integrand);
}

DualityCheck duality_check(const Field& f, const Field& g) {
  if (!f.grid().same_layout(g.grid()))
    throw std::invalid_argument("duality_check: grid mismatch");
  Field prod(f.grid_ptr(), 1);
  const Grid& gr = f.grid();
  for (int i = 0; i < gr.n_r(); ++i)
    for (int j = 0; j < gr.n_theta(); ++j)
      prod.at(i, j) = f.at(i, j) * g.at(i, j);
  return {std::fabs(integrate(prod)), 2.0 * norm_L21(f) * norm_L2weak(g)};
}

}  // namespace necklab
