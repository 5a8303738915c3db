#pragma once

#include <utility>
#include <vector>

#include "necklab/field.hpp"

namespace necklab {

// Decreasing rearrangement of a piecewise-constant-per-cell function: distinct
// |values| sorted descending with merged cell measures. The distribution
// function lambda(s) is a step function, so every Lorentz integral below is a
// finite sum with no quadrature error.
class RearrangedProfile {
 public:
  // From raw (|value|, measure) pairs; merges equal values, drops zeros.
  static RearrangedProfile from_pairs(std::vector<std::pair<double, double>> pairs);
  static RearrangedProfile from_field(const Field& v);

  // |{ |f| > s }|.
  double distribution(double s) const;
  // integral of lambda(s)^{1/2} ds.
  double norm_L21() const;
  // sup_s s * lambda(s)^{1/2}.
  double norm_L2weak() const;
  // sqrt( integral of 2 s lambda(s) ds ).
  double norm_L2_layercake() const;

  double total_measure() const { return total_measure_; }
  const std::vector<double>& values() const { return values_; }
  // measure where |f| >= values_[j] (cumulative, increasing in j).
  const std::vector<double>& cumulative() const { return cumulative_; }

 private:
  std::vector<double> values_;      // strictly decreasing, positive
  std::vector<double> cumulative_;  // same length
  double total_measure_ = 0.0;      // includes cells where the value is 0
};

// Exact measure of { |v| > s } under the per-cell interpretation. s >= 0.
double distribution_function(const Field& v, double s);

double norm_L21(const Field& v);
double norm_L2weak(const Field& v);
double norm_L2_layercake(const Field& v);

// Quadrature of |v| log(2 + |v|).
double norm_LlogL(const Field& v);

struct DualityCheck {
  double lhs;    // |integral of f*g|
  double bound;  // 2 * ||f||_{2,1} * ||g||_{2,inf}
};
DualityCheck duality_check(const Field& f, const Field& g);

}  // namespace necklab
