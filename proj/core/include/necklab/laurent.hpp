#pragma once

#include <complex>
#include <vector>

#include "necklab/field.hpp"

namespace necklab {

// Real harmonic function on an annulus:
//   h = c0 + d0 log r + sum_{n=1..N} 2 Re[ (c_n r^n + d_n r^{-n}) e^{in t} ].
class LaurentSeries {
 public:
  static constexpr int kMaxModes = 32;

  LaurentSeries(double c0, double d0,
                std::vector<std::complex<double>> c = {},
                std::vector<std::complex<double>> d = {});

  double c0() const { return c0_; }
  double d0() const { return d0_; }
  int n_modes() const { return static_cast<int>(c_.size()); }
  std::complex<double> c(int n) const { return c_[n - 1]; }  // 1-based
  std::complex<double> d(int n) const { return d_[n - 1]; }
  bool has_singular_part() const;

 private:
  double c0_, d0_;
  std::vector<std::complex<double>> c_, d_;  // index n-1 holds mode n
};

// All fields evaluated analytically from the series; no finite differences.
struct LaurentEval {
  Field h;
  Field h_r;
  Field h_t_over_r;   // h_theta / r
  Field h_tt_over_r;  // h_thetatheta / r
  Field h_rt;
  Field ddr_r_hr;     // d/dr (r h_r)
  Field hess_norm;    // |Hess h| (Frobenius, Cartesian)
  Field majorant;     // H = sum (|n^2 c_n| r^{n-1} + |n^2 d_n| r^{-n-1})
};

LaurentEval evaluate(const LaurentSeries& s, GridPtr grid);

// min over nodes of 2H - max(|h_tt/r|, |h_rt|); each angular Hessian piece is
// dominated by 2H separately, which is >= 0 analytically (the sum is not).
double majorant_margin(const LaurentEval& e);

struct MonomialBound {
  double computed;     // L^{2,1} norm of r^{n-1} on B_lambda \ B_{eps/lambda}
  double paper_bound;  // sqrt(pi) lambda^n
  double computed_neg;        // same for r^{-n-1}
  double paper_bound_neg;     // 2 sqrt(pi) (lambda/eps)^n
};
MonomialBound monomial_L21(int n, double lambda, double eps, int n_r = 512,
                           int n_theta = 16);

struct Prop32Ratios {
  double lhs_31;   // sum of the four L^{2,1} terms on B_lambda \ B_{eps/lambda}
  double lhs_32;   // ||Hess h||_{L^1} on the same annulus
  double rhs;      // ||h_r||_{L^2(B_1 \ B_eps)}
  double hr_l21;   // ||h_r||_{L^{2,1}(B_lambda \ B_{eps/lambda})}
  double ratio_31() const { return lhs_31 / rhs; }
  double ratio_32() const { return lhs_32 / (hr_l21 + rhs); }
};

// Analytic series evaluation on log-radial grids, refined until every
// reported norm moves by < 0.1% under doubling of N_r.
Prop32Ratios prop32_ratio(const LaurentSeries& s, double lambda, double eps);

}  // namespace necklab
