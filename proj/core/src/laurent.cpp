#include "necklab/laurent.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "necklab/lorentz.hpp"
#include "necklab/ops.hpp"

namespace necklab {

LaurentSeries::LaurentSeries(double c0, double d0,
                             std::vector<std::complex<double>> c,
                             std::vector<std::complex<double>> d)
    : c0_(c0), d0_(d0), c_(std::move(c)), d_(std::move(d)) {
  if (c_.size() != d_.size()) {
    const std::size_t n = std::max(c_.size(), d_.size());
    c_.resize(n);
    d_.resize(n);
  }
  if (static_cast<int>(c_.size()) > kMaxModes)
    throw std::invalid_argument("LaurentSeries: more than kMaxModes modes");
}

bool LaurentSeries::has_singular_part() const {
  if (d0_ != 0.0) return true;
  for (const auto& z : d_)
    if (z != std::complex<double>(0.0, 0.0)) return true;
  return false;
}

LaurentEval evaluate(const LaurentSeries& s, GridPtr grid) {
  if (grid->is_disc() && s.has_singular_part())
    throw std::invalid_argument(
        "evaluate: singular Laurent part on a disc grid");

  const int nr = grid->n_r(), nt = grid->n_theta(), N = s.n_modes();
  LaurentEval e{Field(grid, 1), Field(grid, 1), Field(grid, 1),
                Field(grid, 1), Field(grid, 1), Field(grid, 1),
                Field(grid, 1), Field(grid, 1)};

  for (int i = 0; i < nr; ++i) {
    const double r = grid->radius(i);
    for (int j = 0; j < nt; ++j) {
      const double t = grid->theta(j);
      double h = s.c0() + s.d0() * std::log(r);
      double hr = s.d0() / r;
      double hrr = -s.d0() / (r * r);
      double ht = 0.0, htt = 0.0, hrt = 0.0, H = 0.0;
      for (int n = 1; n <= N; ++n) {
        const std::complex<double> T(std::cos(n * t), std::sin(n * t));
        const double rp = std::pow(r, n), rm = std::pow(r, -n);
        const std::complex<double> A = s.c(n) * rp + s.d(n) * rm;
        const std::complex<double> Ar =
            (s.c(n) * rp - s.d(n) * rm) * (static_cast<double>(n) / r);
        const std::complex<double> Arr =
            (s.c(n) * rp * static_cast<double>(n * (n - 1)) +
             s.d(n) * rm * static_cast<double>(n * (n + 1))) /
            (r * r);
        const std::complex<double> iN(0.0, static_cast<double>(n));
        h += 2.0 * (A * T).real();
        hr += 2.0 * (Ar * T).real();
        hrr += 2.0 * (Arr * T).real();
        ht += 2.0 * (iN * A * T).real();
        htt += 2.0 * (-static_cast<double>(n) * n * A * T).real();
        hrt += 2.0 * (iN * Ar * T).real();
        H += static_cast<double>(n) * n *
             (std::abs(s.c(n)) * rp / r + std::abs(s.d(n)) * rm / r);
      }
      e.h.at(i, j) = h;
      e.h_r.at(i, j) = hr;
      e.h_t_over_r.at(i, j) = ht / r;
      e.h_tt_over_r.at(i, j) = htt / r;
      e.h_rt.at(i, j) = hrt;
      e.ddr_r_hr.at(i, j) = hr + r * hrr;
      e.majorant.at(i, j) = H;

      const double ct = std::cos(t), st = std::sin(t);
      const double x = r * ct, y = r * st;
      const double r2 = r * r, r3 = r2 * r, r4 = r2 * r2;
      const double hxx = hrr * x * x / r2 + hr * y * y / r3 +
                         htt * y * y / r4 + ht * 2.0 * x * y / r4 -
                         2.0 * hrt * x * y / r3;
      const double hyy = hrr * y * y / r2 + hr * x * x / r3 +
                         htt * x * x / r4 - ht * 2.0 * x * y / r4 +
                         2.0 * hrt * x * y / r3;
      const double hxy = hrr * x * y / r2 - hr * x * y / r3 -
                         htt * x * y / r4 + ht * (y * y - x * x) / r4 +
                         hrt * (x * x - y * y) / r3;
      e.hess_norm.at(i, j) = std::sqrt(hxx * hxx + 2.0 * hxy * hxy + hyy * hyy);
    }
  }
  return e;
}

double majorant_margin(const LaurentEval& e) {
  const Grid& g = e.h.grid();
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 0; i < g.n_r(); ++i)
    for (int j = 0; j < g.n_theta(); ++j)
      worst = std::min(
          worst, 2.0 * e.majorant.at(i, j) -
                     std::max(std::fabs(e.h_tt_over_r.at(i, j)),
                              std::fabs(e.h_rt.at(i, j))));
  return worst;
}

MonomialBound monomial_L21(int n, double lambda, double eps, int n_r,
                           int n_theta) {
  if (n < 1) throw std::invalid_argument("monomial_L21: n >= 1");
  if (!(lambda > 0.0 && lambda < 0.5) || !(eps > 0.0 && eps < lambda * lambda))
    throw std::invalid_argument("monomial_L21: need eps/lambda < lambda");
  GridPtr g = Grid::annulus(eps / lambda, lambda, n_r, n_theta);
  Field pos = Field::sample(g, 1, [n](double r, double, double* out) {
    out[0] = std::pow(r, n - 1);
  });
  Field neg = Field::sample(g, 1, [n](double r, double, double* out) {
    out[0] = std::pow(r, -n - 1);
  });
  const double sqrt_pi = std::sqrt(std::numbers::pi);
  return {norm_L21(pos), sqrt_pi * std::pow(lambda, n), norm_L21(neg),
          2.0 * sqrt_pi * std::pow(lambda / eps, n)};
}

namespace {

Prop32Ratios prop32_once(const LaurentSeries& s, double lambda, double eps,
                         int n_r_inner, int n_theta) {
  GridPtr inner = Grid::annulus(eps / lambda, lambda, n_r_inner, n_theta);
  LaurentEval e = evaluate(s, inner);
  Prop32Ratios out;
  out.lhs_31 = norm_L21(e.ddr_r_hr) + norm_L21(e.h_t_over_r) +
               norm_L21(e.h_tt_over_r) + norm_L21(e.h_rt);
  out.lhs_32 = integrate(e.hess_norm);
  out.hr_l21 = norm_L21(e.h_r);

  // rhs on B_1 \ B_eps, same radial density
  const int n_r_outer =
      std::max(16, static_cast<int>(n_r_inner * std::log(1.0 / eps) /
                                    std::log(lambda * lambda / eps)));
  GridPtr outer = Grid::annulus(eps, 1.0, n_r_outer, n_theta);
  LaurentEval eo = evaluate(s, outer);
  Field hr2(outer, 1);
  for (int i = 0; i < outer->n_r(); ++i)
    for (int j = 0; j < outer->n_theta(); ++j)
      hr2.at(i, j) = eo.h_r.at(i, j) * eo.h_r.at(i, j);
  out.rhs = std::sqrt(integrate(hr2));
  if (out.rhs == 0.0 && (out.lhs_31 != 0.0 || out.lhs_32 != 0.0))
    throw std::runtime_error("prop32_ratio: rhs vanished with nonzero lhs");
  return out;
}

}  // namespace

Prop32Ratios prop32_ratio(const LaurentSeries& s, double lambda, double eps) {
  if (!(eps < 0.25) || !(lambda < 0.5))
    throw std::invalid_argument("prop32_ratio: need eps < 1/4, lambda < 1/2");
  const int n_theta = std::max(
      16, 4 * static_cast<int>(std::bit_ceil(
              static_cast<unsigned>(std::max(1, s.n_modes())))));
  int n_r = 256;
  Prop32Ratios prev = prop32_once(s, lambda, eps, n_r, n_theta);
  for (int iter = 0; iter < 4; ++iter) {
    n_r *= 2;
    Prop32Ratios cur = prop32_once(s, lambda, eps, n_r, n_theta);
    auto close = [](double a, double b) {
      return std::fabs(a - b) <= 1e-3 * (std::fabs(b) + 1e-300);
    };
    if (close(prev.lhs_31, cur.lhs_31) && close(prev.lhs_32, cur.lhs_32) &&
        close(prev.rhs, cur.rhs) && close(prev.hr_l21, cur.hr_l21))
      return cur;
    prev = cur;
  }
  return prev;
}

}  // namespace necklab
