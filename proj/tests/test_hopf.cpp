#include <cmath>
#include <random>

#include "doctest.h"
#include "necklab/hopf.hpp"
#include "necklab/lorentz.hpp"

using namespace necklab;

namespace {

double max_abs_phi(const HopfData& h) {
  double worst = 0.0;
  const Grid& g = h.phi.grid();
  for (int i = 0; i < g.n_r(); ++i)
    for (int j = 0; j < g.n_theta(); ++j)
      worst = std::max(worst, std::abs(h.phi.cplx(i, j)));
  return worst;
}

Field random_smooth_map(std::mt19937_64& rng, GridPtr g, int dim) {
  std::uniform_real_distribution<double> c(-1.0, 1.0);
  std::vector<double> a(static_cast<std::size_t>(dim) * 6);
  for (auto& x : a) x = c(rng);
  return Field::sample(g, dim, [&a, dim](double r, double t, double* o) {
    const double x = r * std::cos(t), y = r * std::sin(t);
    for (int d = 0; d < dim; ++d) {
      const double* p = &a[static_cast<std::size_t>(d) * 6];
      o[d] = p[0] + p[1] * x + p[2] * y + p[3] * std::sin(x + 2 * y) +
             p[4] * std::cos(2 * x - y) + p[5] * x * y;
    }
  });
}

}  // namespace

TEST_CASE("identity map is conformal: phi vanishes") {
  GridPtr g = Grid::annulus(0.3, 1.0, 64, 64);
  Field u = Field::sample(g, 2, [](double r, double t, double* o) {
    o[0] = r * std::cos(t);
    o[1] = r * std::sin(t);
  });
  HopfData h = hopf_differential(u);
  CHECK(max_abs_phi(h) < 1e-10);
  CHECK(polar_identity_residual(h) < 1e-10 * (1.0 + std::pow(max_gradient(h), 4)));
}

TEST_CASE("u = (x, 0): phi is identically one") {
  GridPtr g = Grid::annulus(0.3, 1.0, 64, 64);
  Field u = Field::sample(g, 2, [](double r, double t, double* o) {
    o[0] = r * std::cos(t);
    o[1] = 0.0;
  });
  HopfData h = hopf_differential(u);
  for (int i = 0; i < g->n_r(); ++i)
    for (int j = 0; j < g->n_theta(); ++j)
      CHECK(std::abs(h.phi.cplx(i, j) - 1.0) < 1e-9);
  // |u_rho| = |cos t|, |phi|^{1/2} = 1, so the radial bound holds with margin
  CHECK(radial_bound_margin(h) >= -1e-10);
}

TEST_CASE("holomorphic maps have vanishing phi") {
  // z^2 is polynomial: the stencil differentiates it exactly
  GridPtr g = Grid::annulus(0.5, 1.0, 64, 64);
  Field z2 = Field::sample(g, 2, [](double r, double t, double* o) {
    o[0] = r * r * std::cos(2 * t);
    o[1] = r * r * std::sin(2 * t);
  });
  CHECK(max_abs_phi(hopf_differential(z2)) < 1e-9);

  // exp(z) has genuine radial truncation error: L^1 of phi decays at 2nd order
  auto phi_l1 = [](int n_r) {
    GridPtr gg = Grid::annulus(0.5, 1.0, n_r, 64);
    Field u = Field::sample(gg, 2, [](double r, double t, double* o) {
      const double x = r * std::cos(t), y = r * std::sin(t);
      o[0] = std::exp(x) * std::cos(y);
      o[1] = std::exp(x) * std::sin(y);
    });
    return integrate(hopf_differential(u).phi.magnitude());
  };
  const double e1 = phi_l1(32), e2 = phi_l1(64), e3 = phi_l1(128);
  CHECK(std::log2(e1 / e2) > 1.9);
  CHECK(std::log2(e2 / e3) > 1.9);
}

TEST_CASE("polar identity residual on random smooth maps") {
  std::mt19937_64 rng(23);
  GridPtr g = Grid::annulus(0.3, 1.0, 48, 64);
  for (int trial = 0; trial < 100; ++trial) {
    Field u = random_smooth_map(rng, g, 2 + trial % 2);
    HopfData h = hopf_differential(u);
    const double m = max_gradient(h);
    CHECK(polar_identity_residual(h) <= 1e-10 * (1.0 + m * m * m * m));
    CHECK(radial_bound_margin(h) >= -1e-8 * (1.0 + m));
  }
}

TEST_CASE("radial map: margin vanishes nodewise") {
  GridPtr g = Grid::annulus(0.3, 1.0, 64, 32);
  Field u = Field::sample(g, 2, [](double r, double, double* o) {
    o[0] = r;
    o[1] = 0.0;
  });
  HopfData h = hopf_differential(u);
  // u_theta = 0 and phi = u_rho^2 real, so |phi|^{1/2} = |u_rho| exactly
  CHECK(std::fabs(radial_bound_margin(h)) < 1e-10);
}

TEST_CASE("constant map: everything vanishes") {
  GridPtr g = Grid::annulus(0.3, 1.0, 32, 32);
  Field u(g, 3, 0.5);
  HopfData h = hopf_differential(u);
  CHECK(max_abs_phi(h) < 1e-28);
  CHECK(polar_identity_residual(h) < 1e-28);
  CHECK(std::fabs(radial_bound_margin(h)) < 1e-14);
  CHECK(max_gradient(h) < 1e-14);
}

TEST_CASE("phi scales quadratically in the map") {
  std::mt19937_64 rng(29);
  GridPtr g = Grid::annulus(0.3, 1.0, 48, 64);
  Field u = random_smooth_map(rng, g, 2);
  Field cu(g, 2);
  for (std::size_t i = 0; i < u.values().size(); ++i)
    cu.values()[i] = 2.5 * u.values()[i];
  HopfData h = hopf_differential(u), hc = hopf_differential(cu);
  for (int i = 0; i < g->n_r(); ++i)
    for (int j = 0; j < g->n_theta(); ++j)
      CHECK(std::abs(hc.phi.cplx(i, j) - 6.25 * h.phi.cplx(i, j)) <=
            1e-10 * (1.0 + std::abs(h.phi.cplx(i, j))));
}

TEST_CASE("sqrt_abs_phi matches the pointwise square root") {
  std::mt19937_64 rng(31);
  GridPtr g = Grid::annulus(0.3, 1.0, 32, 32);
  Field u = random_smooth_map(rng, g, 2);
  HopfData h = hopf_differential(u);
  Field s = sqrt_abs_phi(h);
  for (int i = 0; i < g->n_r(); ++i)
    for (int j = 0; j < g->n_theta(); ++j)
      CHECK(s.at(i, j) ==
            doctest::Approx(std::sqrt(std::abs(h.phi.cplx(i, j)))).epsilon(1e-12));
}

TEST_CASE("dbar identity: force-free and forced polynomial examples") {
  GridPtr g = Grid::annulus(0.5, 1.0, 64, 64);
  Field z2 = Field::sample(g, 2, [](double r, double t, double* o) {
    o[0] = r * r * std::cos(2 * t);
    o[1] = r * r * std::sin(2 * t);
  });
  CHECK(dbar_residual(z2) < 1e-9);

  // u = (x^2, 0), f = -Laplace u = (-2, 0): dbar phi = 4x cancels 2<f, u_z>
  Field u = Field::sample(g, 2, [](double r, double t, double* o) {
    const double x = r * std::cos(t);
    o[0] = x * x;
    o[1] = 0.0;
  });
  Field f(g, 2);
  for (int i = 0; i < g->n_r(); ++i)
    for (int j = 0; j < g->n_theta(); ++j) f.at(i, j, 0) = -2.0;
  Field zero(g, 2, 0.0);
  CHECK(dbar_residual(u, f, zero) < 1e-8);
  // without the force the residual is genuinely nonzero
  CHECK(dbar_residual(u) > 1.0);
}
