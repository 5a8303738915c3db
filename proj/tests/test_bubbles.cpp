#include <cmath>
#include <numbers>

#include "doctest.h"
#include "necklab/bubbles.hpp"
#include "necklab/hopf.hpp"
#include "necklab/lorentz.hpp"
#include "necklab/ops.hpp"

using namespace necklab;

namespace {
constexpr double kPi = std::numbers::pi;
using cplx = std::complex<double>;
}  // namespace

TEST_CASE("m = z: pole values of the stereographic lift") {
  RationalMap m({{0.0, 0.0}, {1.0, 0.0}}, {{1.0, 0.0}});
  CHECK(m.degree() == 1);
  auto south = m.value({0.0, 0.0});
  CHECK(south[0] == doctest::Approx(0.0));
  CHECK(south[1] == doctest::Approx(0.0));
  CHECK(south[2] == doctest::Approx(-1.0));
  auto north = m.value_at_infinity();
  CHECK(north[2] == doctest::Approx(1.0));
  auto far = m.value({1e9, 0.0});
  CHECK(far[2] == doctest::Approx(1.0).epsilon(1e-10));
  // |u| = 1 wherever evaluated
  auto p = m.value({0.3, -0.7});
  CHECK(p[0] * p[0] + p[1] * p[1] + p[2] * p[2] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("coprimality check rejects degenerate maps") {
  // P = z^2 - 1, Q = z - 1 share the root z = 1
  CHECK_THROWS(RationalMap({{-1.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}},
                           {{-1.0, 0.0}, {1.0, 0.0}}));
  CHECK_THROWS(RationalMap({{0.0, 0.0}}, {{1.0, 0.0}}));  // degree 0
}

TEST_CASE("analytic gradient matches finite differences") {
  RationalMap m({{0.5, -0.2}, {1.0, 0.3}, {0.0, 1.0}}, {{1.0, 0.0}, {0.4, 0.0}});
  const double h = 1e-6;
  for (cplx z : {cplx{0.3, 0.1}, cplx{-1.2, 0.8}, cplx{5.0, -3.0}}) {
    double u[3], g[3][2];
    m.value_and_gradient(z, u, g);
    auto ux = m.value(z + cplx{h, 0.0}), mx = m.value(z - cplx{h, 0.0});
    auto uy = m.value(z + cplx{0.0, h}), my = m.value(z - cplx{0.0, h});
    for (int c = 0; c < 3; ++c) {
      CHECK(g[c][0] == doctest::Approx((ux[c] - mx[c]) / (2 * h)).epsilon(1e-4));
      CHECK(g[c][1] == doctest::Approx((uy[c] - my[c]) / (2 * h)).epsilon(1e-4));
    }
    // energy density equals the gradient magnitude from the chain rule
    double d2 = 0.0;
    for (int c = 0; c < 3; ++c) d2 += g[c][0] * g[c][0] + g[c][1] * g[c][1];
    CHECK(m.energy_density(z) == doctest::Approx(d2).epsilon(1e-10));
  }
}

TEST_CASE("energy quantization: degrees 1, 2, 3") {
  GridPtr g = Grid::annulus(1e-6, 100.0, 1024, 32);
  RationalMap d1({{0.0, 0.0}, {1.0, 0.0}}, {{1.0, 0.0}});
  CHECK(dirichlet_energy(d1, *g) == doctest::Approx(4 * kPi).epsilon(0.01));
  RationalMap d2({{0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}}, {{1.0, 0.0}});
  CHECK(dirichlet_energy(d2, *g) == doctest::Approx(8 * kPi).epsilon(0.01));
  // degree 3 with well-separated preimages: z^3 - z over 1
  RationalMap d3({{0.0, 0.0}, {-1.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}}, {{1.0, 0.0}});
  CHECK(dirichlet_energy(d3, *g) == doctest::Approx(12 * kPi).epsilon(0.01));
}

TEST_CASE("bubbles are conformal: Hopf L1 vanishes under refinement") {
  RationalMap m({{0.0, 0.0}, {1.0, 0.0}}, {{1.0, 0.0}});
  auto phi_l1 = [&](int n_r) {
    GridPtr g = Grid::annulus(0.5, 2.0, n_r, 64);
    Field u = bubble_field(m, g);
    return integrate(hopf_differential(u).phi.magnitude());
  };
  const double e1 = phi_l1(32), e2 = phi_l1(64), e3 = phi_l1(128);
  CHECK(std::log2(e1 / e2) > 1.9);
  CHECK(std::log2(e2 / e3) > 1.9);
}

TEST_CASE("sphere omega: constant map gives zero") {
  GridPtr g = Grid::disc(1.0, 16, 16);
  Field u = constant_body(g, {0.0, 0.0, 1.0});
  OmegaReport r = sphere_omega(u);
  for (double x : r.magnitude.values()) CHECK(x < 1e-14);
  CHECK(r.res_pde_l1 < 1e-12);
  CHECK(r.res_perp_max < 1e-12);
}

TEST_CASE("sphere omega rejects non-sphere input") {
  GridPtr g = Grid::disc(1.0, 8, 8);
  Field u(g, 3, 0.5);
  CHECK_THROWS(u.set_unit_sphere(true));
  CHECK_THROWS(sphere_omega(u));  // flag not set
}

TEST_CASE("sphere omega: PDE residual decays at 2nd order on a bubble") {
  RationalMap m({{0.0, 0.0}, {1.0, 0.0}}, {{1.0, 0.0}});
  auto resid = [&](int n_r) {
    GridPtr g = Grid::annulus(0.5, 2.0, n_r, 64);
    return sphere_omega(bubble_field(m, g)).res_pde_l1;
  };
  const double e1 = resid(32), e2 = resid(64), e3 = resid(128);
  CHECK(std::log2(e1 / e2) > 1.9);
  CHECK(std::log2(e2 / e3) > 1.9);
}

TEST_CASE("omega . grad-perp u vanishes nodewise for any sphere map") {
  RationalMap m({{0.2, 0.1}, {1.0, 0.0}, {0.0, -0.5}}, {{1.0, 0.0}, {0.3, 0.2}});
  GridPtr g = Grid::annulus(0.3, 1.5, 48, 32);
  OmegaReport r = sphere_omega(bubble_field(m, g));
  CHECK(r.res_perp_max <= 1e-8);
}

TEST_CASE("|Omega| = sqrt(2) |grad u| for sphere maps") {
  RationalMap m({{0.0, 0.0}, {1.0, 0.0}}, {{1.0, 0.0}});
  GridPtr g = Grid::annulus(0.5, 2.0, 48, 32);
  Field u = bubble_field(m, g);
  OmegaReport r = sphere_omega(u);
  Field g2 = gradient_squared(polar_gradient(u));
  for (int i = 0; i < g->n_r(); ++i)
    for (int j = 0; j < g->n_theta(); ++j)
      // omega is built from the tangentially projected gradient, which
      // differs from the raw discrete gradient at truncation level
      CHECK(r.magnitude.at(i, j) ==
            doctest::Approx(std::sqrt(2.0 * g2.at(i, j))).epsilon(1e-6));
}

TEST_CASE("synthesize: zero bubbles returns the body unchanged") {
  GridPtr g = Grid::disc(1.0, 48, 32);
  Field body = constant_body(g, {0.0, 0.0, 1.0});
  SynthResult s = synthesize_sequence(body, {}, 3);
  for (int i = 0; i < g->n_r(); ++i)
    for (int j = 0; j < g->n_theta(); ++j) {
      CHECK(s.u.at(i, j, 2) == doctest::Approx(1.0).epsilon(1e-12));
      for (int c = 0; c < 2; ++c)
        CHECK(std::fabs(s.u.at(i, j, c)) < 1e-12);
    }
  CHECK(s.report.f_L2 < 1e-10);
}

TEST_CASE("synthesize: single bubble energy approaches 4 pi") {
  RationalMap m({{0.0, 0.0}, {1.0, 0.0}}, {{1.0, 0.0}});
  std::vector<BubbleSpec> bubbles{{m, 0.0, 0.0, 1.0, 0.25}};
  GridPtr g = Grid::disc(1.0, 256, 128);
  Field body = constant_body(g, {0.0, 0.0, 1.0});
  // k is capped where the uniform grid still resolves the core t = 4^-k
  double prev_gap = 1e300;
  for (int k : {1, 2, 3}) {
    SynthResult s = synthesize_sequence(body, bubbles, k);
    const double e = 0.5 * integrate(gradient_squared(polar_gradient(s.u)));
    const double gap = std::fabs(e - 4 * kPi);
    CHECK(gap < prev_gap + 1e-12);
    prev_gap = gap;
    if (k == 3) CHECK(e == doctest::Approx(4 * kPi).epsilon(0.01));
  }
}

TEST_CASE("separation quantity grows like 2^k for a two-scale pair") {
  RationalMap m({{0.0, 0.0}, {1.0, 0.0}}, {{1.0, 0.0}});
  std::vector<BubbleSpec> bubbles{{m, 0.0, 0.0, 1.0, 0.5},
                                  {m, 0.0, 0.0, 1.0, 0.25}};
  for (int k = 2; k <= 8; ++k) {
    const double s = separation_quantity(bubbles, k);
    CHECK(s == doctest::Approx(std::pow(2.0, k)).epsilon(1e-12));
  }
  CHECK(separation_quantity({bubbles[0]}, 3) ==
        std::numeric_limits<double>::infinity());
}

TEST_CASE("sequence evaluator agrees with the grid synthesis") {
  RationalMap m({{0.0, 0.0}, {1.0, 0.0}}, {{1.0, 0.0}});
  std::vector<BubbleSpec> bubbles{{m, 0.2, -0.1, 1.0, 0.25}};
  const int k = 2;
  GridPtr g = Grid::disc(1.0, 96, 64);
  Field body = constant_body(g, {0.0, 0.0, 1.0});
  SynthResult s = synthesize_sequence(body, bubbles, k);
  SequenceEvaluator ev({0.0, 0.0, 1.0}, bubbles, k);
  for (int i = 5; i < g->n_r(); i += 17)
    for (int j = 0; j < g->n_theta(); j += 13) {
      const double r = g->radius(i), t = g->theta(j);
      double u[3], grad[3][2];
      REQUIRE(ev.eval(r * std::cos(t), r * std::sin(t), u, grad));
      for (int c = 0; c < 3; ++c)
        CHECK(u[c] == doctest::Approx(s.u.at(i, j, c)).epsilon(1e-10));
    }
}

TEST_CASE("synthesize rejects an undefined projection") {
  // pick the body so the gluing sum vanishes exactly at one grid node
  GridPtr g = Grid::disc(1.0, 32, 16);
  RationalMap m({{0.0, 0.0}, {1.0, 0.0}}, {{1.0, 0.0}});
  const double r0 = g->radius(10), t0 = g->theta(0);
  const std::complex<double> w0{r0 * std::cos(t0), r0 * std::sin(t0)};
  auto omega_w0 = m.value(w0);
  auto north = m.value_at_infinity();
  std::array<double, 3> body_pt{north[0] - omega_w0[0], north[1] - omega_w0[1],
                                north[2] - omega_w0[2]};
  Field body = constant_body(g, body_pt);
  std::vector<BubbleSpec> bubbles{{m, 0.0, 0.0, 1.0, 0.5}};
  CHECK_THROWS(synthesize_sequence(body, bubbles, 0));
}
