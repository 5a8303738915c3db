#include <cmath>
#include <numbers>

#include "doctest.h"
#include "necklab/bubbletree.hpp"
#include "necklab/composite.hpp"

using namespace necklab;

namespace {
constexpr double kPi = std::numbers::pi;

SampleCloud grid_cloud(GridPtr g, const std::function<double(double, double)>& f) {
  SampleCloud c;
  for (int i = 0; i < g->n_r(); ++i)
    for (int j = 0; j < g->n_theta(); ++j) {
      const double r = g->radius(i), t = g->theta(j);
      const double x = r * std::cos(t), y = r * std::sin(t);
      c.pts.push_back({x, y, g->cell_measure(i), f(x, y)});
    }
  return c;
}

RationalMap degree_one() {
  return RationalMap({{0.0, 0.0}, {1.0, 0.0}}, {{1.0, 0.0}});
}

// far-field value is the south pole, so a bubble with this map glued inside
// another z-map bubble reduces to a clean full bubble in the inner region
RationalMap degree_one_inv() {
  return RationalMap({{1.0, 0.0}}, {{0.0, 0.0}, {1.0, 0.0}});
}

std::vector<SampleCloud> sequence_clouds(const std::vector<BubbleSpec>& bubbles,
                                         const std::vector<int>& ks) {
  std::vector<SampleCloud> out;
  for (int k : ks) {
    SequenceEvaluator ev({0.0, 0.0, 1.0}, bubbles, k);
    CompositeDomain dom = CompositeDomain::for_sequence(ev);
    out.push_back(dom.cloud([&](double x, double y) {
      return std::sqrt(2.0) * ev.grad_norm(x, y);
    }));
  }
  return out;
}

}  // namespace

TEST_CASE("concentration radius: calibrated indicator blob") {
  GridPtr g = Grid::disc(1.0, 128, 64);
  SampleCloud c = grid_cloud(g, [](double x, double y) {
    return std::hypot(x, y) < 0.1 ? 1.0 : 0.0;
  });
  // just below the blob's full mass so rounding cannot push it out of reach
  const double eps = std::sqrt(c.mass()) * 0.999;
  Concentration r = concentration_radius(c, eps, {});
  REQUIRE(r.found);
  CHECK(r.rho == doctest::Approx(0.1).epsilon(0.15));
  CHECK(std::hypot(r.x, r.y) < 0.11);
  // the located ball really carries the mass
  CHECK(mass_in_disk(c, {r.x, r.y, r.rho}, {}) >=
        eps * eps * (1.0 - 1e-9));
}

TEST_CASE("concentration radius: zero field signals no concentration") {
  GridPtr g = Grid::disc(1.0, 32, 16);
  SampleCloud c = grid_cloud(g, [](double, double) { return 0.0; });
  CHECK(!concentration_radius(c, 1.0, {}).found);
}

TEST_CASE("concentration radius: two blobs found one at a time") {
  GridPtr g = Grid::disc(1.0, 128, 128);
  auto blob = [](double x, double y, double cx) {
    return std::hypot(x - cx, y) < 0.1 ? 1.0 : 0.0;
  };
  SampleCloud c = grid_cloud(g, [&](double x, double y) {
    return blob(x, y, 0.5) + blob(x, y, -0.5);
  });
  const double eps = std::sqrt(c.mass() / 2.0) * 0.999;
  Concentration first = concentration_radius(c, eps, {});
  REQUIRE(first.found);
  CHECK(std::fabs(std::fabs(first.x) - 0.5) < 0.05);
  Concentration second =
      concentration_radius(c, eps, {{first.x, first.y, 2.0 * first.rho}});
  REQUIRE(second.found);
  CHECK(std::fabs(std::fabs(second.x) - 0.5) < 0.05);
  CHECK(first.x * second.x < 0.0);  // opposite sides
}

TEST_CASE("extraction requires at least four indices") {
  std::vector<SampleCloud> clouds(3);
  CHECK_THROWS(extract_point_scales(clouds, 1.0));
}

TEST_CASE("single bubble: one sequence with rho proportional to t") {
  std::vector<BubbleSpec> bubbles{{degree_one(), 0.0, 0.0, 1.0, 0.25}};
  std::vector<int> ks{1, 2, 3, 4, 5, 6};
  ExtractionResult ext = extract_point_scales(sequence_clouds(bubbles, ks), 5.0);
  REQUIRE(ext.retained.size() == 1);
  const PointScaleSequence& s = ext.retained[0];
  REQUIRE(s.ks.size() == ks.size());
  std::vector<double> ratio;
  for (std::size_t a = 0; a < s.ks.size(); ++a) {
    // center error scales with the ball: a fat early-k ball can reach the
    // required mass from anywhere well inside itself
    CHECK(std::hypot(s.x[a], s.y[a]) < std::max(0.02, 0.5 * s.rho[a]));
    ratio.push_back(s.rho[a] / bubbles[0].scale(ks[a]));
  }
  CHECK(std::hypot(s.x.back(), s.y.back()) < 0.02);
  // scale recovery: rho/t stable over the last half within 20%
  for (std::size_t a = ratio.size() / 2; a + 1 < ratio.size(); ++a) {
    CHECK(ratio[a + 1] / ratio[a] < 1.2);
    CHECK(ratio[a + 1] / ratio[a] > 0.8);
  }
}

TEST_CASE("two separated bubbles: two sequences, two strings") {
  std::vector<BubbleSpec> bubbles{{degree_one(), 0.25, 0.0, 1.0, 0.25},
                                  {degree_one(), -0.25, 0.0, 1.0, 0.25}};
  std::vector<int> ks{1, 2, 3, 4, 5, 6};
  ExtractionResult ext = extract_point_scales(sequence_clouds(bubbles, ks), 5.0);
  REQUIRE(ext.retained.size() == 2);
  // centers recovered on opposite sides
  CHECK(ext.retained[0].x.back() * ext.retained[1].x.back() < 0.0);
  BubbleTree tree = group_strings(ext);
  CHECK(tree.strings.size() == 2);
  for (const auto& s : tree.strings) CHECK(s.children.empty());
}

TEST_CASE("two concentric scales: one string with a child") {
  std::vector<BubbleSpec> bubbles{{degree_one(), 0.0, 0.0, 1.0, 0.5},
                                  {degree_one_inv(), 0.0, 0.0, 1.0, 0.25}};
  std::vector<int> ks{3, 4, 5, 6, 7, 8};
  ExtractionResult ext = extract_point_scales(sequence_clouds(bubbles, ks), 5.0);
  REQUIRE(ext.retained.size() == 2);
  // scale separation detected: the ratio of the two radii collapses
  const PointScaleSequence* big = &ext.retained[0];
  const PointScaleSequence* small = &ext.retained[1];
  if (big->rho.back() < small->rho.back()) std::swap(big, small);
  const double first_ratio = small->rho.front() / big->rho.front();
  const double last_ratio = small->rho.back() / big->rho.back();
  CHECK(last_ratio < first_ratio);
  CHECK(last_ratio < 0.1);
  BubbleTree tree = group_strings(ext);
  REQUIRE(tree.strings.size() == 1);
  CHECK(tree.strings[0].children.size() == 1);
}

TEST_CASE("decompose: single bubble yields bubble, neck and body") {
  std::vector<BubbleSpec> bubbles{{degree_one(), 0.0, 0.0, 1.0, 0.25}};
  std::vector<int> ks{1, 2, 3, 4, 5, 6};
  std::vector<SampleCloud> clouds = sequence_clouds(bubbles, ks);
  ExtractionResult ext = extract_point_scales(clouds, 5.0);
  REQUIRE(ext.retained.size() == 1);
  BubbleTree tree = group_strings(ext);
  DomainDecomposition dec =
      decompose_domains(clouds.back(), tree, ext, 5.0, 0.3);
  int bubbles_n = 0, necks = 0, body = 0;
  for (const auto& r : dec.regions) {
    if (r.kind == LabeledRegion::Kind::Bubble) ++bubbles_n;
    if (r.kind == LabeledRegion::Kind::Neck) {
      ++necks;
      CHECK(r.dyadic_ok);
      for (const auto& [rho, mass] : r.dyadic) CHECK(mass < 25.0);
    }
    if (r.kind == LabeledRegion::Kind::Body) ++body;
  }
  CHECK(bubbles_n == 1);
  CHECK(necks == 1);
  CHECK(body == 1);
  CHECK(dec.all_necks_ok);
  CHECK(dec.violations.empty());
}

TEST_CASE("decompose: small constant field is all body") {
  GridPtr g = Grid::disc(1.0, 64, 32);
  SampleCloud c = grid_cloud(g, [](double, double) { return 0.05; });
  ExtractionResult ext;
  ext.eps = 5.0;
  ext.theta = 10.0;
  BubbleTree tree;
  DomainDecomposition dec = decompose_domains(c, tree, ext, 5.0, 0.3);
  bool has_neck = false, has_bubble = false;
  for (const auto& r : dec.regions) {
    has_neck |= r.kind == LabeledRegion::Kind::Neck;
    has_bubble |= r.kind == LabeledRegion::Kind::Bubble;
  }
  CHECK(!has_neck);
  CHECK(!has_bubble);
  CHECK(dec.all_necks_ok);
}

TEST_CASE("decompose: two separated bubbles yield two necks") {
  std::vector<BubbleSpec> bubbles{{degree_one(), 0.25, 0.0, 1.0, 0.25},
                                  {degree_one(), -0.25, 0.0, 1.0, 0.25}};
  std::vector<int> ks{1, 2, 3, 4, 5, 6};
  std::vector<SampleCloud> clouds = sequence_clouds(bubbles, ks);
  ExtractionResult ext = extract_point_scales(clouds, 5.0);
  REQUIRE(ext.retained.size() == 2);
  BubbleTree tree = group_strings(ext);
  DomainDecomposition dec =
      decompose_domains(clouds.back(), tree, ext, 5.0, 0.3);
  int bubbles_n = 0, necks = 0;
  for (const auto& r : dec.regions) {
    if (r.kind == LabeledRegion::Kind::Bubble) ++bubbles_n;
    if (r.kind == LabeledRegion::Kind::Neck) ++necks;
  }
  CHECK(bubbles_n == 2);
  CHECK(necks == 2);
}

TEST_CASE("extraction is deterministic") {
  std::vector<BubbleSpec> bubbles{{degree_one(), 0.2, -0.1, 1.0, 0.25}};
  std::vector<int> ks{1, 2, 3, 4};
  std::vector<SampleCloud> clouds = sequence_clouds(bubbles, ks);
  ExtractionResult a = extract_point_scales(clouds, 5.0);
  ExtractionResult b = extract_point_scales(clouds, 5.0);
  REQUIRE(a.retained.size() == b.retained.size());
  for (std::size_t i = 0; i < a.retained.size(); ++i) {
    CHECK(a.retained[i].x == b.retained[i].x);
    CHECK(a.retained[i].y == b.retained[i].y);
    CHECK(a.retained[i].rho == b.retained[i].rho);
  }
}

TEST_CASE("extracted balls carry the prescribed mass") {
  std::vector<BubbleSpec> bubbles{{degree_one(), 0.0, 0.0, 1.0, 0.25}};
  std::vector<int> ks{1, 2, 3, 4};
  std::vector<SampleCloud> clouds = sequence_clouds(bubbles, ks);
  ExtractionResult ext = extract_point_scales(clouds, 5.0);
  REQUIRE(ext.retained.size() == 1);
  const PointScaleSequence& s = ext.retained[0];
  for (std::size_t a = 0; a < s.ks.size(); ++a) {
    const double m = mass_in_disk(
        clouds[static_cast<std::size_t>(a)], {s.x[a], s.y[a], s.rho[a]}, {});
    CHECK(m >= 25.0 * (1.0 - 0.02));
  }
  // count bound in the squared-mass normalization
  CHECK(ext.retained.size() <= clouds.back().mass() / 25.0 + 1.0);
}
