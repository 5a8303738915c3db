#pragma once

#include <utility>
#include <vector>

#include "necklab/cloud.hpp"

namespace necklab {

struct Concentration {
  bool found = false;
  double rho = 0.0;
  double x = 0.0, y = 0.0;
};

// Smallest radius on the 2^{1/8} ladder at which some ball (centered on a
// cloud point, excluded regions removed) carries L^2-mass eps^2. Ties go to
// the best-ranked center; not-found is the clean no-concentration signal.
Concentration concentration_radius(const SampleCloud& omega, double eps,
                                   const std::vector<Disk>& excluded);

struct PointScaleSequence {
  int id = 0;
  std::vector<int> ks;  // indices where the sequence was matched
  std::vector<double> x, y, rho;
};

struct DiscardRecord {
  int id;
  int absorbed_by;
};

struct ExtractionResult {
  std::vector<PointScaleSequence> retained;
  std::vector<DiscardRecord> discards;
  std::vector<int> raw_counts;  // per input index
  double eps = 0.0, theta = 0.0;
};

// Iterated concentration extraction per index, matched across indices,
// then filtered by the finite-k separation rule: the pairwise separation
// max{rho/rho', rho'/rho, dist/(rho + rho')} must exceed theta at the final
// index and be nondecreasing over the last half.
ExtractionResult extract_point_scales(const std::vector<SampleCloud>& omegas,
                                      double eps, double theta = 10.0);

struct BubbleString {
  int root;                    // index into ExtractionResult::retained
  std::vector<int> children;   // sequences forming on the root's bubble
  double gamma = 1.0;          // measured enclosing factor
};

struct BubbleTree {
  std::vector<BubbleString> strings;
  double gamma = 1.0;  // max over strings
};

BubbleTree group_strings(const ExtractionResult& ext, double theta = 10.0);

struct LabeledRegion {
  enum class Kind { Bubble, Neck, Empty, Body };
  Kind kind;
  double x = 0.0, y = 0.0;
  double r_in = 0.0, r_out = 0.0;
  // per-dyadic-annulus (rho, mass in B_{2 rho} \ B_rho) for necks
  std::vector<std::pair<double, double>> dyadic;
  bool dyadic_ok = true;
};

struct DomainDecomposition {
  std::vector<LabeledRegion> regions;
  bool all_necks_ok = true;
  std::vector<Concentration> violations;  // re-extractions on failing necks
  std::vector<int> boundary_rejected;     // strings concentrating near the rim
};

DomainDecomposition decompose_domains(const SampleCloud& omega_final,
                                      const BubbleTree& tree,
                                      const ExtractionResult& ext, double eps,
                                      double delta);

}  // namespace necklab
