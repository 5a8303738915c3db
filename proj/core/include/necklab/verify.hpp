#pragma once

#include <array>
#include <vector>

#include "necklab/bubbles.hpp"
#include "necklab/bubbletree.hpp"
#include "necklab/composite.hpp"

namespace necklab {

struct SequenceSetup {
  std::array<double, 3> body{0.0, 0.0, 1.0};
  std::vector<BubbleSpec> bubbles;
  std::vector<int> ks{1, 2, 3, 4, 5, 6, 7, 8};
  double r = 0.9;       // identity/bound ball B_r; K = B_r
  double delta = 0.3;   // neck outer radius
  double eps = 5.0;     // concentration threshold (L^2 norm of Omega)
  double theta = 10.0;  // finite-k separation threshold
  double tol_ei = 0.05; // final-defect fraction of total
  int central_n_r = 128, central_n_theta = 128;
  int patch_nodes_per_decade = 96, patch_n_theta = 64;
  double inject_neck = 0.0;  // artificial non-decaying neck field (negative test)
};

struct SequenceReportRow {
  int k = 0;
  double E2 = 0, E21 = 0, W21 = 0;
  double hess_l1 = 0;
  bool has_neck = false;
  double neck_E2 = 0, neck_E21 = 0, neck_osc = 0, neck_sqrt_phi_L21 = 0;
  double defect2 = 0, defect21 = 0, defectW21 = 0;
  double sup_grad = 0;
  double grad_L2 = 0, omega_L2 = 0, f_LlogL = 0, f_L2 = 0, sqrt_phi_L21K = 0;
  double separation = 0;
};

struct SequenceReport {
  std::vector<SequenceReportRow> rows;
  double body_E2 = 0, body_E21 = 0;
  std::vector<double> bubble_E2, bubble_E21, bubble_H1;  // limit references
  ExtractionResult extraction;
  BubbleTree tree;
  DomainDecomposition decomposition;  // at the final index
  bool pass_energy = false, pass_lorentz = false, pass_neck = false,
       pass_global = false;

  bool all_pass() const {
    return pass_energy && pass_lorentz && pass_neck && pass_global;
  }
};

// Full harness: per-index composite quadrature, tree extraction, energy and
// Lorentz identities, neck decay/oscillation, and the uniform W^{2,1} bound.
SequenceReport verify_sequence(const SequenceSetup& s);

// true when v is non-increasing (within 5% jitter) over its last half
bool decreasing_last_half(const std::vector<double>& v);

double median(std::vector<double> v);

}  // namespace necklab
