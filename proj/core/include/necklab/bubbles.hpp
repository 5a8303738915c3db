#pragma once

#include <array>
#include <complex>
#include <optional>
#include <vector>

#include "necklab/field.hpp"

namespace necklab {

// Rational map R = P/Q from the Riemann sphere to itself, evaluated
// projectively so poles of Q are ordinary points.
class RationalMap {
 public:
  using cplx = std::complex<double>;

  RationalMap(std::vector<cplx> p, std::vector<cplx> q);  // ascending coeffs

  int degree() const { return degree_; }

  // u = Pi^{-1}(P/Q) with Pi^{-1}(w) = (2 Re w, 2 Im w, |w|^2 - 1)/(1 + |w|^2)
  std::array<double, 3> value(cplx z) const;
  std::array<double, 3> value_at_infinity() const;

  // value plus the Cartesian gradient d u^i / d(x, y); exact chain rule
  // through whichever affine chart of the target is nondegenerate at z
  void value_and_gradient(cplx z, double u[3], double grad[3][2]) const;

  // energy density |grad u|^2 = 8 |P'Q - PQ'|^2 / (|P|^2 + |Q|^2)^2
  double energy_density(cplx z) const;

 private:
  void eval_pair(cplx z, cplx& p, cplx& q, cplx& dp, cplx& dq) const;

  std::vector<cplx> p_, q_;
  int degree_;
};

Field bubble_field(const RationalMap& m, GridPtr g);

// Dirichlet energy (1/2) integral of the analytic density over the grid.
double dirichlet_energy(const RationalMap& m, const Grid& g);

// Omega^i_j = u^i grad u^j - u^j grad u^i; stored for (i,j) in
// {(0,1), (0,2), (1,2)}, each entry a 2-component field.
struct OmegaReport {
  std::array<Field, 3> omega;
  Field magnitude;      // |Omega| nodewise (all 6 signed entries)
  double res_pde_l1;    // || Delta u + Omega . grad u ||_{L^1}
  double res_perp_max;  // max node |Omega . grad^perp u|
  double res_perp_l1;
};
OmegaReport sphere_omega(const Field& u);

struct BubbleSpec {
  RationalMap map;
  double cx = 0.0, cy = 0.0;  // center in B_1
  double t0 = 1.0;            // scale schedule t(k) = t0 * rate^k
  double rate = 0.25;

  double scale(int k) const;
};

// min over bubble pairs of max{t/t', t'/t, dist/(t + t')}; +inf for < 2 bubbles
double separation_quantity(const std::vector<BubbleSpec>& bubbles, int k);

// Analytic value/gradient of the glued sequence
//   u_k = Proj_{S^2}( body + sum_j [ omega_j((z - x_j)/t_j) - omega_j(inf) ] )
// at arbitrary points; the workhorse behind off-grid quadrature.
class SequenceEvaluator {
 public:
  SequenceEvaluator(std::array<double, 3> body_point,
                    std::vector<BubbleSpec> bubbles, int k);

  // false when the projection argument is shorter than 10^-6
  bool eval(double x, double y, double u[3], double grad[3][2]) const;
  double grad_norm(double x, double y) const;  // |grad u|, throws if undefined
  int index() const { return k_; }
  const std::vector<BubbleSpec>& bubbles() const { return bubbles_; }

 private:
  std::array<double, 3> body_;
  std::vector<BubbleSpec> bubbles_;
  std::vector<std::array<double, 3>> omega_inf_;
  std::vector<double> t_;
  int k_;
};

struct SynthReport {
  double f_LlogL;
  double f_L2;
  double sqrt_phi_L21;  // || |phi_k|^{1/2} ||_{L^{2,1}}
  double separation;
};

struct SynthResult {
  Field u;  // unit_sphere, dim 3
  Field f;  // measured defect -Delta u - Omega(u) . grad u
  SynthReport report;
};

Field constant_body(GridPtr g, std::array<double, 3> p);

// Projection gluing on the body's grid; throws when the projection is
// undefined at some node (reject this k). The grid may be a local patch
// whose origin sits at (origin_x, origin_y) in global coordinates.
SynthResult synthesize_sequence(const Field& body,
                                const std::vector<BubbleSpec>& bubbles, int k,
                                double origin_x = 0.0, double origin_y = 0.0);

}  // namespace necklab
