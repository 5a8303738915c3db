#pragma once

#include <optional>
#include <vector>

#include "necklab/field.hpp"

namespace necklab {

struct BoundaryData {
  std::vector<double> outer;                 // per-angle values, size n_theta
  std::optional<std::vector<double>> inner;  // absent on disc grids

  static BoundaryData zero(const Grid& g);
};

// Per-angular-mode second-order radial solve of
//   psi'' + psi'/r - n^2 psi / r^2 = rhs_n,
// Dirichlet data matched exactly at the boundary rings. Disc grids use the
// through-origin ghost ring; annulus grids solve in s = log r.
Field poisson_solve(const Field& rhs, const BoundaryData& bc);

// Harmonic extension (rhs = 0).
Field harmonic_extension(GridPtr grid, const BoundaryData& bc);

// Restrict Lorentz/L^p functionals to radii in [r_lo, r_hi] (cell centers).
double integrate_on(const Field& v, double r_lo, double r_hi);
double norm_L21_on(const Field& v, double r_lo, double r_hi);
double norm_L2_on(const Field& v, double r_lo, double r_hi);

struct WenteReport {
  Field psi;          // on the annulus grid, zero boundary data
  double hess_l1;     // ||Hess psi||_{L^1(B_lambda \ B_{r/lambda})}
  double grad_l21;    // ||grad psi||_{L^{2,1}(B_lambda \ B_{r/lambda})}
  double denom;       // ||grad a||_{L^2} ||grad b||_{L^2} on the disc
  double ratio;       // (hess_l1 + grad_l21) / denom
};

// Solves Delta psi = grad a . grad^perp b on the annulus grid with zero
// Dirichlet data; a, b live on a disc grid covering the annulus.
WenteReport wente_solve(const Field& a, const Field& b, GridPtr annulus,
                        double lambda);

struct HodgeDecomposition {
  Field C;  // Delta C = div V, zero Dirichlet
  Field D;  // Delta D = curl V, Neumann outer data from the solenoidal part
  Field reconstruction;  // grad C + grad^perp D (dim 2)
};

// V is a 2-component field on a disc grid.
HodgeDecomposition hodge_decompose(const Field& V);

// Spectral-in-theta, cubic-in-r resampling onto another polar grid.
Field resample(const Field& src, GridPtr dst);

}  // namespace necklab
