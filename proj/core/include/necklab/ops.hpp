#pragma once

#include <complex>
#include <vector>

#include "necklab/field.hpp"

namespace necklab {

struct PolarGradient {
  Field u_rho;             // du/drho, same dim as input
  Field u_theta_over_rho;  // (du/dtheta)/rho
};

struct CartesianGradient {
  Field u_x;
  Field u_y;
};

// Centered 2nd-order differences in r (one-sided at boundary rings),
// spectral differences in theta. Rejects non-finite input.
PolarGradient polar_gradient(const Field& u);

// u_x = u_rho cos - (u_theta/rho) sin, u_y = u_rho sin + (u_theta/rho) cos.
CartesianGradient to_cartesian(const PolarGradient& g);

// |u_rho|^2 + |u_theta|^2/rho^2 as a scalar field.
Field gradient_squared(const PolarGradient& g);

// Quadrature: sum of values * cell_measure; scalar fields only.
double integrate(const Field& v);

Field radial_derivative(const Field& u);
Field second_radial_derivative(const Field& u);
Field theta_derivative(const Field& u);         // spectral, per ring
Field theta_second_derivative(const Field& u);  // spectral

// u_rr + u_r/r + u_thth/r^2.
Field laplacian(const Field& u);

// Frobenius norm of the Cartesian Hessian, summed over components, computed
// from polar second differences via the change-of-variables formulas.
Field hessian_norm(const Field& u);

// Exact per-ring discrete Fourier coefficients, normalized as ring averages
// against e^{-in theta}. Slot k holds mode n = k (k < N/2) or k - N.
struct ModeTable {
  int n_theta = 0;
  std::vector<std::vector<std::complex<double>>> rings;

  std::complex<double> mode(int ring, int n) const;
};

ModeTable angular_modes(const Field& v);  // scalar fields
Field modes_to_field(const ModeTable& t, GridPtr grid);

}  // namespace necklab
