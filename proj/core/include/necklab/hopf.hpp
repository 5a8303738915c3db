#pragma once

#include "necklab/field.hpp"
#include "necklab/ops.hpp"

namespace necklab {

// All Hopf quantities are derived from one shared discrete-gradient pass so
// that the pointwise polar identities hold at round-off level.
struct HopfData {
  Field phi;  // complex (dim 2): |u_x|^2 - |u_y|^2 - 2i<u_x,u_y>
  PolarGradient grad;
  CartesianGradient cart;
};

HopfData hopf_differential(const Field& u);

// max over nodes of | |phi|^2 - (|u_r|^2 - |u_t|^2/r^2)^2 - 4<u_r,u_t/r>^2 |.
// Exact algebraic identity; bounded by 1e-10*(1 + max|grad u|^4).
double polar_identity_residual(const HopfData& h);

// min over nodes of |phi|^{1/2} + |u_t|/r - |u_r|; nonnegative up to
// round-off for consistently built discrete derivatives.
double radial_bound_margin(const HopfData& h);

// max |grad u| over nodes, for residual/margin tolerance scaling.
double max_gradient(const HopfData& h);

// || dbar phi + 2<f+g, u_z> ||_{L^1} with dbar = (d_x + i d_y)/2 and
// u_z = (u_x - i u_y)/2, discretized from the same gradient pass.
double dbar_residual(const Field& u, const Field& f, const Field& g);
double dbar_residual(const Field& u);  // f = g = 0

// Nodewise |phi|^{1/2} as a scalar field (input to the L^{2,1} reports).
Field sqrt_abs_phi(const HopfData& h);

}  // namespace necklab
