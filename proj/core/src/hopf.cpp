#include "necklab/hopf.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace necklab {

HopfData hopf_differential(const Field& u) {
  PolarGradient grad = polar_gradient(u);
  CartesianGradient cart = to_cartesian(grad);
  const Grid& g = u.grid();
  Field phi(u.grid_ptr(), 2);
  for (int i = 0; i < g.n_r(); ++i)
    for (int j = 0; j < g.n_theta(); ++j) {
      double xx = 0.0, yy = 0.0, xy = 0.0;
      for (int c = 0; c < u.dim(); ++c) {
        const double ux = cart.u_x.at(i, j, c), uy = cart.u_y.at(i, j, c);
        xx += ux * ux;
        yy += uy * uy;
        xy += ux * uy;
      }
      phi.at(i, j, 0) = xx - yy;
      phi.at(i, j, 1) = -2.0 * xy;
    }
  return {std::move(phi), std::move(grad), std::move(cart)};
}

double polar_identity_residual(const HopfData& h) {
  const Grid& g = h.phi.grid();
  double worst = 0.0;
  for (int i = 0; i < g.n_r(); ++i)
    for (int j = 0; j < g.n_theta(); ++j) {
      double rr = 0.0, tt = 0.0, rt = 0.0;
      for (int c = 0; c < h.grad.u_rho.dim(); ++c) {
        const double ur = h.grad.u_rho.at(i, j, c);
        const double ut = h.grad.u_theta_over_rho.at(i, j, c);
        rr += ur * ur;
        tt += ut * ut;
        rt += ur * ut;
      }
      const double abs_phi2 = h.phi.at(i, j, 0) * h.phi.at(i, j, 0) +
                              h.phi.at(i, j, 1) * h.phi.at(i, j, 1);
      const double rhs = (rr - tt) * (rr - tt) + 4.0 * rt * rt;
      worst = std::max(worst, std::fabs(abs_phi2 - rhs));
    }
  return worst;
}

double radial_bound_margin(const HopfData& h) {
  const Grid& g = h.phi.grid();
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 0; i < g.n_r(); ++i)
    for (int j = 0; j < g.n_theta(); ++j) {
      double rr = 0.0, tt = 0.0;
      for (int c = 0; c < h.grad.u_rho.dim(); ++c) {
        const double ur = h.grad.u_rho.at(i, j, c);
        const double ut = h.grad.u_theta_over_rho.at(i, j, c);
        rr += ur * ur;
        tt += ut * ut;
      }
      const double abs_phi = std::hypot(h.phi.at(i, j, 0), h.phi.at(i, j, 1));
      worst = std::min(worst,
                       std::sqrt(abs_phi) + std::sqrt(tt) - std::sqrt(rr));
    }
  return worst;
}

double max_gradient(const HopfData& h) {
  const Grid& g = h.phi.grid();
  double worst = 0.0;
  for (int i = 0; i < g.n_r(); ++i)
    for (int j = 0; j < g.n_theta(); ++j) {
      double s = 0.0;
      for (int c = 0; c < h.grad.u_rho.dim(); ++c) {
        s += h.grad.u_rho.at(i, j, c) * h.grad.u_rho.at(i, j, c);
        s += h.grad.u_theta_over_rho.at(i, j, c) *
             h.grad.u_theta_over_rho.at(i, j, c);
      }
      worst = std::max(worst, std::sqrt(s));
    }
  return worst;
}

Field sqrt_abs_phi(const HopfData& h) {
  const Grid& g = h.phi.grid();
  Field out(h.phi.grid_ptr(), 1);
  for (int i = 0; i < g.n_r(); ++i)
    for (int j = 0; j < g.n_theta(); ++j)
      out.at(i, j) =
          std::sqrt(std::hypot(h.phi.at(i, j, 0), h.phi.at(i, j, 1)));
  return out;
}

double dbar_residual(const Field& u, const Field& f, const Field& g) {
  if (f.dim() != u.dim() || g.dim() != u.dim() ||
      !f.grid().same_layout(u.grid()) || !g.grid().same_layout(u.grid()))
    throw std::invalid_argument("dbar_residual: field mismatch");
  HopfData h = hopf_differential(u);
  // dbar phi from Cartesian gradients of both parts of phi
  PolarGradient gre = polar_gradient(h.phi.component(0));
  PolarGradient gim = polar_gradient(h.phi.component(1));
  CartesianGradient cre = to_cartesian(gre);
  CartesianGradient cim = to_cartesian(gim);
  const Grid& gr = u.grid();
  Field res(u.grid_ptr(), 1);
  for (int i = 0; i < gr.n_r(); ++i)
    for (int j = 0; j < gr.n_theta(); ++j) {
      // dbar = (d_x + i d_y)/2 applied to phi = (re, im)
      const std::complex<double> phi_x(cre.u_x.at(i, j), cim.u_x.at(i, j));
      const std::complex<double> phi_y(cre.u_y.at(i, j), cim.u_y.at(i, j));
      const std::complex<double> dbar_phi =
          0.5 * (phi_x + std::complex<double>(0.0, 1.0) * phi_y);
      std::complex<double> pair(0.0, 0.0);
      for (int c = 0; c < u.dim(); ++c) {
        const std::complex<double> uz =
            0.5 * std::complex<double>(h.cart.u_x.at(i, j, c),
                                       -h.cart.u_y.at(i, j, c));
        pair += (f.at(i, j, c) + g.at(i, j, c)) * uz;
      }
      res.at(i, j) = std::abs(dbar_phi + 2.0 * pair);
    }
  return integrate(res);
}

double dbar_residual(const Field& u) {
  Field zero(u.grid_ptr(), u.dim());
  return dbar_residual(u, zero, zero);
}

}  // namespace necklab
