#include "necklab/ops.hpp"

#include <cmath>
#include <stdexcept>

#include "necklab/fft.hpp"

namespace necklab {

namespace {

// First/second derivative weights at x of the quadratic through x0 < x1 < x2.
void lagrange3(double x0, double x1, double x2, double x, double w1[3],
               double w2[3]) {
  const double d0 = (x0 - x1) * (x0 - x2);
  const double d1 = (x1 - x0) * (x1 - x2);
  const double d2 = (x2 - x0) * (x2 - x1);
  w1[0] = (2.0 * x - x1 - x2) / d0;
  w1[1] = (2.0 * x - x0 - x2) / d1;
  w1[2] = (2.0 * x - x0 - x1) / d2;
  w2[0] = 2.0 / d0;
  w2[1] = 2.0 / d1;
  w2[2] = 2.0 / d2;
}

// Applies a 3-point radial stencil (first or second derivative) per column.
Field radial_stencil(const Field& u, bool second) {
  const Grid& g = u.grid();
  const int nr = g.n_r(), nt = g.n_theta(), dim = u.dim();
  Field out(u.grid_ptr(), dim);
  double w1[3], w2[3];
  for (int i = 0; i < nr; ++i) {
    const int base = (i == 0) ? 0 : (i == nr - 1 ? nr - 3 : i - 1);
    lagrange3(g.radius(base), g.radius(base + 1), g.radius(base + 2),
              g.radius(i), w1, w2);
    const double* w = second ? w2 : w1;
    for (int j = 0; j < nt; ++j)
      for (int c = 0; c < dim; ++c)
        out.at(i, j, c) = w[0] * u.at(base, j, c) + w[1] * u.at(base + 1, j, c) +
                          w[2] * u.at(base + 2, j, c);
  }
  return out;
}

Field theta_spectral(const Field& u, int order) {
  const Grid& g = u.grid();
  const int nr = g.n_r(), nt = g.n_theta(), dim = u.dim();
  Field out(u.grid_ptr(), dim);
  std::vector<std::complex<double>> ring(nt);
  for (int i = 0; i < nr; ++i)
    for (int c = 0; c < dim; ++c) {
      for (int j = 0; j < nt; ++j) ring[j] = u.at(i, j, c);
      fft(ring);
      for (int k = 0; k < nt; ++k) {
        const int n = fft_mode(k, nt);
        if (order == 1) {
          // drop the Nyquist mode for an odd operator on real data
          ring[k] *= (k == nt / 2) ? 0.0 : std::complex<double>(0.0, n);
        } else {
          ring[k] *= -static_cast<double>(n) * n;
        }
      }
      fft(ring, /*inverse=*/true);
      for (int j = 0; j < nt; ++j) out.at(i, j, c) = ring[j].real();
    }
  return out;
}

}  // namespace

PolarGradient polar_gradient(const Field& u) {
  if (!u.all_finite())
    throw std::invalid_argument("polar_gradient: non-finite input");
  const Grid& g = u.grid();
  if (g.n_r() < 3 || g.n_theta() < 8)
    throw std::invalid_argument("polar_gradient: grid too small");
  Field u_rho = radial_stencil(u, /*second=*/false);
  Field u_t = theta_spectral(u, 1);
  for (int i = 0; i < g.n_r(); ++i) {
    const double inv_r = 1.0 / g.radius(i);
    for (int j = 0; j < g.n_theta(); ++j)
      for (int c = 0; c < u.dim(); ++c) u_t.at(i, j, c) *= inv_r;
  }
  return {std::move(u_rho), std::move(u_t)};
}

CartesianGradient to_cartesian(const PolarGradient& grad) {
  const Grid& g = grad.u_rho.grid();
  const int dim = grad.u_rho.dim();
  Field u_x(grad.u_rho.grid_ptr(), dim), u_y(grad.u_rho.grid_ptr(), dim);
  for (int j = 0; j < g.n_theta(); ++j) {
    const double ct = std::cos(g.theta(j)), st = std::sin(g.theta(j));
    for (int i = 0; i < g.n_r(); ++i)
      for (int c = 0; c < dim; ++c) {
        const double ur = grad.u_rho.at(i, j, c);
        const double ut = grad.u_theta_over_rho.at(i, j, c);
        u_x.at(i, j, c) = ur * ct - ut * st;
        u_y.at(i, j, c) = ur * st + ut * ct;
      }
  }
  return {std::move(u_x), std::move(u_y)};
}

Field gradient_squared(const PolarGradient& grad) {
  const Grid& g = grad.u_rho.grid();
  Field out(grad.u_rho.grid_ptr(), 1);
  for (int i = 0; i < g.n_r(); ++i)
    for (int j = 0; j < g.n_theta(); ++j) {
      double s = 0.0;
      for (int c = 0; c < grad.u_rho.dim(); ++c) {
        s += grad.u_rho.at(i, j, c) * grad.u_rho.at(i, j, c);
        s += grad.u_theta_over_rho.at(i, j, c) * grad.u_theta_over_rho.at(i, j, c);
      }
      out.at(i, j) = s;
    }
  return out;
}

double integrate(const Field& v) {
  if (v.dim() != 1) throw std::invalid_argument("integrate: scalar field required");
  const Grid& g = v.grid();
  double s = 0.0;
  for (int i = 0; i < g.n_r(); ++i) {
    double ring = 0.0;
    for (int j = 0; j < g.n_theta(); ++j) ring += v.at(i, j);
    s += ring * g.cell_measure(i);
  }
  return s;
}

Field radial_derivative(const Field& u) { return radial_stencil(u, false); }
Field second_radial_derivative(const Field& u) { return radial_stencil(u, true); }
Field theta_derivative(const Field& u) { return theta_spectral(u, 1); }
Field theta_second_derivative(const Field& u) { return theta_spectral(u, 2); }

Field laplacian(const Field& u) {
  const Grid& g = u.grid();
  Field u_r = radial_stencil(u, false);
  Field u_rr = radial_stencil(u, true);
  Field u_tt = theta_spectral(u, 2);
  Field out(u.grid_ptr(), u.dim());
  for (int i = 0; i < g.n_r(); ++i) {
    const double r = g.radius(i);
    for (int j = 0; j < g.n_theta(); ++j)
      for (int c = 0; c < u.dim(); ++c)
        out.at(i, j, c) = u_rr.at(i, j, c) + u_r.at(i, j, c) / r +
                          u_tt.at(i, j, c) / (r * r);
  }
  return out;
}

Field hessian_norm(const Field& u) {
  const Grid& g = u.grid();
  Field u_r = radial_stencil(u, false);
  Field u_rr = radial_stencil(u, true);
  Field u_t = theta_spectral(u, 1);
  Field u_tt = theta_spectral(u, 2);
  Field u_rt = radial_stencil(u_t, false);
  Field out(u.grid_ptr(), 1);
  for (int i = 0; i < g.n_r(); ++i) {
    const double r = g.radius(i);
    for (int j = 0; j < g.n_theta(); ++j) {
      const double ct = std::cos(g.theta(j)), st = std::sin(g.theta(j));
      const double x = r * ct, y = r * st;
      const double r2 = r * r, r3 = r2 * r, r4 = r2 * r2;
      double s = 0.0;
      for (int c = 0; c < u.dim(); ++c) {
        const double hr = u_r.at(i, j, c), hrr = u_rr.at(i, j, c);
        const double ht = u_t.at(i, j, c), htt = u_tt.at(i, j, c);
        const double hrt = u_rt.at(i, j, c);
        const double hxx = hrr * x * x / r2 + hr * y * y / r3 +
                           htt * y * y / r4 + ht * 2.0 * x * y / r4 -
                           2.0 * hrt * x * y / r3;
        const double hyy = hrr * y * y / r2 + hr * x * x / r3 +
                           htt * x * x / r4 - ht * 2.0 * x * y / r4 +
                           2.0 * hrt * x * y / r3;
        const double hxy = hrr * x * y / r2 - hr * x * y / r3 -
                           htt * x * y / r4 + ht * (y * y - x * x) / r4 +
                           hrt * (x * x - y * y) / r3;
        s += hxx * hxx + 2.0 * hxy * hxy + hyy * hyy;
      }
      out.at(i, j) = std::sqrt(s);
    }
  }
  return out;
}

std::complex<double> ModeTable::mode(int ring, int n) const {
  const int k = n >= 0 ? n : n + n_theta;
  return rings[ring][k];
}

ModeTable angular_modes(const Field& v) {
  if (v.dim() != 1)
    throw std::invalid_argument("angular_modes: scalar field required");
  const Grid& g = v.grid();
  ModeTable t;
  t.n_theta = g.n_theta();
  t.rings.resize(g.n_r());
  std::vector<double> ring(g.n_theta());
  for (int i = 0; i < g.n_r(); ++i) {
    for (int j = 0; j < g.n_theta(); ++j) ring[j] = v.at(i, j);
    t.rings[i] = dft_ring(ring);
  }
  return t;
}

Field modes_to_field(const ModeTable& t, GridPtr grid) {
  if (static_cast<int>(t.rings.size()) != grid->n_r() ||
      t.n_theta != grid->n_theta())
    throw std::invalid_argument("modes_to_field: table/grid mismatch");
  Field out(grid, 1);
  for (int i = 0; i < grid->n_r(); ++i) {
    auto ring = idft_ring(t.rings[i]);
    for (int j = 0; j < grid->n_theta(); ++j) out.at(i, j) = ring[j];
  }
  return out;
}

}  // namespace necklab
