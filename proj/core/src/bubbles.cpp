#include "necklab/bubbles.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "necklab/hopf.hpp"
#include "necklab/lorentz.hpp"
#include "necklab/ops.hpp"

namespace necklab {

namespace {

using cplx = std::complex<double>;

int true_degree(const std::vector<cplx>& c) {
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i)
    if (std::abs(c[i]) != 0.0) return i;
  return -1;
}

// |resultant| of the normalized polynomials via the Sylvester matrix
double resultant_magnitude(std::vector<cplx> p, std::vector<cplx> q) {
  const int dp = true_degree(p), dq = true_degree(q);
  if (dp < 0 || dq < 0) return 0.0;
  p.resize(dp + 1);
  q.resize(dq + 1);
  auto normalize = [](std::vector<cplx>& c) {
    double m = 0.0;
    for (const auto& z : c) m = std::max(m, std::abs(z));
    for (auto& z : c) z /= m;
  };
  normalize(p);
  normalize(q);
  if (dp == 0 || dq == 0) return 1.0;  // a nonzero constant shares no root

  const int n = dp + dq;
  std::vector<std::vector<cplx>> m(n, std::vector<cplx>(n, 0.0));
  for (int i = 0; i < dq; ++i)
    for (int j = 0; j <= dp; ++j) m[i][i + j] = p[dp - j];
  for (int i = 0; i < dp; ++i)
    for (int j = 0; j <= dq; ++j) m[dq + i][i + j] = q[dq - j];

  double log_det = 0.0;
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
    if (std::abs(m[piv][c]) == 0.0) return 0.0;
    std::swap(m[c], m[piv]);
    log_det += std::log(std::abs(m[c][c]));
    for (int r = c + 1; r < n; ++r) {
      const cplx f = m[r][c] / m[c][c];
      for (int k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return std::exp(log_det);
}

// stereographic inverse, evaluated in whichever chart of the projective
// pair (p, q) is nondegenerate
std::array<double, 3> stereo(cplx p, cplx q) {
  if (std::abs(q) >= std::abs(p)) {
    const cplx w = p / q;
    const double n = 1.0 + std::norm(w);
    return {2.0 * w.real() / n, 2.0 * w.imag() / n, (std::norm(w) - 1.0) / n};
  }
  const cplx v = q / p;
  const double n = 1.0 + std::norm(v);
  return {2.0 * v.real() / n, -2.0 * v.imag() / n, (1.0 - std::norm(v)) / n};
}

}  // namespace

RationalMap::RationalMap(std::vector<cplx> p, std::vector<cplx> q)
    : p_(std::move(p)), q_(std::move(q)) {
  const int dp = true_degree(p_), dq = true_degree(q_);
  degree_ = std::max(dp, dq);
  if (degree_ < 1)
    throw std::invalid_argument("RationalMap: degree >= 1 required");
  if (resultant_magnitude(p_, q_) < 1e-8)
    throw std::invalid_argument("RationalMap: P, Q share a root (degenerate)");
}

void RationalMap::eval_pair(cplx z, cplx& p, cplx& q, cplx& dp,
                            cplx& dq) const {
  auto horner = [z](const std::vector<cplx>& c, cplx& v, cplx& d) {
    v = 0.0;
    d = 0.0;
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) {
      d = d * z + v;
      v = v * z + c[i];
    }
  };
  horner(p_, p, dp);
  horner(q_, q, dq);
}

std::array<double, 3> RationalMap::value(cplx z) const {
  cplx p, q, dp, dq;
  eval_pair(z, p, q, dp, dq);
  return stereo(p, q);
}

std::array<double, 3> RationalMap::value_at_infinity() const {
  const cplx pd =
      degree_ < static_cast<int>(p_.size()) ? p_[degree_] : cplx(0.0);
  const cplx qd =
      degree_ < static_cast<int>(q_.size()) ? q_[degree_] : cplx(0.0);
  return stereo(pd, qd);
}

void RationalMap::value_and_gradient(cplx z, double u[3],
                                     double grad[3][2]) const {
  cplx p, q, dp, dq;
  eval_pair(z, p, q, dp, dq);
  const cplx wronskian = dp * q - p * dq;

  double a, b, sa, sb;  // chart value s = a + ib and chart derivative
  double sign2, sign3;
  cplx sigma;
  if (std::abs(q) >= std::abs(p)) {
    const cplx s = p / q;
    sigma = wronskian / (q * q);
    a = s.real();
    b = s.imag();
    sign2 = 1.0;
    sign3 = 1.0;
  } else {
    const cplx s = q / p;
    sigma = -wronskian / (p * p);
    a = s.real();
    b = s.imag();
    sign2 = -1.0;
    sign3 = -1.0;
  }
  const double n = 1.0 + a * a + b * b, n2 = n * n;
  u[0] = 2.0 * a / n;
  u[1] = sign2 * 2.0 * b / n;
  u[2] = sign3 * (a * a + b * b - 1.0) / n;

  // d u / d(a, b) in the chart
  const double du_da[3] = {2.0 * (n - 2.0 * a * a) / n2, sign2 * -4.0 * a * b / n2,
                           sign3 * 4.0 * a / n2};
  const double du_db[3] = {-4.0 * a * b / n2, sign2 * 2.0 * (n - 2.0 * b * b) / n2,
                           sign3 * 4.0 * b / n2};
  // holomorphic chain rule: da/dx = Re sigma, db/dx = Im sigma,
  // da/dy = -Im sigma, db/dy = Re sigma
  sa = sigma.real();
  sb = sigma.imag();
  for (int i = 0; i < 3; ++i) {
    grad[i][0] = du_da[i] * sa + du_db[i] * sb;
    grad[i][1] = -du_da[i] * sb + du_db[i] * sa;
  }
}

double RationalMap::energy_density(cplx z) const {
  cplx p, q, dp, dq;
  eval_pair(z, p, q, dp, dq);
  const double w2 = std::norm(dp * q - p * dq);
  const double den = std::norm(p) + std::norm(q);
  return 8.0 * w2 / (den * den);
}

Field bubble_field(const RationalMap& m, GridPtr g) {
  Field u = Field::sample(g, 3, [&m](double r, double t, double* out) {
    const auto v = m.value(std::polar(r, t));
    out[0] = v[0];
    out[1] = v[1];
    out[2] = v[2];
  });
  u.set_unit_sphere(true);
  return u;
}

double dirichlet_energy(const RationalMap& m, const Grid& g) {
  double e = 0.0;
  for (int i = 0; i < g.n_r(); ++i)
    for (int j = 0; j < g.n_theta(); ++j)
      e += 0.5 * m.energy_density(std::polar(g.radius(i), g.theta(j))) *
           g.cell_measure(i);
  return e;
}

namespace {

struct SphereBits {
  CartesianGradient cart;
  Field lap;            // componentwise Laplacian, dim 3
  std::array<Field, 3> omega;
  Field omega_grad;     // (Omega . grad u), dim 3
  Field omega_grad_perp;
};

SphereBits sphere_bits(const Field& u) {
  if (u.dim() != 3 || !u.unit_sphere())
    throw std::invalid_argument("sphere_omega: unit_sphere dim-3 field required");
  u.validate(1e-6);
  const Grid& g = u.grid();
  GridPtr gp = u.grid_ptr();
  SphereBits bits{to_cartesian(polar_gradient(u)),
                  laplacian(u),
                  {Field(gp, 2), Field(gp, 2), Field(gp, 2)},
                  Field(gp, 3),
                  Field(gp, 3)};
  static constexpr int kPair[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  // project the discrete gradient onto the tangent plane of S^2: the
  // algebraic identities below (sum_j u^j grad u^j = 0 in particular) then
  // hold exactly for the stored vectors, not just up to truncation
  for (int i = 0; i < g.n_r(); ++i)
    for (int j = 0; j < g.n_theta(); ++j) {
      double dx = 0.0, dy = 0.0;
      for (int c = 0; c < 3; ++c) {
        dx += u.at(i, j, c) * bits.cart.u_x.at(i, j, c);
        dy += u.at(i, j, c) * bits.cart.u_y.at(i, j, c);
      }
      for (int c = 0; c < 3; ++c) {
        bits.cart.u_x.at(i, j, c) -= u.at(i, j, c) * dx;
        bits.cart.u_y.at(i, j, c) -= u.at(i, j, c) * dy;
      }
    }
  for (int i = 0; i < g.n_r(); ++i)
    for (int j = 0; j < g.n_theta(); ++j) {
      double om[3][3][2];  // full antisymmetric matrix, (i, j, xy)
      for (int e = 0; e < 3; ++e) {
        const int a = kPair[e][0], b = kPair[e][1];
        const double ox = u.at(i, j, a) * bits.cart.u_x.at(i, j, b) -
                          u.at(i, j, b) * bits.cart.u_x.at(i, j, a);
        const double oy = u.at(i, j, a) * bits.cart.u_y.at(i, j, b) -
                          u.at(i, j, b) * bits.cart.u_y.at(i, j, a);
        bits.omega[e].at(i, j, 0) = ox;
        bits.omega[e].at(i, j, 1) = oy;
        om[a][b][0] = ox;
        om[a][b][1] = oy;
        om[b][a][0] = -ox;
        om[b][a][1] = -oy;
      }
      for (int c = 0; c < 3; ++c) om[c][c][0] = om[c][c][1] = 0.0;
      for (int a = 0; a < 3; ++a) {
        double s = 0.0, sp = 0.0;
        for (int b = 0; b < 3; ++b) {
          const double bx = bits.cart.u_x.at(i, j, b);
          const double by = bits.cart.u_y.at(i, j, b);
          s += om[a][b][0] * bx + om[a][b][1] * by;
          sp += om[a][b][0] * (-by) + om[a][b][1] * bx;
        }
        bits.omega_grad.at(i, j, a) = s;
        bits.omega_grad_perp.at(i, j, a) = sp;
      }
    }
  return bits;
}

}  // namespace

OmegaReport sphere_omega(const Field& u) {
  SphereBits bits = sphere_bits(u);
  const Grid& g = u.grid();
  Field res(u.grid_ptr(), 3), mag(u.grid_ptr(), 1);
  double perp_max = 0.0;
  for (int i = 0; i < g.n_r(); ++i)
    for (int j = 0; j < g.n_theta(); ++j) {
      double m2 = 0.0, p2 = 0.0;
      for (int a = 0; a < 3; ++a) {
        res.at(i, j, a) = bits.lap.at(i, j, a) + bits.omega_grad.at(i, j, a);
        p2 += bits.omega_grad_perp.at(i, j, a) *
              bits.omega_grad_perp.at(i, j, a);
      }
      for (int e = 0; e < 3; ++e)
        m2 += 2.0 * (bits.omega[e].at(i, j, 0) * bits.omega[e].at(i, j, 0) +
                     bits.omega[e].at(i, j, 1) * bits.omega[e].at(i, j, 1));
      mag.at(i, j) = std::sqrt(m2);
      perp_max = std::max(perp_max, std::sqrt(p2));
    }
  OmegaReport rep{std::move(bits.omega), std::move(mag), 0.0, perp_max, 0.0};
  rep.res_pde_l1 = integrate(res.magnitude());
  rep.res_perp_l1 = integrate(bits.omega_grad_perp.magnitude());
  return rep;
}

double BubbleSpec::scale(int k) const { return t0 * std::pow(rate, k); }

double separation_quantity(const std::vector<BubbleSpec>& bubbles, int k) {
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < bubbles.size(); ++a)
    for (std::size_t b = a + 1; b < bubbles.size(); ++b) {
      const double t = bubbles[a].scale(k), tp = bubbles[b].scale(k);
      const double d = std::hypot(bubbles[a].cx - bubbles[b].cx,
                                  bubbles[a].cy - bubbles[b].cy);
      worst = std::min(worst, std::max({t / tp, tp / t, d / (t + tp)}));
    }
  return worst;
}

SequenceEvaluator::SequenceEvaluator(std::array<double, 3> body_point,
                                     std::vector<BubbleSpec> bubbles, int k)
    : body_(body_point), bubbles_(std::move(bubbles)), k_(k) {
  for (const auto& b : bubbles_) {
    omega_inf_.push_back(b.map.value_at_infinity());
    t_.push_back(b.scale(k));
    if (!(t_.back() > 0.0))
      throw std::invalid_argument("SequenceEvaluator: nonpositive scale");
  }
}

bool SequenceEvaluator::eval(double x, double y, double u[3],
                             double grad[3][2]) const {
  double sum[3] = {body_[0], body_[1], body_[2]};
  double gsum[3][2] = {{0, 0}, {0, 0}, {0, 0}};
  for (std::size_t b = 0; b < bubbles_.size(); ++b) {
    const double t = t_[b];
    const cplx z((x - bubbles_[b].cx) / t, (y - bubbles_[b].cy) / t);
    double ub[3], gb[3][2];
    bubbles_[b].map.value_and_gradient(z, ub, gb);
    for (int i = 0; i < 3; ++i) {
      sum[i] += ub[i] - omega_inf_[b][i];
      gsum[i][0] += gb[i][0] / t;
      gsum[i][1] += gb[i][1] / t;
    }
  }
  const double n = std::sqrt(sum[0] * sum[0] + sum[1] * sum[1] + sum[2] * sum[2]);
  if (n < 1e-6) return false;
  for (int i = 0; i < 3; ++i) u[i] = sum[i] / n;
  for (int d = 0; d < 2; ++d) {
    double proj = 0.0;
    for (int i = 0; i < 3; ++i) proj += u[i] * gsum[i][d];
    for (int i = 0; i < 3; ++i) grad[i][d] = (gsum[i][d] - u[i] * proj) / n;
  }
  return true;
}

double SequenceEvaluator::grad_norm(double x, double y) const {
  double u[3], g[3][2];
  if (!eval(x, y, u, g))
    throw std::runtime_error("SequenceEvaluator: projection undefined");
  double s = 0.0;
  for (int i = 0; i < 3; ++i) s += g[i][0] * g[i][0] + g[i][1] * g[i][1];
  return std::sqrt(s);
}

Field constant_body(GridPtr g, std::array<double, 3> p) {
  Field body(g, 3);
  for (int i = 0; i < g->n_r(); ++i)
    for (int j = 0; j < g->n_theta(); ++j)
      for (int c = 0; c < 3; ++c) body.at(i, j, c) = p[c];
  if (std::fabs(std::hypot(p[0], std::hypot(p[1], p[2])) - 1.0) < 1e-12)
    body.set_unit_sphere(true);
  return body;
}

SynthResult synthesize_sequence(const Field& body,
                                const std::vector<BubbleSpec>& bubbles, int k,
                                double origin_x, double origin_y) {
  if (body.dim() != 3)
    throw std::invalid_argument("synthesize_sequence: dim-3 body required");
  const Grid& g = body.grid();
  GridPtr gp = body.grid_ptr();

  std::vector<std::array<double, 3>> winf;
  std::vector<double> ts;
  for (const auto& b : bubbles) {
    winf.push_back(b.map.value_at_infinity());
    ts.push_back(b.scale(k));
  }

  Field u(gp, 3);
  for (int i = 0; i < g.n_r(); ++i)
    for (int j = 0; j < g.n_theta(); ++j) {
      const double x = origin_x + g.radius(i) * std::cos(g.theta(j));
      const double y = origin_y + g.radius(i) * std::sin(g.theta(j));
      double sum[3] = {body.at(i, j, 0), body.at(i, j, 1), body.at(i, j, 2)};
      for (std::size_t b = 0; b < bubbles.size(); ++b) {
        const auto v = bubbles[b].map.value(
            cplx((x - bubbles[b].cx) / ts[b], (y - bubbles[b].cy) / ts[b]));
        for (int c = 0; c < 3; ++c) sum[c] += v[c] - winf[b][c];
      }
      const double n =
          std::sqrt(sum[0] * sum[0] + sum[1] * sum[1] + sum[2] * sum[2]);
      if (n < 1e-6)
        throw std::runtime_error(
            "synthesize_sequence: projection undefined at this index");
      for (int c = 0; c < 3; ++c) u.at(i, j, c) = sum[c] / n;
    }
  u.set_unit_sphere(true);

  SphereBits bits = sphere_bits(u);
  Field f(gp, 3);
  for (int i = 0; i < g.n_r(); ++i)
    for (int j = 0; j < g.n_theta(); ++j)
      for (int c = 0; c < 3; ++c)
        f.at(i, j, c) = -bits.lap.at(i, j, c) - bits.omega_grad.at(i, j, c);

  SynthReport rep;
  Field fm = f.magnitude();
  rep.f_LlogL = norm_LlogL(fm);
  rep.f_L2 = norm_L2_layercake(fm);
  rep.sqrt_phi_L21 = norm_L21(sqrt_abs_phi(hopf_differential(u)));
  rep.separation = separation_quantity(bubbles, k);
  return {std::move(u), std::move(f), rep};
}

}  // namespace necklab
