#include "necklab/field.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace necklab {

Field::Field(GridPtr grid, int dim, double init)
    : grid_(std::move(grid)), dim_(dim) {
  if (dim_ < 1) throw std::invalid_argument("Field: dim >= 1 required");
  values_.assign(grid_->nodes() * dim_, init);
}

void Field::set_unit_sphere(bool flag) {
  unit_sphere_ = flag;
  if (flag) validate();
}

Field Field::magnitude() const {
  Field out(grid_, 1);
  const int nr = grid_->n_r(), nt = grid_->n_theta();
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nt; ++j) {
      double s = 0.0;
      for (int c = 0; c < dim_; ++c) s += at(i, j, c) * at(i, j, c);
      out.at(i, j) = std::sqrt(s);
    }
  return out;
}

Field Field::component(int c) const {
  if (c < 0 || c >= dim_) throw std::out_of_range("Field::component");
  Field out(grid_, 1);
  const int nr = grid_->n_r(), nt = grid_->n_theta();
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nt; ++j) out.at(i, j) = at(i, j, c);
  return out;
}

bool Field::all_finite() const {
  for (double v : values_)
    if (!std::isfinite(v)) return false;
  return true;
}

void Field::validate(double sphere_tol) const {
  if (!all_finite()) throw std::runtime_error("Field: non-finite values");
  if (unit_sphere_) {
    const int nr = grid_->n_r(), nt = grid_->n_theta();
    for (int i = 0; i < nr; ++i)
      for (int j = 0; j < nt; ++j) {
        double s = 0.0;
        for (int c = 0; c < dim_; ++c) s += at(i, j, c) * at(i, j, c);
        if (std::fabs(std::sqrt(s) - 1.0) > sphere_tol)
          throw std::runtime_error("Field: unit_sphere violated");
      }
  }
}

Field& Field::operator*=(double c) {
  for (double& v : values_) v *= c;
  return *this;
}

Field& Field::operator+=(const Field& other) {
  if (values_.size() != other.values_.size() ||
      !grid_->same_layout(other.grid()))
    throw std::invalid_argument("Field: grid/dim mismatch");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

Field& Field::operator-=(const Field& other) {
  if (values_.size() != other.values_.size() ||
      !grid_->same_layout(other.grid()))
    throw std::invalid_argument("Field: grid/dim mismatch");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

Field operator*(double c, const Field& v) {
  Field out = v;
  out *= c;
  return out;
}

Field operator+(const Field& a, const Field& b) {
  Field out = a;
  out += b;
  return out;
}

Field operator-(const Field& a, const Field& b) {
  Field out = a;
  out -= b;
  return out;
}

Field Field::sample(
    GridPtr grid, int dim,
    const std::function<void(double r, double theta, double* out)>& f) {
  Field out(grid, dim);
  const int nr = grid->n_r(), nt = grid->n_theta();
  std::vector<double> buf(dim);
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nt; ++j) {
      f(grid->radius(i), grid->theta(j), buf.data());
      for (int c = 0; c < dim; ++c) out.at(i, j, c) = buf[c];
    }
  return out;
}

void write_field(std::ostream& os, const Field& v) {
  const Grid& g = v.grid();
  os << std::setprecision(17);
  os << "grid " << g.r_min() << ' ' << g.r_max() << ' ' << g.n_r() << ' '
     << g.n_theta() << ' ' << v.dim() << '\n';
  for (int i = 0; i < g.n_r(); ++i)
    for (int j = 0; j < g.n_theta(); ++j) {
      os << i << ',' << j;
      for (int c = 0; c < v.dim(); ++c) os << ',' << v.at(i, j, c);
      os << '\n';
    }
}

void write_field(const std::string& path, const Field& v) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("write_field: cannot open " + path);
  write_field(os, v);
}

Field read_field(std::istream& is) {
  std::string tag;
  double r_min, r_max;
  int n_r, n_theta, dim;
  if (!(is >> tag >> r_min >> r_max >> n_r >> n_theta >> dim) || tag != "grid")
    throw std::runtime_error("read_field: bad header");
  GridPtr g = (r_min == 0.0) ? Grid::disc(r_max, n_r, n_theta)
                             : Grid::annulus(r_min, r_max, n_r, n_theta);
  Field out(g, dim);
  std::string line;
  std::getline(is, line);  // rest of header line
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    int i, j;
    char comma;
    if (!(ss >> i >> comma >> j)) throw std::runtime_error("read_field: bad row");
    if (i < 0 || i >= n_r || j < 0 || j >= n_theta)
      throw std::runtime_error("read_field: index out of range");
    for (int c = 0; c < dim; ++c) {
      double val;
      if (!(ss >> comma >> val)) throw std::runtime_error("read_field: bad row");
      out.at(i, j, c) = val;
    }
  }
  out.validate();
  return out;
}

Field read_field(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("read_field: cannot open " + path);
  return read_field(is);
}

}  // namespace necklab
