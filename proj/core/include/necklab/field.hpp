#pragma once

#include <complex>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "necklab/grid.hpp"

namespace necklab {

// Node samples of an R^dim-valued function on a polar grid. A complex scalar
// is stored as dim = 2 (re, im). Treated as immutable once built; all
// operations return new fields.
class Field {
 public:
  Field(GridPtr grid, int dim, double init = 0.0);

  const Grid& grid() const { return *grid_; }
  GridPtr grid_ptr() const { return grid_; }
  int dim() const { return dim_; }
  bool unit_sphere() const { return unit_sphere_; }
  void set_unit_sphere(bool flag);

  double at(int i, int j, int c = 0) const {
    return values_[(grid_->index(i, j)) * dim_ + c];
  }
  double& at(int i, int j, int c = 0) {
    return values_[(grid_->index(i, j)) * dim_ + c];
  }
  std::complex<double> cplx(int i, int j) const {
    return {at(i, j, 0), at(i, j, 1)};
  }
  void set_cplx(int i, int j, std::complex<double> z) {
    at(i, j, 0) = z.real();
    at(i, j, 1) = z.imag();
  }

  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

  // |v| nodewise (euclidean over components); dim-1 result.
  Field magnitude() const;
  Field component(int c) const;

  bool all_finite() const;
  // Throws if values are non-finite, or |v| deviates from 1 beyond tol when
  // the unit_sphere flag is set.
  void validate(double sphere_tol = 1e-8) const;

  Field& operator*=(double c);
  Field& operator+=(const Field& other);
  Field& operator-=(const Field& other);

  static Field sample(GridPtr grid, int dim,
                      const std::function<void(double r, double theta, double* out)>& f);

 private:
  GridPtr grid_;
  int dim_;
  bool unit_sphere_ = false;
  std::vector<double> values_;
};

Field operator*(double c, const Field& v);
Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);

// Text format: header "grid r_min r_max N_r N_theta dim", then node-major
// CSV rows "i_r,i_theta,v_1,...,v_dim".
void write_field(std::ostream& os, const Field& v);
void write_field(const std::string& path, const Field& v);
Field read_field(std::istream& is);
Field read_field(const std::string& path);

}  // namespace necklab
