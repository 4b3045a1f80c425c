#ifndef VORTEXLAB_FIELD_HPP
#define VORTEXLAB_FIELD_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace vx {

using cplx = std::complex<double>;
using MatC = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using VecC = Eigen::Matrix<cplx, Eigen::Dynamic, 1>;
using MapC = Eigen::Map<MatC>;
using CMapC = Eigen::Map<const MatC>;

// Coefficient relative to 1, dz, dz-bar, dz^dz-bar.
enum class Form { function, one_zero, zero_one, one_one };

const char* form_name(Form f);

struct FormError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ShapeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Flat square torus C/(Z+iZ), sampled at (i/n, j/n).  Area is 1, so
// omega = dx^dy integrates to 1 with no extra factor.
struct TorusGrid {
  int n = 0;

  explicit TorusGrid(int n_);
  double spacing() const { return 1.0 / n; }
  int points() const { return n * n; }
  double x(int p) const { return double(p / n) / n; }
  double y(int p) const { return double(p % n) / n; }
  // quadrature weight per point against omega
  double kahler_normalization() const { return 1.0 / (double(n) * n); }
};

// Matrix-valued field, layout [point][row][col], point = ix*n + iy.
class Field {
 public:
  Field() = default;
  Field(int n, int rows, int cols, Form form = Form::function);

  static Field constant(int n, const MatC& m, Form form = Form::function);
  static Field identity(int n, int rank);

  int n() const { return n_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int points() const { return n_ * n_; }
  int block() const { return rows_ * cols_; }
  Form form() const { return form_; }
  void set_form(Form f) { form_ = f; }

  cplx* data() { return v_.data(); }
  const cplx* data() const { return v_.data(); }
  std::size_t size() const { return v_.size(); }

  MapC mat(int p) { return MapC(v_.data() + std::size_t(p) * block(), rows_, cols_); }
  CMapC mat(int p) const { return CMapC(v_.data() + std::size_t(p) * block(), rows_, cols_); }
  cplx& operator()(int p, int r, int c) { return v_[std::size_t(p) * block() + r * cols_ + c]; }
  cplx operator()(int p, int r, int c) const { return v_[std::size_t(p) * block() + r * cols_ + c]; }

  Field& operator+=(const Field& o);
  Field& operator-=(const Field& o);
  Field& operator*=(cplx s);

 private:
  int n_ = 0, rows_ = 0, cols_ = 0;
  Form form_ = Form::function;
  std::vector<cplx> v_;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(cplx s, Field a);

void require_same_shape(const Field& a, const Field& b, const char* what);

// pointwise algebra
Field mul(const Field& a, const Field& b);
Field dagger(const Field& a);  // conjugate transpose of the coefficient
Field inverse(const Field& a);
Field hermitian_part(const Field& a);

// spectral calculus; inputs must be functions
Field dx(const Field& f);
Field dy(const Field& f);
Field dbar(const Field& f);  // coefficient of dz-bar
Field del(const Field& f);   // coefficient of dz
Field laplace(const Field& f);

// exterior-style helpers used by the curvature code
Field dbar_of_one_zero(const Field& a);  // dbar(a dz), coefficient of dz^dz-bar
Field wedge_dz_dzbar(const Field& a10, const Field& b01);  // a dz ^ b dz-bar

cplx integrate(const Field& f, int r = 0, int c = 0);
cplx integrate_trace(const Field& f);
Field lambda_contract(const Field& f);
Field omega_form(int n);  // omega = (i/2) dz^dz-bar
Field times_omega(const Field& f);

double sup_norm(const Field& f);  // max over points of the Frobenius norm
double sup_abs_entry(const Field& f);

}  // namespace vx

#endif
