#include "vortexlab/field.hpp"

#include <cmath>

#include "vortexlab/kernels.hpp"

namespace vx {

const char* form_name(Form f) {
  switch (f) {
    case Form::function: return "function";
    case Form::one_zero: return "(1,0)-form";
    case Form::zero_one: return "(0,1)-form";
    case Form::one_one: return "(1,1)-form";
  }
  return "?";
}

TorusGrid::TorusGrid(int n_) : n(n_) {
  if (n < 4 || n % 2 != 0) throw std::invalid_argument("grid size must be even and >= 4");
}

Field::Field(int n, int rows, int cols, Form form)
    : n_(n), rows_(rows), cols_(cols), form_(form),
      v_(std::size_t(n) * n * rows * cols, cplx(0)) {
  if (n < 4 || n % 2 != 0) throw std::invalid_argument("grid size must be even and >= 4");
  if (rows < 1 || cols < 1) throw ShapeError("field ranks must be positive");
}

Field Field::constant(int n, const MatC& m, Form form) {
  Field f(n, int(m.rows()), int(m.cols()), form);
  for (int p = 0; p < f.points(); ++p) f.mat(p) = m;
  return f;
}

Field Field::identity(int n, int rank) { return constant(n, MatC::Identity(rank, rank)); }

void require_same_shape(const Field& a, const Field& b, const char* what) {
  if (a.n() != b.n() || a.rows() != b.rows() || a.cols() != b.cols())
    throw ShapeError(std::string(what) + ": shape mismatch");
}

Field& Field::operator+=(const Field& o) {
  require_same_shape(*this, o, "add");
  if (form_ != o.form_) throw FormError("add: form type mismatch");
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
  return *this;
}

Field& Field::operator-=(const Field& o) {
  require_same_shape(*this, o, "subtract");
  if (form_ != o.form_) throw FormError("subtract: form type mismatch");
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
  return *this;
}

Field& Field::operator*=(cplx s) {
  for (auto& x : v_) x *= s;
  return *this;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(cplx s, Field a) { return a *= s; }

Field mul(const Field& a, const Field& b) {
  if (a.n() != b.n() || a.cols() != b.rows()) throw ShapeError("mul: shape mismatch");
  Form f = a.form() == Form::function ? b.form() : a.form();
  if (a.form() != Form::function && b.form() != Form::function)
    throw FormError("mul: use the wedge helpers for two forms");
  Field c(a.n(), a.rows(), b.cols(), f);
  kernels::pointwise_matmul(a.data(), b.data(), c.data(), a.points(), a.rows(), a.cols(), b.cols(),
                            kernels::default_exec());
  return c;
}

Field dagger(const Field& a) {
  Form f = a.form();
  if (f == Form::one_zero) f = Form::zero_one;
  else if (f == Form::zero_one) f = Form::one_zero;
  Field c(a.n(), a.cols(), a.rows(), f);
  for (int p = 0; p < a.points(); ++p) c.mat(p) = a.mat(p).adjoint();
  return c;
}

Field inverse(const Field& a) {
  if (a.rows() != a.cols()) throw ShapeError("inverse: not square");
  Field c(a.n(), a.rows(), a.cols(), a.form());
#pragma omp parallel for schedule(static)
  for (int p = 0; p < a.points(); ++p) c.mat(p) = a.mat(p).inverse();
  return c;
}

Field hermitian_part(const Field& a) {
  if (a.rows() != a.cols()) throw ShapeError("hermitian_part: not square");
  Field c(a.n(), a.rows(), a.cols(), a.form());
  for (int p = 0; p < a.points(); ++p) c.mat(p) = 0.5 * (a.mat(p) + a.mat(p).adjoint());
  return c;
}

namespace {

Field apply_symbol(const Field& f, const std::vector<cplx>& s, Form out) {
  if (f.form() != Form::function)
    throw FormError(std::string("derivative expects a function, got ") + form_name(f.form()));
  Field g(f.n(), f.rows(), f.cols(), out);
  kernels::spectral_apply(f.data(), g.data(), f.n(), f.block(), s, kernels::default_exec());
  return g;
}

}  // namespace

Field dx(const Field& f) { return apply_symbol(f, kernels::symbol_dx(f.n()), Form::function); }
Field dy(const Field& f) { return apply_symbol(f, kernels::symbol_dy(f.n()), Form::function); }
Field dbar(const Field& f) { return apply_symbol(f, kernels::symbol_dbar(f.n()), Form::zero_one); }
Field del(const Field& f) { return apply_symbol(f, kernels::symbol_del(f.n()), Form::one_zero); }
Field laplace(const Field& f) {
  return apply_symbol(f, kernels::symbol_laplace(f.n()), Form::function);
}

Field dbar_of_one_zero(const Field& a) {
  if (a.form() != Form::one_zero) throw FormError("dbar_of_one_zero expects a (1,0)-form");
  Field g = a;
  g.set_form(Form::function);
  Field d = dbar(g);
  // dbar(a dz) = a_zbar dzbar^dz = -a_zbar dz^dzbar
  d *= -1.0;
  d.set_form(Form::one_one);
  return d;
}

Field wedge_dz_dzbar(const Field& a10, const Field& b01) {
  if (a10.form() != Form::one_zero || b01.form() != Form::zero_one)
    throw FormError("wedge_dz_dzbar expects a (1,0) and a (0,1) form");
  Field a = a10, b = b01;
  a.set_form(Form::function);
  b.set_form(Form::function);
  Field c = mul(a, b);
  c.set_form(Form::one_one);
  return c;
}

cplx integrate(const Field& f, int r, int c) {
  cplx s = 0;
  for (int p = 0; p < f.points(); ++p) s += f(p, r, c);
  return s / double(f.points());
}

cplx integrate_trace(const Field& f) {
  if (f.rows() != f.cols()) throw ShapeError("integrate_trace: not square");
  cplx s = 0;
  for (int p = 0; p < f.points(); ++p) s += f.mat(p).trace();
  return s / double(f.points());
}

// omega = dx^dy = (i/2) dz^dzbar, so Lambda(g dz^dzbar) = -2i g
Field lambda_contract(const Field& f) {
  if (f.form() != Form::one_one)
    throw FormError(std::string("lambda_contract expects a (1,1)-form, got ") + form_name(f.form()));
  Field g = f;
  g *= cplx(0, -2);
  g.set_form(Form::function);
  return g;
}

Field omega_form(int n) {
  Field w = Field::constant(n, MatC::Constant(1, 1, cplx(0, 0.5)), Form::one_one);
  return w;
}

Field times_omega(const Field& f) {
  if (f.form() != Form::function) throw FormError("times_omega expects a function");
  Field g = f;
  g *= cplx(0, 0.5);
  g.set_form(Form::one_one);
  return g;
}

double sup_norm(const Field& f) {
  double m = 0;
  for (int p = 0; p < f.points(); ++p) m = std::max(m, f.mat(p).norm());
  return m;
}

double sup_abs_entry(const Field& f) {
  double m = 0;
  for (std::size_t i = 0; i < f.size(); ++i) m = std::max(m, std::abs(f.data()[i]));
  return m;
}

}  // namespace vx
