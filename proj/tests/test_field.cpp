#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "vortexlab/field.hpp"

using namespace vx;

namespace {

constexpr double kPi = 3.14159265358979323846;
const cplx I(0, 1);

template <class F>
Field sample(int n, F f) {
  Field g(n, 1, 1);
  for (int p = 0; p < g.points(); ++p) g(p, 0, 0) = f(double(p / n) / n, double(p % n) / n);
  return g;
}

double max_diff(const Field& a, const Field& b) { return sup_abs_entry(a - b); }

}  // namespace

TEST_CASE("spectral derivatives match closed forms") {
  const int n = 32;
  auto f = sample(n, [](double x, double y) { return std::sin(2 * kPi * x) * std::cos(4 * kPi * y); });
  auto fx = sample(n, [](double x, double y) { return 2 * kPi * std::cos(2 * kPi * x) * std::cos(4 * kPi * y); });
  auto fy = sample(n, [](double x, double y) { return -4 * kPi * std::sin(2 * kPi * x) * std::sin(4 * kPi * y); });
  CHECK(max_diff(dx(f), fx) < 1e-11);
  CHECK(max_diff(dy(f), fy) < 1e-11);
  // laplace = -(4 pi^2)(1 + 4) f
  CHECK(max_diff(laplace(f), -20 * kPi * kPi * f) < 1e-9);
}

TEST_CASE("dbar and del of a plane wave") {
  const int n = 16;
  auto e = sample(n, [](double x, double y) { return std::exp(2 * kPi * I * (x + 2 * y)); });
  // dbar = (d_x + i d_y)/2, del = (d_x - i d_y)/2
  cplx sb = 0.5 * (2.0 * kPi * I + I * 4.0 * kPi * I), sd = 0.5 * (2.0 * kPi * I - I * 4.0 * kPi * I);
  Field db = dbar(e), dl = del(e);
  CHECK(db.form() == Form::zero_one);
  CHECK(dl.form() == Form::one_zero);
  db.set_form(Form::function);
  dl.set_form(Form::function);
  CHECK(max_diff(db, sb * e) < 1e-11);
  CHECK(max_diff(dl, sd * e) < 1e-11);
}

TEST_CASE("Nyquist mode is dropped by first derivatives") {
  const int n = 8;
  auto f = sample(n, [n](double x, double) { return std::cos(kPi * n * x); });
  CHECK(sup_abs_entry(dx(f)) < 1e-12);
  CHECK(sup_abs_entry(laplace(f)) > 1.0);
}

TEST_CASE("integration and contraction") {
  const int n = 16;
  CHECK(std::abs(integrate(Field::constant(n, MatC::Constant(1, 1, 3.0))) - 3.0) < 1e-14);
  auto s = sample(n, [](double x, double y) { return std::sin(2 * kPi * x) + std::cos(2 * kPi * y); });
  CHECK(std::abs(integrate(s)) < 1e-14);
  // Lambda omega = 1
  Field w = lambda_contract(omega_form(n));
  CHECK(std::abs(w(3, 0, 0) - 1.0) < 1e-15);
  CHECK(std::abs(integrate_trace(Field::identity(n, 3)) - 3.0) < 1e-14);
  Field f = Field::constant(n, MatC::Constant(1, 1, 2.0));
  CHECK_THROWS_AS(lambda_contract(f), FormError);
  CHECK(std::abs(lambda_contract(times_omega(f))(0, 0, 0) - 2.0) < 1e-15);
}

TEST_CASE("pointwise algebra") {
  const int n = 4;
  MatC a(2, 2), b(2, 1);
  a << 1.0, I, 2.0, 3.0;
  b << 1.0, -I;
  Field A = Field::constant(n, a), B = Field::constant(n, b);
  CHECK((mul(A, B).mat(5) - a * b).norm() < 1e-15);
  CHECK((mul(A, inverse(A)).mat(2) - MatC::Identity(2, 2)).norm() < 1e-14);
  CHECK_THROWS_AS(mul(B, A), ShapeError);
  Field T = Field::constant(n, a, Form::one_zero);
  CHECK(dagger(T).form() == Form::zero_one);
  CHECK((dagger(T).mat(0) - a.adjoint()).norm() == 0);
  CHECK_THROWS_AS(mul(T, T), FormError);
  CHECK((hermitian_part(A).mat(0) - 0.5 * (a + a.adjoint())).norm() < 1e-15);
  CHECK_THROWS_AS(Field(0, 1, 1), std::invalid_argument);
}

TEST_CASE("dbar of a (1,0)-form carries the wedge sign") {
  const int n = 16;
  auto e = sample(n, [](double x, double) { return std::exp(2 * kPi * I * x); });
  Field a = e;
  a.set_form(Form::one_zero);
  // dbar(a dz) = dbar(a) dzbar^dz = -dbar(a) dz^dzbar
  Field d = dbar_of_one_zero(a);
  CHECK(d.form() == Form::one_one);
  d.set_form(Form::function);
  CHECK(max_diff(d, -(kPi * I) * e) < 1e-11);
}
