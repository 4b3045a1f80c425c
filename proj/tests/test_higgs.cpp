#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "vortexlab/higgs.hpp"
#include "vortexlab/random_fields.hpp"

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

}  // namespace

TEST_CASE("quadruplet validation") {
  auto q = QuadrupletSpec::zero(8, {0, 1}, {1});
  CHECK_NOTHROW(q.validate());
  CHECK(q.d1() == 1);
  CHECK(!q.coupled());
  q.psi(0, 1, 0) = 1.0;  // O(1) -> O(1), allowed
  CHECK_NOTHROW(q.validate());
  CHECK(q.coupled());
  q.psi(0, 0, 0) = 1.0;  // O(1) -> O, not a periodic field
  CHECK_THROWS_AS(q.validate(), ConstraintError);
  auto bad = QuadrupletSpec::zero(8, {0}, {0});
  bad.phi = Field(8, 2, 1);
  CHECK_THROWS_AS(bad.validate(), ShapeError);
  bad = QuadrupletSpec::zero(8, {0}, {0});
  bad.theta1.set_form(Form::function);
  CHECK_THROWS_AS(bad.validate(), FormError);
}

TEST_CASE("metric checks") {
  MatC m(2, 2);
  m << 1.0, I, 0.0, 1.0;
  CHECK_THROWS_AS(check_metric(Field::constant(4, m)), DomainError);
  m << 1.0, 2.0, 2.0, 1.0;  // eigenvalues 3, -1
  CHECK_THROWS_AS(check_metric(Field::constant(4, m)), DomainError);
  m << 2.0, I, -I, 2.0;
  CHECK_NOTHROW(check_metric(Field::constant(4, m)));
}

TEST_CASE("rank one Chern curvature against the closed form") {
  // h = e^u, Lambda F = -2 pi i d + (i/2) laplace u
  const int n = 32;
  auto u = sample(n, [](double x, double y) { return 0.3 * std::cos(2 * kPi * x) * std::sin(2 * kPi * y); });
  Field h(n, 1, 1);
  for (int p = 0; p < h.points(); ++p) h(p, 0, 0) = std::exp(u(p, 0, 0));
  Field lf = lambda_contract(chern_curvature(h, {3}));
  double err = 0;
  for (int p = 0; p < h.points(); ++p) {
    cplx expect = -2.0 * kPi * I * 3.0 + 0.5 * I * (-8 * kPi * kPi) * u(p, 0, 0);
    err = std::max(err, std::abs(lf(p, 0, 0) - expect));
  }
  CHECK(err < 1e-10);
  // total curvature gives the degree
  CHECK(std::abs(I / (2 * kPi) * integrate(lf) - 3.0) < 1e-12);
}

TEST_CASE("adjoint of a morphism satisfies the defining identity") {
  std::mt19937_64 rng(2);
  const int n = 8;
  Field h1 = random_metric(n, {0, 0}, rng), h2 = random_metric(n, {0, 0, 0}, rng);
  Field f = random_smooth_field(n, 3, 2, rng);
  Field fs = morphism_adjoint(f, h1, h2);
  for (int p : {0, 17, 63}) {
    VecC s = random_matrix(2, 1, rng), t = random_matrix(3, 1, rng);
    // h2(f s, t) = h1(s, f* t) with h(a, b) = b^dagger h a
    cplx lhs = (t.adjoint() * h2.mat(p) * f.mat(p) * s)(0, 0);
    cplx rhs = ((fs.mat(p) * t).adjoint() * h1.mat(p) * s)(0, 0);
    CHECK(std::abs(lhs - rhs) < 1e-12);
  }
}

TEST_CASE("Higgs bracket with the flat metric") {
  MatC t(2, 2);
  t << 0.0, 1.0, 0.0, 0.0;
  Field th = Field::constant(4, t, Form::one_zero);
  Field b = bracket_theta(th, higgs_adjoint(th, Field::identity(4, 2)));
  CHECK(b.form() == Form::one_one);
  MatC expect = t * t.adjoint() - t.adjoint() * t;
  CHECK((b.mat(3) - expect).norm() < 1e-15);
}

TEST_CASE("holomorphy residuals") {
  const int n = 16;
  auto q = QuadrupletSpec::zero(n, {0}, {0});
  q.psi = Field::constant(n, MatC::Constant(1, 1, 1.0));
  CHECK(holomorphy_residuals(q).max() < 1e-14);
  CHECK(composition_residual(q) == 0);
  q.phi = sample(n, [](double x, double) { return std::exp(2 * kPi * I * x); });
  // dbar e^{2 pi i x} = pi i e^{2 pi i x}
  CHECK(std::abs(holomorphy_residuals(q).phi - kPi) < 1e-10);
  CHECK(std::abs(composition_residual(q) - 1.0) < 1e-14);
  // theta2 phi - phi theta1 enters as well
  auto r = QuadrupletSpec::zero(n, {0}, {0});
  r.phi = Field::constant(n, MatC::Constant(1, 1, 1.0));
  r.theta1 = Field::constant(n, MatC::Constant(1, 1, 2.0), Form::one_zero);
  CHECK(std::abs(holomorphy_residuals(r).phi - 2.0) < 1e-14);
}
