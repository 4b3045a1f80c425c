#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "vortexlab/random_fields.hpp"
#include "vortexlab/vortex.hpp"

using namespace vx;

namespace {

constexpr double kPi = 3.14159265358979323846;
const cplx I(0, 1);

QuadrupletSpec psi_entry(int n) {
  auto q = QuadrupletSpec::zero(n, {0}, {0});
  q.psi = Field::constant(n, MatC::Constant(1, 1, 1.0));
  return q;
}

QuadrupletSpec phi_entry(int n) {
  auto q = QuadrupletSpec::zero(n, {0}, {0});
  q.phi = Field::constant(n, MatC::Constant(1, 1, 1.0));
  return q;
}

}  // namespace

TEST_CASE("constants satisfy the linear relations") {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> rk(1, 4), dg(-5, 5), num(-20, 20), den(1, 7);
  for (int k = 0; k < 200; ++k) {
    int r1 = rk(rng), r2 = rk(rng), d1 = dg(rng), d2 = dg(rng);
    Rational tau(num(rng), den(rng));
    auto c = constants_from_tau(tau, r1, r2, d1, d2);
    // r1 tau + r2 tau' = d1 + d2 and sigma = tau - tau'
    CHECK(Rational(r1) * c.tau + Rational(r2) * c.tau_prime == Rational(d1 + d2));
    CHECK(c.sigma == c.tau - c.tau_prime);
    CHECK(tau_from_sigma(c.sigma, r1, r2, d1, d2) == tau);
    CHECK(constants_from_sigma(c.sigma, r1, r2, d1, d2).tau == tau);
    if (c.sigma_positive) {
      // lambda = -4 pi i tau / sigma
      cplx expect = -4.0 * kPi * I * c.tau_d() / c.sigma_d();
      CHECK(std::abs(c.lambda_he - expect) < 1e-10 * std::max(1.0, std::abs(expect)));
    }
  }
  auto c = constants_from_sigma(Rational(2), 1, 1, 0, 0);
  CHECK(c.tau == Rational(1));
  CHECK(c.tau_prime == Rational(-1));
  CHECK(std::abs(c.lambda_he + 2.0 * kPi * I) < 1e-14);
  CHECK_THROWS(constants_from_tau(Rational(1), 0, 1, 0, 0));
}

TEST_CASE("sign option parsing") {
  CHECK(coupling_signs_from_string("reduction") == CouplingSigns::reduction);
  CHECK(coupling_signs_from_string("literal") == CouplingSigns::literal);
  CHECK_THROWS(coupling_signs_from_string("other"));
  CHECK(std::string(to_string(CouplingSigns::literal)) == "literal");
}

TEST_CASE("trace identity over random admissible configurations") {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> num(-9, 9);
  double worst = 0, wrong = 1e300;
  for (int k = 0; k < 100; ++k) {
    const int n = 16;
    std::vector<int> deg1 = {k % 3, 1}, deg2 = {1};
    auto q = QuadrupletSpec::zero(n, deg1, deg2);
    q.theta1 = random_smooth_field(n, 2, 2, rng, 1, 0.5, Form::one_zero);
    for (int p = 0; p < n * n; ++p)
      if (deg1[0] != 1) q.theta1(p, 0, 1) = q.theta1(p, 1, 0) = 0;
    q.phi = random_smooth_field(n, 1, 2, rng, 1, 0.5);
    q.psi = random_smooth_field(n, 2, 1, rng, 1, 0.5);
    for (int p = 0; p < n * n; ++p)
      if (deg1[0] != 1) q.phi(p, 0, 0) = q.psi(p, 0, 0) = 0;
    MetricPair h{random_metric(n, deg1, rng), random_metric(n, deg2, rng)};
    auto c = constants_from_tau(Rational(num(rng), 3), 2, 1, q.d1(), q.d2());
    for (auto s : {CouplingSigns::reduction, CouplingSigns::literal})
      worst = std::max(worst, trace_identity_check(q, h, c, s));
    // the opposite sign of tau' breaks it
    VortexConstants bad = c;
    bad.tau_prime = -c.tau_prime;
    if (c.tau_prime != 0) wrong = std::min(wrong, trace_identity_check(q, h, bad));
  }
  CHECK(worst <= 1e-8);
  CHECK(wrong > 1e-3);
}

TEST_CASE("flat decoupled data solve trivially") {
  auto q = QuadrupletSpec::zero(16, {0}, {0});
  auto c = constants_from_tau(Rational(0), 1, 1, 0, 0);
  auto r = residual(q, MetricPair::identity(q), c);
  CHECK(sup_norm(r.R1) < 1e-14);
  CHECK(sup_norm(r.R2) < 1e-14);
  CHECK(is_solution(q, MetricPair::identity(q), c, 1e-12).ok);
}

TEST_CASE("psi entry converges to the closed-form constant metric") {
  const int n = 32;
  auto q = psi_entry(n);
  auto c = constants_from_sigma(Rational(2), 1, 1, 0, 0);
  SolveOptions o;
  o.target = 1e-10;
  auto [h, rep] = solve(q, c, o);
  CHECK(rep.converged);
  CHECK(std::max(rep.sup_R1, rep.sup_R2) <= 1e-8);
  // |psi|^2 h1/h2 = 2 pi tau and, after the joint gauge fix, h1 h2 = 1
  const double h1 = h.h1(5, 0, 0).real(), h2 = h.h2(5, 0, 0).real();
  CHECK(std::abs(h1 / h2 - 2 * kPi) < 1e-8);
  CHECK(std::abs(h1 * h2 - 1) < 1e-10);
  CHECK(std::abs(psi_norm_integral(q, h) - 2 * kPi * c.tau_d()) < 1e-6);
  CHECK(is_solution(q, h, c, 1e-8).ok);
  CHECK(rep.history.front().iteration == 0);
  CHECK(int(rep.history.size()) == rep.iterations + 1);
}

TEST_CASE("solver recovers from a random initial metric") {
  const int n = 16;
  std::mt19937_64 rng(4);
  auto q = psi_entry(n);
  auto c = constants_from_sigma(Rational(3), 1, 1, 0, 0);
  MetricPair h0{random_metric(n, {0}, rng), random_metric(n, {0}, rng)};
  SolveOptions o;
  o.target = 1e-10;
  auto [h, rep] = solve(q, c, o, &h0);
  CHECK(rep.converged);
  CHECK(std::abs(psi_norm_integral(q, h) - 2 * kPi * c.tau_d()) < 1e-6);
}

TEST_CASE("phi entry: no solution with the reduction signs") {
  const int n = 16;
  auto q = phi_entry(n);
  auto c = constants_from_sigma(Rational(2), 1, 1, 0, 0);
  SolveOptions o;
  o.max_iter = 3000;
  auto [h, rep] = solve(q, c, o);
  CHECK(!rep.converged);
  CHECK(rep.sup_R1 > 1.0);
  // the obstruction is the integrated identity int|phi|^2 = -2 pi tau < 0
  CHECK(!is_solution(q, h, c, 1e-3).ok);
}

TEST_CASE("phi entry with the literal signs") {
  const int n = 16;
  auto q = phi_entry(n);
  auto c = constants_from_sigma(Rational(2), 1, 1, 0, 0);
  // constant solution h2/h1 = 2 pi tau, h1 h2 = 1
  const double h1 = 1 / std::sqrt(2 * kPi), h2 = std::sqrt(2 * kPi);
  MetricPair h{Field::constant(n, MatC::Constant(1, 1, h1)), Field::constant(n, MatC::Constant(1, 1, h2))};
  CHECK(is_solution(q, h, c, 1e-12, CouplingSigns::literal).ok);
  CHECK(!is_solution(q, h, c, 1e-3, CouplingSigns::reduction).ok);
  CHECK(std::abs(phi_norm_integral(q, h) - 2 * kPi) < 1e-12);
  // that solution repels the flow: x = log(h2/h1) obeys x' = 2(e^x - 2 pi)
  SolveOptions o;
  o.signs = CouplingSigns::literal;
  o.max_iter = 500;
  CHECK(!solve(q, c, o).second.converged);
}

TEST_CASE("solver is deterministic") {
  auto q = psi_entry(16);
  auto c = constants_from_sigma(Rational(2), 1, 1, 0, 0);
  auto a = solve(q, c, SolveOptions{}).second, b = solve(q, c, SolveOptions{}).second;
  REQUIRE(a.history.size() == b.history.size());
  for (std::size_t i = 0; i < a.history.size(); ++i) {
    CHECK(a.history[i].sup_R1 == b.history[i].sup_R1);
    CHECK(a.history[i].sup_R2 == b.history[i].sup_R2);
  }
}

TEST_CASE("metric shape errors") {
  auto q = psi_entry(8);
  auto c = constants_from_sigma(Rational(2), 1, 1, 0, 0);
  MetricPair h{Field::identity(8, 2), Field::identity(8, 1)};
  CHECK_THROWS_AS(residual(q, h, c), ShapeError);
}
