#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "vortexlab/hyperkahler.hpp"
#include "vortexlab/random_fields.hpp"
#include "vortexlab/vortex.hpp"

using namespace vx;

TEST_CASE("quaternion relations and metric invariance") {
  std::mt19937_64 rng(12);
  auto x = random_configuration(16, {0, 1}, {1}, rng);
  double worst = 0;
  for (int k = 0; k < 30; ++k) {
    auto a = random_tangent(x, rng), b = random_tangent(x, rng);
    worst = std::max(worst, quaternion_check(a, b).max());
    CHECK(metric_g(a, a) > 0);
    for (auto s : {Structure::I, Structure::J, Structure::K})
      CHECK(std::abs(omega(s, a, b) + omega(s, b, a)) < 1e-12 * (1 + std::abs(omega(s, a, b))));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("J swaps the coupling slots") {
  std::mt19937_64 rng(2);
  auto x = random_configuration(8, {0}, {0}, rng);
  auto a = zero_tangent(x);
  a.f = random_smooth_field(8, 1, 1, rng);
  auto expect = zero_tangent(x);
  expect.g_dir = dagger(a.f);
  CHECK(tangent_distance(apply_J(a), expect) < 1e-15);
  // and I multiplies it by i
  auto ia = zero_tangent(x);
  ia.f = cplx(0, 1) * a.f;
  CHECK(tangent_distance(apply_I(a), ia) < 1e-15);
}

TEST_CASE("moment map property") {
  std::mt19937_64 rng(31);
  auto x = random_configuration(16, {0, 0}, {1}, rng);
  for (int k = 0; k < 5; ++k) {
    auto a = random_tangent(x, rng);
    auto xi = random_gauge_direction(x, rng);
    auto m = moment_map_property_check(x, a, xi);
    CHECK(m.error <= 1e-6);
    CHECK(std::abs(m.lhs) > 1e-6);  // not trivially zero
  }
  GaugeDirection zero{Field(16, 2, 2), Field(16, 1, 1)};
  auto m0 = moment_map_property_check(x, random_tangent(x, rng), zero);
  CHECK(std::abs(m0.lhs) < 1e-14);
  CHECK(std::abs(m0.rhs) < 1e-14);
}

TEST_CASE("mu_I is gauge equivariant") {
  std::mt19937_64 rng(44);
  auto x = random_configuration(32, {0, 1}, {0}, rng);
  for (int k = 0; k < 3; ++k) CHECK(equivariance_check(x, random_gauge_direction(x, rng)) <= 1e-10);
  // trivial gauge transformation changes nothing
  auto y = gauge_transform(x, Field::identity(32, 2), Field::identity(32, 1));
  auto a = moment_mu_I(x), b = moment_mu_I(y);
  CHECK(sup_norm(a.mu1 - b.mu1) < 1e-13);
  CHECK(sup_norm(a.mu2 - b.mu2) < 1e-13);
}

TEST_CASE("gauge direction validation") {
  std::mt19937_64 rng(1);
  auto x = random_configuration(8, {0}, {0}, rng);
  GaugeDirection bad{Field::identity(8, 1), Field(8, 1, 1)};
  CHECK_THROWS(check_gauge_direction(bad));
}

TEST_CASE("mu_I matches the vortex residual in the unitary frame") {
  const int n = 64;
  std::mt19937_64 rng(8);
  auto q = QuadrupletSpec::zero(n, {0}, {0});
  q.psi = Field::constant(n, MatC::Constant(1, 1, 1.0));
  auto c = constants_from_sigma(Rational(2), 1, 1, 0, 0);
  MetricPair h{random_metric(n, {0}, rng), random_metric(n, {0}, rng)};
  auto off = cross_module_check(q, h, c);
  CHECK(off.mu_vs_residual <= 1e-8);
  CHECK(off.holomorphy <= 1e-10);
  CHECK(off.mu_off_center > 1e-3);  // random metric is not a solution

  SolveOptions o;
  o.target = 1e-11;
  auto [hs, rep] = solve(q, c, o);
  REQUIRE(rep.converged);
  auto on = cross_module_check(q, hs, c);
  CHECK(on.mu_vs_residual <= 1e-8);
  CHECK(on.mu_off_center <= 1e-8);
}
