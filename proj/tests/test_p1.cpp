#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "vortexlab/p1.hpp"

using namespace vx;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("Gauss-Legendre integrates polynomials exactly") {
  std::vector<double> x, w;
  gauss_legendre(6, x, w);
  double s0 = 0, s10 = 0, s11 = 0;
  for (int k = 0; k < 6; ++k) {
    s0 += w[k];
    s10 += w[k] * std::pow(x[k], 10);
    s11 += w[k] * std::pow(x[k], 11);
  }
  CHECK(s0 == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(s10 == doctest::Approx(2.0 / 11).epsilon(1e-13));
  CHECK(std::abs(s11) < 1e-14);
}

TEST_CASE("Fubini-Study volume is one") {
  auto q = p1_quadrature(24, 24);
  double v = integrate_p1(q, [](Chart, cplx) { return 1.0; });
  CHECK(std::abs(v - 1.0) < 1e-12);
  // one chart alone is half: the unit disk has FS area 1/2
  double half = 0;
  for (double w : q.first.weights) half += w;
  CHECK(std::abs(half - 0.5) < 1e-12);
  CHECK_THROWS(p1_quadrature(4, 24));
}

TEST_CASE("integrating |z|^2/(1+|z|^2) gives 1/2 by symmetry") {
  auto q = p1_quadrature(24, 24);
  // in the w chart the same function is 1/(1+|w|^2)
  double v = integrate_p1(q, [](Chart ch, cplx c) {
    double r = std::norm(c);
    return ch == Chart::z ? r / (1 + r) : 1 / (1 + r);
  });
  CHECK(std::abs(v - 0.5) < 1e-10);
}

TEST_CASE("chart transitions of line metrics and frames") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.2, 1.0), t(0, 2 * kPi);
  for (int k = 0; k < 64; ++k) {
    cplx z = std::polar(u(rng), t(rng));
    cplx w = chart_transition(z);
    CHECK(std::abs(w * z - 1.0) < 1e-14);
    for (int n : {-2, 1, 2, 3}) {
      // |e_{n,w}|^2 = |z|^{2n} |e_{n,z}|^2
      double lhs = line_metric(n, w);
      double rhs = std::norm(frame_transition(n, z)) * line_metric(n, z);
      CHECK(std::abs(lhs - rhs) < 1e-10 * std::max(1.0, lhs));
    }
  }
  CHECK(line_metric(-1, cplx(0.5, 0)) == doctest::Approx(1.25));
  CHECK(fs_density(0) == doctest::Approx(1 / kPi));
}
