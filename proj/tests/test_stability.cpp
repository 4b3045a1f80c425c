#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "vortexlab/higgs.hpp"
#include "vortexlab/stability.hpp"

using namespace vx;

namespace {

// Theta written out from slopes with a different grouping, as an oracle
Rational theta_oracle(const QuadInvariants& s, const QuadInvariants& a, const Rational& tau) {
  Rational lhs = Rational(s.d1 + s.d2, s.r1 + s.r2) - tau;
  Rational rhs = Rational(s.r2 * (a.r1 + a.r2), a.r2 * (s.r1 + s.r2)) * (Rational(a.d1 + a.d2, a.r1 + a.r2) - tau);
  return lhs - rhs;
}

}  // namespace

TEST_CASE("rational parsing") {
  CHECK(parse_rational("3/4") == Rational(3, 4));
  CHECK(parse_rational("-6/8") == Rational(-3, 4));
  CHECK(parse_rational("0.125") == Rational(1, 8));
  CHECK(parse_rational("2.5e-1") == Rational(1, 4));
  CHECK(parse_rational("1.05") == Rational(21, 20));
  CHECK(parse_rational("010/04") == Rational(5, 2));
  CHECK(parse_rational(" 7 ") == Rational(7));
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("abc"));
  CHECK_THROWS(parse_rational(""));
  CHECK(to_string(Rational(-3, 4)) == "-3/4");
  CHECK(to_string(Rational(5)) == "5");
}

TEST_CASE("Theta equals the sigma-slope difference at tau = mu_sigma") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> rk(0, 5), dg(-30, 30), num(-40, 40), den(1, 9);
  int done = 0;
  while (done < 1000) {
    QuadInvariants a{rk(rng) + 1, rk(rng) + 1, dg(rng), dg(rng)};
    QuadInvariants s{rk(rng) % (a.r1 + 1), rk(rng) % (a.r2 + 1), dg(rng), dg(rng)};
    if (s.r1 + s.r2 == 0) continue;
    Rational sigma(num(rng), den(rng));
    Rational tau = mu_sigma(a, sigma);
    CHECK(theta_tau(s, a, tau) == mu_sigma(s, sigma) - mu_sigma(a, sigma));
    CHECK(theta_tau(s, a, tau) == theta_oracle(s, a, tau));
    ++done;
  }
}

TEST_CASE("deg and mu sigma") {
  QuadInvariants q{2, 1, 3, -1};
  CHECK(deg_sigma(q, Rational(1, 2)) == Rational(5, 2));
  CHECK(mu_sigma(q, Rational(1, 2)) == Rational(5, 6));
  CHECK(slope(q) == Rational(2, 3));
  CHECK_THROWS(mu_sigma(QuadInvariants{0, 0, 0, 0}, Rational(1)));
}

TEST_CASE("phi entry is unstable with the E2 witness") {
  auto q = QuadrupletSpec::zero(8, {0}, {0});
  q.phi = Field::constant(8, MatC::Constant(1, 1, 1.0));
  auto cat = coordinate_subquadruplets(q);
  // phi: E1 -> E2, so E1 alone is not invariant but E2 is
  REQUIRE(cat.entries.size() == 1);
  CHECK(cat.entries[0].inv == QuadInvariants{0, 1, 0, 0});
  Rational tau(1);
  auto v = verdict_tau(cat, tau);
  CHECK(v.verdict == Verdict::unstable);
  CHECK(v.worst == tau);
  REQUIRE(v.witnesses.size() == 1);
  CHECK(verdict_sigma(cat, Rational(2)).verdict == Verdict::unstable);
}

TEST_CASE("psi entry is stable, decoupled data is not") {
  auto q = QuadrupletSpec::zero(8, {0}, {0});
  q.psi = Field::constant(8, MatC::Constant(1, 1, 1.0));
  auto cat = coordinate_subquadruplets(q);
  REQUIRE(cat.entries.size() == 1);
  CHECK(cat.entries[0].inv == QuadInvariants{1, 0, 0, 0});
  CHECK(verdict_tau(cat, Rational(1)).verdict == Verdict::stable);
  CHECK(verdict_tau(cat, Rational(0)).verdict == Verdict::semistable);
  auto free = QuadrupletSpec::zero(8, {0}, {0});
  CHECK(coordinate_subquadruplets(free).entries.size() == 2);
  CHECK(verdict_tau(coordinate_subquadruplets(free), Rational(1)).verdict == Verdict::unstable);
}

TEST_CASE("empty catalog is vacuously stable") {
  SubobjectCatalog cat;
  cat.ambient = {1, 1, 0, 0};
  auto v = verdict_tau(cat, Rational(1));
  CHECK(v.vacuous);
  CHECK(v.verdict == Verdict::stable);
}

TEST_CASE("direct sums and polystability") {
  // two copies of the psi entry have equal sigma-slope
  SubobjectCatalog part;
  part.ambient = {1, 1, 0, 0};
  part.entries.push_back({{1, 0, 0, 0}, "coordinate", ""});
  CHECK(direct_sum(part.ambient, part.ambient) == QuadInvariants{2, 2, 0, 0});
  CHECK(polystable_check({{part}, {part}}, Rational(2)));
  SubobjectCatalog other;
  other.ambient = {1, 1, 2, 0};
  CHECK(!polystable_check({{part}, {other}}, Rational(2)));
  CHECK_THROWS(polystable_check({}, Rational(2)));
}

TEST_CASE("catalog text round trip and diagnostics") {
  SubobjectCatalog cat;
  cat.ambient = {2, 1, 1, 0};
  cat.entries.push_back({{1, 0, 1, 0}, "user", "line one"});
  cat.entries.push_back({{0, 1, -2, 0}, "degree-lowered", ""});
  std::stringstream ss;
  write_catalog(ss, cat);
  auto back = read_catalog(ss);
  CHECK(back.ambient == cat.ambient);
  REQUIRE(back.entries.size() == 2);
  CHECK(back.entries[0].label == "line one");
  CHECK(back.entries[1].provenance == "degree-lowered");

  std::istringstream bad1("1 1 0 0 ambient\n0 0 0 0 user\n");
  try {
    read_catalog(bad1);
    FAIL("no throw");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  std::istringstream bad2("1 1 0 0 user\n");
  CHECK_THROWS(read_catalog(bad2));
  std::istringstream bad3("1 1 0 0 ambient\n2 0 0 0 user\n");
  CHECK_THROWS(read_catalog(bad3));
}
