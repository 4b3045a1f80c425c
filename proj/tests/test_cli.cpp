#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "vortexlab/report.hpp"

namespace fs = std::filesystem;
using namespace vx;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string("\"") + VX_CLI_PATH + "\" " + args + " 2>&1";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  char buf[4096];
  std::size_t k;
  while ((k = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, k);
  int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string cfg(const char* name) { return std::string("--config \"") + VX_CONFIG_DIR + "/" + name + "\""; }

fs::path scratch(const std::string& tag) {
  auto d = fs::temp_directory_path() / ("vortexlab_cli_" + tag);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("solve on the psi entry passes and writes a report") {
  auto d = scratch("solve");
  auto r = run("solve " + cfg("psi_stable.ini") + " --out \"" + d.string() + "\"");
  CHECK(r.code == 0);
  auto rep = parse_report(slurp(d / "report.json"));
  CHECK(rep.command == "solve");
  CHECK(rep.status == "pass");
  REQUIRE(rep.solver);
  CHECK(rep.solver->converged);
  // round trip through the serializer is lossless
  CHECK(parse_report(serialize(rep)) == rep);
  std::ifstream h(d / "history.csv");
  auto rows = read_history_csv(h);
  CHECK(!rows.empty());
  CHECK(rows.front().iteration == 0);
}

TEST_CASE("history csv is deterministic") {
  auto a = scratch("det_a"), b = scratch("det_b");
  CHECK(run("solve " + cfg("psi_stable.ini") + " --out \"" + a.string() + "\"").code == 0);
  CHECK(run("solve " + cfg("psi_stable.ini") + " --out \"" + b.string() + "\"").code == 0);
  CHECK(slurp(a / "history.csv") == slurp(b / "history.csv"));
  CHECK(slurp(a / "history.csv").rfind("iteration,sup_R1,sup_R2\n", 0) == 0);
}

TEST_CASE("phi entry: unstable verdict, solve fails") {
  auto r = run("stability " + cfg("phi_unstable.ini"));
  CHECK(r.code == 0);
  auto rep = parse_report(r.out);
  REQUIRE(rep.stability);
  CHECK(rep.stability->verdict == "unstable");
  bool found = false;
  for (const auto& w : rep.stability->witnesses)
    if (w.r1 == 0 && w.r2 == 1 && w.d1 == 0 && w.d2 == 0) found = true;
  CHECK(found);
  CHECK(run("solve " + cfg("phi_unstable.ini")).code == 2);
}

TEST_CASE("verify commands on the psi entry") {
  CHECK(run("verify-reduction " + cfg("psi_stable.ini")).code == 0);
  CHECK(run("verify-hk " + cfg("psi_stable.ini")).code == 0);
  CHECK(run("stability " + cfg("rank3_unstable.ini")).code == 0);
}

TEST_CASE("deg-p1") {
  auto r = run("deg-p1 --n=-3");
  CHECK(r.code == 0);
  auto rep = parse_report(r.out);
  CHECK(rep.values.at("deg") == doctest::Approx(-3).epsilon(1e-6));
  CHECK(run("deg-p1 --n 9").code == 1);
}

TEST_CASE("usage and config errors exit with 1") {
  CHECK(run("").code == 1);
  CHECK(run("solve").code == 1);
  CHECK(run("solve --config /nonexistent.ini").code == 1);
  CHECK(run("solve " + cfg("psi_stable.ini") + " --tol -1").code == 1);
  auto d = scratch("bad");
  {
    std::ofstream f(d / "syntax.ini");
    f << "[grid]\nn = 16\n[quadruplet\n";
  }
  auto r = run("solve --config \"" + (d / "syntax.ini").string() + "\"");
  CHECK(r.code == 1);
  CHECK(r.out.find("syntax.ini") != std::string::npos);
  {
    std::ofstream f(d / "value.ini");
    f << "[grid]\nn = 15\n[quadruplet]\ndeg1 = 0\ndeg2 = 0\ntau = 1\n";
  }
  r = run("solve --config \"" + (d / "value.ini").string() + "\"");
  CHECK(r.code == 1);
  CHECK(r.out.find("grid.n") != std::string::npos);
  {
    std::ofstream f(d / "both.ini");
    f << "[quadruplet]\ndeg1 = 0\ndeg2 = 0\ntau = 1\nsigma = 2\n";
  }
  CHECK(run("solve --config \"" + (d / "both.ini").string() + "\"").code == 1);
  {
    std::ofstream f(d / "key.ini");
    f << "[quadruplet]\ndeg1 = 0\ndeg2 = 0\ntau = 1\nbogus = 3\n";
  }
  r = run("solve --config \"" + (d / "key.ini").string() + "\"");
  CHECK(r.code == 1);
  CHECK(r.out.find("bogus") != std::string::npos);
}

TEST_CASE("tolerance override makes a passing run fail") {
  auto r = run("solve " + cfg("psi_stable.ini") + " --tol 1e-30");
  CHECK(r.code == 2);
}
