// vortexlab command line front end
#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>
#include <omp.h>

#include "vortexlab/commands.hpp"

namespace {

void apply_thread_env() {
  const char* v = std::getenv("VORTEXLAB_THREADS");
  if (!v) return;  // OMP_NUM_THREADS is honoured by the runtime itself
  char* end = nullptr;
  long n = std::strtol(v, &end, 10);
  if (end == v || *end || n < 1) {
    std::cerr << "warning: ignoring VORTEXLAB_THREADS='" << v << "'\n";
    return;
  }
  omp_set_num_threads(int(n));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vortexlab: doubly coupled vortex equations on the square torus"};
  app.require_subcommand(1);

  std::string config;
  std::optional<std::string> out;
  std::optional<double> tol;
  std::optional<unsigned> seed;
  int n = 2;

  auto add_common = [&](CLI::App* sub, bool need_config) {
    auto* opt = sub->add_option("--config", config, "run configuration (INI)")->check(CLI::ExistingFile);
    if (need_config) opt->required();
    sub->add_option("--out", out, "directory for report.json and history.csv");
    sub->add_option("--tol", tol, "override the headline tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--seed", seed, "override the sampling seed");
  };
  auto* s_solve = app.add_subcommand("solve", "solve the vortex equations");
  auto* s_stab = app.add_subcommand("stability", "tau-stability verdict over a sub-object catalog");
  auto* s_red = app.add_subcommand("verify-reduction", "check the correspondence with X x P1");
  auto* s_hk = app.add_subcommand("verify-hk", "check g, I, J, K and the moment map");
  auto* s_deg = app.add_subcommand("deg-p1", "degree of O(n) on P1 by quadrature");
  for (auto* s : {s_solve, s_stab, s_red, s_hk}) add_common(s, true);
  add_common(s_deg, false);
  s_deg->add_option("--n", n, "twist")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  apply_thread_env();

  try {
    vx::Overrides o{tol, seed};
    vx::CommandResult r;
    if (s_deg->parsed()) {
      std::optional<vx::RunConfig> cfg;
      if (!config.empty()) cfg = vx::load_config(config);
      r = vx::cmd_deg_p1(n, cfg ? &*cfg : nullptr, o);
    } else {
      vx::RunConfig cfg = vx::load_config(config);
      if (s_solve->parsed()) r = vx::cmd_solve(cfg, o);
      else if (s_stab->parsed()) r = vx::cmd_stability(cfg, o);
      else if (s_red->parsed()) r = vx::cmd_verify_reduction(cfg, o);
      else r = vx::cmd_verify_hk(cfg, o);
    }
    vx::emit(r, out, std::cout);
    return r.report.exit_code;
  } catch (const vx::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
