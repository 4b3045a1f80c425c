#ifndef VORTEXLAB_COMMANDS_HPP
#define VORTEXLAB_COMMANDS_HPP

#include <optional>
#include <string>

#include "vortexlab/config.hpp"
#include "vortexlab/report.hpp"

namespace vx {

// command line overrides
struct Overrides {
  std::optional<double> tol;  // the command's headline tolerance
  std::optional<unsigned> seed;
};

struct CommandResult {
  Report report;
  std::vector<HistoryRow> history;  // solve only
};

CommandResult cmd_solve(const RunConfig& cfg, const Overrides& o = {});
CommandResult cmd_stability(const RunConfig& cfg, const Overrides& o = {});
CommandResult cmd_verify_reduction(const RunConfig& cfg, const Overrides& o = {});
CommandResult cmd_verify_hk(const RunConfig& cfg, const Overrides& o = {});
// cfg only supplies the quadrature resolution and tolerance, may be null
CommandResult cmd_deg_p1(int n, const RunConfig* cfg, const Overrides& o = {});

// writes report.json (and history.csv) to out_dir when given, else prints the JSON
void emit(CommandResult r, const std::optional<std::string>& out_dir, std::ostream& os);

}  // namespace vx

#endif
