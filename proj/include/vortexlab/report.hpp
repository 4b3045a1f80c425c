#ifndef VORTEXLAB_REPORT_HPP
#define VORTEXLAB_REPORT_HPP

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vortexlab/vortex.hpp"

namespace vx {

constexpr const char* kReportSchema = "vortexlab-report/1";
constexpr const char* kVersion = "0.1.0";

struct Check {
  std::string name;
  double value = 0;
  double tolerance = 0;
  std::string comparison = "<=";  // "<=" or ">="
  bool passed = false;

  bool operator==(const Check&) const = default;
};

// builds a check and evaluates it
Check make_check(std::string name, double value, double tolerance, std::string comparison = "<=");

struct ConstantsBlock {
  std::string tau, tau_prime, sigma;  // exact rationals
  double lambda_re = 0, lambda_im = 0;
  bool sigma_positive = false;

  bool operator==(const ConstantsBlock&) const = default;
};
ConstantsBlock constants_block(const VortexConstants& c);

struct SolverBlock {
  bool converged = false;
  std::string reason;
  int iterations = 0, best_iteration = 0;
  double sup_R1 = 0, sup_R2 = 0, final_step = 0;
  std::string history_csv;  // file name, empty when not written

  bool operator==(const SolverBlock&) const = default;
};

struct WitnessEntry {
  int r1 = 0, r2 = 0, d1 = 0, d2 = 0;
  std::string provenance, label;
  std::string theta;  // exact

  bool operator==(const WitnessEntry&) const = default;
};

struct StabilityBlock {
  std::string verdict;
  bool vacuous = false;
  std::string worst;
  int catalog_size = 0;
  std::vector<WitnessEntry> witnesses;

  bool operator==(const StabilityBlock&) const = default;
};

struct Provenance {
  std::string config_path, config_hash;
  unsigned seed = 0;
  std::string version = kVersion;
  int threads = 1;

  bool operator==(const Provenance&) const = default;
};

struct Report {
  std::string schema = kReportSchema;
  std::string command;
  std::string status;  // "pass" or "fail"
  int exit_code = 0;
  std::optional<ConstantsBlock> constants;
  std::vector<Check> checks;
  std::optional<SolverBlock> solver;
  std::optional<StabilityBlock> stability;
  std::map<std::string, double> values;
  std::vector<std::string> notes;
  Provenance provenance;

  bool all_passed() const;
  // sets status and exit_code from the checks
  void finalize(bool extra_ok = true);

  bool operator==(const Report&) const = default;
};

std::string serialize(const Report& r);
Report parse_report(const std::string& json);

// iteration,sup_R1,sup_R2 with round-trip precision
void write_history_csv(std::ostream& os, const std::vector<HistoryRow>& rows);
std::vector<HistoryRow> read_history_csv(std::istream& is);

}  // namespace vx

#endif
