#include "vortexlab/report.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace vx {

using nlohmann::json;

Check make_check(std::string name, double value, double tolerance, std::string comparison) {
  Check c{std::move(name), value, tolerance, std::move(comparison), false};
  if (c.comparison == "<=") c.passed = value <= tolerance;
  else if (c.comparison == ">=") c.passed = value >= tolerance;
  else throw std::invalid_argument("unknown comparison '" + c.comparison + "'");
  return c;
}

ConstantsBlock constants_block(const VortexConstants& c) {
  ConstantsBlock b;
  b.tau = to_string(c.tau);
  b.tau_prime = to_string(c.tau_prime);
  b.sigma = to_string(c.sigma);
  b.sigma_positive = c.sigma_positive;
  if (c.sigma_positive) {
    b.lambda_re = c.lambda_he.real();
    b.lambda_im = c.lambda_he.imag();
  }
  return b;
}

bool Report::all_passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

void Report::finalize(bool extra_ok) {
  bool ok = all_passed() && extra_ok;
  status = ok ? "pass" : "fail";
  exit_code = ok ? 0 : 2;
}

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(Check, name, value, tolerance, comparison, passed)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ConstantsBlock, tau, tau_prime, sigma, lambda_re, lambda_im, sigma_positive)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(SolverBlock, converged, reason, iterations, best_iteration, sup_R1, sup_R2,
                                   final_step, history_csv)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(WitnessEntry, r1, r2, d1, d2, provenance, label, theta)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(StabilityBlock, verdict, vacuous, worst, catalog_size, witnesses)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(Provenance, config_path, config_hash, seed, version, threads)

std::string serialize(const Report& r) {
  json j;
  j["schema"] = r.schema;
  j["command"] = r.command;
  j["status"] = r.status;
  j["exit_code"] = r.exit_code;
  j["constants"] = r.constants ? json(*r.constants) : json(nullptr);
  j["checks"] = r.checks;
  j["solver"] = r.solver ? json(*r.solver) : json(nullptr);
  j["stability"] = r.stability ? json(*r.stability) : json(nullptr);
  j["values"] = r.values;
  j["notes"] = r.notes;
  j["provenance"] = r.provenance;
  return j.dump(2);
}

Report parse_report(const std::string& text) {
  json j = json::parse(text);
  Report r;
  r.schema = j.at("schema").get<std::string>();
  if (r.schema != kReportSchema) throw std::invalid_argument("unknown report schema '" + r.schema + "'");
  r.command = j.at("command").get<std::string>();
  r.status = j.at("status").get<std::string>();
  r.exit_code = j.at("exit_code").get<int>();
  if (!j.at("constants").is_null()) r.constants = j["constants"].get<ConstantsBlock>();
  r.checks = j.at("checks").get<std::vector<Check>>();
  if (!j.at("solver").is_null()) r.solver = j["solver"].get<SolverBlock>();
  if (!j.at("stability").is_null()) r.stability = j["stability"].get<StabilityBlock>();
  r.values = j.at("values").get<std::map<std::string, double>>();
  r.notes = j.at("notes").get<std::vector<std::string>>();
  r.provenance = j.at("provenance").get<Provenance>();
  return r;
}

void write_history_csv(std::ostream& os, const std::vector<HistoryRow>& rows) {
  os << "iteration,sup_R1,sup_R2\n";
  char buf[96];
  for (const auto& h : rows) {
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g\n", h.iteration, h.sup_R1, h.sup_R2);
    os << buf;
  }
}

std::vector<HistoryRow> read_history_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != "iteration,sup_R1,sup_R2")
    throw std::invalid_argument("history csv: bad header");
  std::vector<HistoryRow> rows;
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    HistoryRow h{};
    char c1 = 0, c2 = 0;
    std::istringstream ls(line);
    if (!(ls >> h.iteration >> c1 >> h.sup_R1 >> c2 >> h.sup_R2) || c1 != ',' || c2 != ',')
      throw std::invalid_argument("history csv line " + std::to_string(lineno) + ": malformed");
    rows.push_back(h);
  }
  return rows;
}

}  // namespace vx
