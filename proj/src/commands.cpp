#include "vortexlab/commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <random>

#include "vortexlab/hyperkahler.hpp"
#include "vortexlab/kernels.hpp"
#include "vortexlab/random_fields.hpp"
#include "vortexlab/reduction.hpp"
#include "vortexlab/stability.hpp"

namespace vx {

constexpr double kPi = 3.14159265358979323846264338327950288;
const cplx kI(0, 1);

namespace {

Report start(const char* command, const RunConfig* cfg, unsigned seed) {
  Report r;
  r.command = command;
  if (cfg) {
    r.provenance.config_path = cfg->path;
    r.provenance.config_hash = cfg->hash;
  }
  r.provenance.seed = seed;
  r.provenance.threads = kernels::thread_count();
  return r;
}

unsigned seed_of(const RunConfig& cfg, const Overrides& o) { return o.seed ? *o.seed : cfg.seed; }

SolverBlock solver_block(const SolveReport& s) {
  SolverBlock b;
  b.converged = s.converged;
  b.reason = s.reason;
  b.iterations = s.iterations;
  b.best_iteration = s.best_iteration;
  b.sup_R1 = s.sup_R1;
  b.sup_R2 = s.sup_R2;
  b.final_step = s.final_step;
  return b;
}

QuadInvariants invariants(const QuadrupletSpec& q) { return {q.r1(), q.r2(), q.d1(), q.d2()}; }

double pointwise_norm(const Field& R, const Field& h, int p) {
  MatC r = R.mat(p), hh = h.mat(p);
  MatC rs = hh.partialPivLu().solve(r.adjoint() * hh);
  return std::sqrt(std::abs((r * rs).trace()));
}

// ones on the equal-degree entries
Field coupling_ones(int n, const std::vector<int>& rows, const std::vector<int>& cols) {
  MatC m = MatC::Zero(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j)
      if (rows[i] == cols[j]) m(i, j) = 1.0;
  return Field::constant(n, m);
}

}  // namespace

CommandResult cmd_solve(const RunConfig& cfg, const Overrides& o) {
  CommandResult out;
  Report& r = out.report;
  r = start("solve", &cfg, seed_of(cfg, o));
  QuadrupletSpec q = build_quadruplet(cfg);
  VortexConstants c = build_constants(cfg);
  r.constants = constants_block(c);
  const double tol = o.tol ? *o.tol : cfg.tol.residual;

  SolveOptions opt = cfg.solver;
  opt.target = std::min(opt.target, tol);
  auto [h, rep] = solve(q, c, opt);
  out.history = rep.history;
  r.solver = solver_block(rep);

  r.checks.push_back(make_check("sup_R1", rep.sup_R1, tol));
  r.checks.push_back(make_check("sup_R2", rep.sup_R2, tol));
  auto hol = holomorphy_residuals(q);
  r.checks.push_back(make_check("holomorphy", hol.max(), 1e-10));
  r.checks.push_back(make_check("composition_phi_psi", composition_residual(q), 1e-12));

  // integrating i tr R1 over X gives int|psi|^2 - s int|phi|^2 = 2 pi (tau r1 - d1)
  const double s = opt.signs == CouplingSigns::reduction ? 1.0 : -1.0;
  const double psi2 = psi_norm_integral(q, h), phi2 = phi_norm_integral(q, h);
  const double target = 2 * kPi * (c.tau_d() * q.r1() - q.d1());
  r.values["psi_norm_integral"] = psi2;
  r.values["phi_norm_integral"] = phi2;
  r.values["norm_identity_target"] = target;
  r.checks.push_back(make_check("norm_identity", std::abs(psi2 - s * phi2 - target), cfg.tol.psi_norm));
  r.values["trace_identity"] = trace_identity_check(q, h, c, opt.signs);
  r.checks.push_back(make_check("trace_identity", r.values["trace_identity"], cfg.tol.trace));
  r.values["h1_00"] = h.h1(0, 0, 0).real();
  r.values["h2_00"] = h.h2(0, 0, 0).real();
  r.notes.push_back(std::string("coupling signs: ") + to_string(opt.signs));
  r.finalize(rep.converged);
  return out;
}

CommandResult cmd_stability(const RunConfig& cfg, const Overrides& o) {
  CommandResult out;
  Report& r = out.report;
  r = start("stability", &cfg, seed_of(cfg, o));
  QuadrupletSpec q = build_quadruplet(cfg);
  VortexConstants c = build_constants(cfg);
  r.constants = constants_block(c);

  SubobjectCatalog cat;
  if (!cfg.catalog.empty()) {
    std::ifstream in(cfg.catalog);
    if (!in) throw ConfigError(cfg.path + ": key 'stability.catalog': cannot open '" + cfg.catalog + "'");
    try {
      cat = read_catalog(in);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(cfg.catalog + ": " + e.what());
    }
    if (!(cat.ambient == invariants(q)))
      throw ConfigError(cfg.catalog + ": ambient record does not match the configured quadruplet");
    r.notes.push_back("catalog: " + cfg.catalog);
  } else {
    cat = coordinate_subquadruplets(q);
    r.notes.push_back("catalog: coordinate sub-quadruplets");
  }

  VerdictResult v = verdict_tau(cat, c.tau);
  StabilityBlock b;
  b.verdict = to_string(v.verdict);
  b.vacuous = v.vacuous;
  b.worst = to_string(v.worst);
  b.catalog_size = int(cat.entries.size());
  for (std::size_t i : v.witnesses) {
    const auto& e = cat.entries[i];
    b.witnesses.push_back({e.inv.r1, e.inv.r2, e.inv.d1, e.inv.d2, e.provenance, e.label,
                           to_string(theta_tau(e.inv, cat.ambient, c.tau))});
  }
  r.stability = b;
  r.values["theta_worst"] = v.vacuous ? 0.0 : to_double(v.worst);

  // the sigma-slope verdict must agree
  VerdictResult vs = verdict_sigma(cat, c.sigma);
  r.checks.push_back(make_check("sigma_verdict_agrees", vs.verdict == v.verdict ? 0.0 : 1.0, 0.0));
  r.checks.push_back(make_check("theta_equals_slope_difference", equivalence_check(cat, c.sigma) ? 0.0 : 1.0, 0.0));
  if (cfg.expect) r.checks.push_back(make_check("expected_verdict", b.verdict == *cfg.expect ? 0.0 : 1.0, 0.0));
  r.finalize();
  return out;
}

CommandResult cmd_verify_reduction(const RunConfig& cfg, const Overrides& o) {
  CommandResult out;
  Report& r = out.report;
  const unsigned seed = seed_of(cfg, o);
  r = start("verify-reduction", &cfg, seed);
  QuadrupletSpec q = build_quadruplet(cfg);
  VortexConstants c = build_constants(cfg);
  r.constants = constants_block(c);
  if (!c.sigma_positive) throw ConfigError(cfg.path + ": verify-reduction needs sigma > 0");
  const double sigma = c.sigma_d();
  const Tolerances& t = cfg.tol;
  const double he_tol = o.tol ? *o.tol : t.he;

  auto [h, rep] = solve(q, c, cfg.solver);
  r.solver = solver_block(rep);
  r.checks.push_back(make_check("vortex_residual", std::max(rep.sup_R1, rep.sup_R2), t.residual));

  std::mt19937_64 rng(seed);
  auto pts = random_product_points(q.n(), cfg.samples, rng);
  AssembledF A = assemble_F(q, h, sigma, pts, cfg.sigma_on_p1);
  HeResult he = he_residual_product(A, c.lambda_he);
  r.values["sample_points"] = double(pts.size());
  r.values["he_residual"] = he.residual;
  r.checks.push_back(make_check("he_residual", he.residual, he_tol));
  r.checks.push_back(make_check("he_off_diagonal", he.off_diagonal, t.off_diagonal));
  r.checks.push_back(make_check("integrability", integrability_residual(A), t.integrability));

  // HE blocks are (2/sigma) times the vortex residuals, point by point
  VortexResidual R = residual(q, h, c, CouplingSigns::reduction);
  double rescale = 0;
  for (const auto& d : A.points) {
    AssembledF one = A;
    one.points = {d};
    HeResult hp = he_residual_product(one, c.lambda_he);
    const int p = d.pt.torus_index;
    const double b1 = 2 / sigma * pointwise_norm(R.R1, h.h1, p), b2 = 2 / sigma * pointwise_norm(R.R2, h.h2, p);
    rescale = std::max({rescale, std::abs(hp.block1 - b1) / std::max(1.0, b1),
                        std::abs(hp.block2 - b2) / std::max(1.0, b2)});
  }
  r.values["rescaling_constant"] = 2 / sigma;
  r.checks.push_back(make_check("he_equals_rescaled_vortex_residual", rescale, 1e-8));

  // constants by quadrature
  cplx lq = lambda_from_quadrature(invariants(q), sigma);
  r.checks.push_back(make_check("lambda_quadrature", std::abs(lq - c.lambda_he), 1e-8));
  double deg_q = block_bundle_degree(invariants(q), sigma, cfg.p1_radial, cfg.p1_angular);
  double deg_x = to_double(block_bundle_degree_exact(invariants(q), c.sigma));
  r.values["block_degree"] = deg_q;
  r.checks.push_back(make_check("block_degree", std::abs(deg_q - deg_x), t.deg));
  FsConstant fs = fs_contraction_constant(2, cfg.p1_radial, cfg.p1_angular);
  r.values["fs_constant_im"] = fs.value.imag();
  r.checks.push_back(make_check("fs_constant", std::abs(fs.value + 4.0 * kPi * kI), t.fs_constant));
  r.checks.push_back(make_check("fs_constant_spread", fs.max_deviation, t.fs_constant));
  Calibration cal = calibrate_alpha_beta(sigma);
  r.values["raw_alpha"] = cal.raw_alpha;
  r.values["raw_beta"] = cal.raw_beta;
  r.values["c_alpha"] = cal.c_alpha;
  r.values["c_beta"] = cal.c_beta;

  // break phi psi = 0 and watch the integrability residual
  QuadrupletSpec broken = q;
  if (sup_norm(q.phi) == 0) broken.phi = coupling_ones(q.n(), q.deg2, q.deg1);
  if (sup_norm(q.psi) == 0) broken.psi = coupling_ones(q.n(), q.deg1, q.deg2);
  if (composition_residual(broken) > 0) {
    std::vector<ProductPoint> few(pts.begin(), pts.begin() + std::min<std::size_t>(pts.size(), 20));
    double ib = integrability_residual(assemble_F(broken, h, sigma, few, cfg.sigma_on_p1));
    r.checks.push_back(make_check("integrability_broken", ib, t.broken_integrability, ">="));
  } else {
    r.notes.push_back("no equal-degree entry to break phi psi = 0 with");
  }

  // iota round trip, on random metrics: a diverged solver metric is too ill-conditioned
  double worst = 0;
  for (int k = 0; k < cfg.iota_sets; ++k) {
    MetricPair hr{random_metric(q.n(), q.deg1, rng), random_metric(q.n(), q.deg2, rng)};
    IotaComponents comp = random_iota_components(hr, rng);
    std::vector<ProductPoint> p1(q.n() * q.n());
    for (auto& p : p1) p = random_product_points(1, 1, rng).front();
    auto D = iota_assemble(comp, hr, sigma, p1);
    worst = std::max(worst, iota_component_distance(comp, iota_decompose(D, hr, sigma)));
  }
  if (cfg.iota_sets > 0) r.checks.push_back(make_check("iota_roundtrip", worst, t.iota));
  r.finalize(rep.converged);
  return out;
}

CommandResult cmd_verify_hk(const RunConfig& cfg, const Overrides& o) {
  CommandResult out;
  Report& r = out.report;
  const unsigned seed = seed_of(cfg, o);
  r = start("verify-hk", &cfg, seed);
  QuadrupletSpec q = build_quadruplet(cfg);
  VortexConstants c = build_constants(cfg);
  r.constants = constants_block(c);
  const Tolerances& t = cfg.tol;
  const double moment_tol = o.tol ? *o.tol : t.moment;

  std::mt19937_64 rng(seed);
  Configuration x = random_configuration(q.n(), q.deg1, q.deg2, rng);
  double quat = 0, gmin = 1e300, wdiag = 0, anti = 0, moment = 0, equiv = 0;
  for (int k = 0; k < cfg.hk_samples; ++k) {
    TangentData a = random_tangent(x, rng), b = random_tangent(x, rng);
    GaugeDirection xi = random_gauge_direction(x, rng);
    quat = std::max(quat, quaternion_check(a, b).max());
    gmin = std::min(gmin, metric_g(a, a));
    wdiag = std::max(wdiag, std::abs(omega_I(a, a)));
    anti = std::max(anti, std::abs(omega_I(a, b) + omega_I(b, a)));
    moment = std::max(moment, moment_map_property_check(x, a, xi).error);
    equiv = std::max(equiv, equivariance_check(x, xi));
  }
  r.checks.push_back(make_check("quaternion_relations", quat, t.quaternion));
  r.checks.push_back(make_check("metric_positive", gmin, 0.0, ">="));
  r.checks.push_back(make_check("omega_I_diagonal", wdiag, t.quaternion));
  r.checks.push_back(make_check("omega_I_antisymmetry", anti, t.quaternion));
  r.checks.push_back(make_check("moment_map_property", moment, moment_tol));
  r.checks.push_back(make_check("equivariance", equiv, t.equivariance));

  // the vortex residual is the shifted moment map in the unitary frame
  auto [h, rep] = solve(q, c, cfg.solver);
  r.solver = solver_block(rep);
  CrossModuleCheck cm = cross_module_check(q, h, c);
  r.values["mu_off_center"] = cm.mu_off_center;
  r.values["holomorphy"] = cm.holomorphy;
  r.checks.push_back(make_check("moment_matches_vortex_residual", cm.mu_vs_residual, t.cross_module));
  const bool solution = is_solution(q, h, c, t.residual, cfg.solver.signs).ok && cm.holomorphy <= 1e-10;
  const bool level_set = cm.mu_off_center <= t.residual && cm.holomorphy <= 1e-10;
  r.values["is_solution"] = solution ? 1.0 : 0.0;
  r.checks.push_back(make_check("solution_iff_level_set", solution == level_set ? 0.0 : 1.0, 0.0));
  if (cfg.solver.signs != CouplingSigns::reduction)
    r.notes.push_back("moment map comparison uses the reduction signs");
  r.finalize();
  return out;
}

CommandResult cmd_deg_p1(int n, const RunConfig* cfg, const Overrides& o) {
  if (n < -8 || n > 8) throw ConfigError("deg-p1: |n| must be at most 8");
  CommandResult out;
  Report& r = out.report;
  r = start("deg-p1", cfg, o.seed ? *o.seed : 0);
  const int nr = cfg ? cfg->p1_radial : 24, na = cfg ? cfg->p1_angular : 24;
  const double tol = o.tol ? *o.tol : (cfg ? cfg->tol.deg : 1e-6);
  double d = deg_p1(n, nr, na);
  r.values["n"] = n;
  r.values["deg"] = d;
  r.checks.push_back(make_check("deg_equals_n", std::abs(d - n), tol));
  r.finalize();
  return out;
}

void emit(CommandResult r, const std::optional<std::string>& out_dir, std::ostream& os) {
  if (!out_dir) {
    os << serialize(r.report) << "\n";
    return;
  }
  std::filesystem::create_directories(*out_dir);
  std::filesystem::path dir(*out_dir);
  if (r.report.solver && !r.history.empty()) {
    r.report.solver->history_csv = "history.csv";
    std::ofstream csv(dir / "history.csv");
    write_history_csv(csv, r.history);
  }
  std::ofstream js(dir / "report.json");
  js << serialize(r.report) << "\n";
  for (const auto& c : r.report.checks)
    os << (c.passed ? "ok   " : "FAIL ") << c.name << " = " << c.value << " (" << c.comparison << " " << c.tolerance
       << ")\n";
  if (r.report.stability) {
    os << "verdict " << r.report.stability->verdict;
    for (const auto& w : r.report.stability->witnesses)
      os << "  witness (" << w.r1 << "," << w.r2 << "," << w.d1 << "," << w.d2 << ") theta=" << w.theta;
    os << "\n";
  }
  os << r.report.command << ": " << r.report.status << "\n";
}

}  // namespace vx
