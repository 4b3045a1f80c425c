#ifndef VORTEXLAB_VORTEX_HPP
#define VORTEXLAB_VORTEX_HPP

#include <string>
#include <utility>
#include <vector>

#include "vortexlab/higgs.hpp"
#include "vortexlab/rational.hpp"

namespace vx {

struct VortexConstants {
  Rational tau, tau_prime, sigma;
  cplx lambda_he;  // Hermitian-Einstein constant on X x P^1, only meaningful for sigma > 0
  bool sigma_positive = false;

  double tau_d() const { return to_double(tau); }
  double tau_prime_d() const { return to_double(tau_prime); }
  double sigma_d() const { return to_double(sigma); }
};

VortexConstants constants_from_tau(const Rational& tau, int r1, int r2, int d1, int d2);
VortexConstants constants_from_sigma(const Rational& sigma, int r1, int r2, int d1, int d2);
Rational tau_from_sigma(const Rational& sigma, int r1, int r2, int d1, int d2);
Rational sigma_from_tau(const Rational& tau, int r1, int r2, int d1, int d2);

// Sign of the phi terms.  "reduction" is the sign produced by the curvature
// of the block bundle on X x P^1 and by the moment map; "literal" flips it.
enum class CouplingSigns { reduction, literal };

const char* to_string(CouplingSigns s);
CouplingSigns coupling_signs_from_string(const std::string& s);

struct VortexResidual {
  Field R1, R2;
};

VortexResidual residual(const QuadrupletSpec& q, const MetricPair& h, const VortexConstants& c,
                        CouplingSigns signs = CouplingSigns::reduction);

// frame independent pointwise norm sqrt(tr(R R*)) with R* the h-adjoint
double residual_sup(const Field& R, const Field& h);

// |int tr(i R1) + int tr(i R2)|
double trace_identity_check(const QuadrupletSpec& q, const MetricPair& h, const VortexConstants& c,
                            CouplingSigns signs = CouplingSigns::reduction);

struct SolveOptions {
  double step = 0.1;
  double step_min = 1e-10;
  double step_max = 0.5;
  double step_growth = 1.25;
  bool backtracking = true;
  bool gauge_fix = true;
  double smoothing = 0.5;  // preconditioner (1 - smoothing * laplace)^{-1}
  int max_iter = 20000;
  int patience = 200;
  double min_improvement = 1e-6;  // relative, over the patience window
  double target = 1e-8;
  double max_log_metric = 60.0;
  CouplingSigns signs = CouplingSigns::reduction;
};

struct HistoryRow {
  int iteration;
  double sup_R1, sup_R2;
};

struct SolveReport {
  bool converged = false;
  std::string reason;
  int iterations = 0;
  int best_iteration = 0;
  double sup_R1 = 0, sup_R2 = 0;
  double final_step = 0;
  std::vector<HistoryRow> history;
};

std::pair<MetricPair, SolveReport> solve(const QuadrupletSpec& q, const VortexConstants& c,
                                         const SolveOptions& opt, const MetricPair* initial = nullptr);

struct SolutionCheck {
  bool ok = false;
  double sup_R1 = 0, sup_R2 = 0;
};

SolutionCheck is_solution(const QuadrupletSpec& q, const MetricPair& h, const VortexConstants& c,
                          double tol, CouplingSigns signs = CouplingSigns::reduction);

// int |psi|_h^2 = int tr(psi psi*)
double psi_norm_integral(const QuadrupletSpec& q, const MetricPair& h);
double phi_norm_integral(const QuadrupletSpec& q, const MetricPair& h);

}  // namespace vx

#endif
