#include "vortexlab/vortex.hpp"

#include <cmath>
#include <limits>

#include <unsupported/Eigen/MatrixFunctions>

#include "vortexlab/kernels.hpp"

namespace vx {

constexpr double kPi = 3.14159265358979323846264338327950288;
const cplx kI(0, 1);

Rational sigma_from_tau(const Rational& tau, int r1, int r2, int d1, int d2) {
  return (Rational(r1 + r2) * tau - Rational(d1 + d2)) / Rational(r2);
}

Rational tau_from_sigma(const Rational& sigma, int r1, int r2, int d1, int d2) {
  return (Rational(d1 + d2) + sigma * Rational(r2)) / Rational(r1 + r2);
}

VortexConstants constants_from_tau(const Rational& tau, int r1, int r2, int d1, int d2) {
  if (r1 < 1 || r2 < 1) throw std::invalid_argument("constants need r1, r2 >= 1");
  VortexConstants c;
  c.tau = tau;
  c.tau_prime = -(Rational(r1) * tau - Rational(d1 + d2)) / Rational(r2);
  c.sigma = sigma_from_tau(tau, r1, r2, d1, d2);
  c.sigma_positive = c.sigma > 0;
  if (c.sigma_positive) {
    double vol = to_double(c.sigma) / 2.0;
    double deg = to_double(Rational(d1 + d2) + c.sigma * Rational(r2));
    c.lambda_he = -2.0 * kPi * kI / vol * (deg / (r1 + r2));
  } else {
    c.lambda_he = cplx(std::numeric_limits<double>::quiet_NaN(), 0);
  }
  return c;
}

VortexConstants constants_from_sigma(const Rational& sigma, int r1, int r2, int d1, int d2) {
  return constants_from_tau(tau_from_sigma(sigma, r1, r2, d1, d2), r1, r2, d1, d2);
}

const char* to_string(CouplingSigns s) {
  return s == CouplingSigns::reduction ? "reduction" : "literal";
}

CouplingSigns coupling_signs_from_string(const std::string& s) {
  if (s == "reduction") return CouplingSigns::reduction;
  if (s == "literal") return CouplingSigns::literal;
  throw std::invalid_argument("coupling signs must be 'reduction' or 'literal'");
}

namespace {

Field contracted_higgs_curvature(const Field& h, const Field& theta, const std::vector<int>& deg) {
  Field f = chern_curvature(h, deg);
  f += bracket_theta(theta, higgs_adjoint(theta, h));
  return lambda_contract(f);
}

void add_identity(Field& f, cplx s) {
  for (int p = 0; p < f.points(); ++p)
    for (int k = 0; k < f.rows(); ++k) f(p, k, k) += s;
}

}  // namespace

VortexResidual residual(const QuadrupletSpec& q, const MetricPair& h, const VortexConstants& c,
                        CouplingSigns signs) {
  q.validate();
  if (h.h1.rows() != q.r1() || h.h2.rows() != q.r2()) throw ShapeError("metric ranks do not match");
  const double s = signs == CouplingSigns::reduction ? 1.0 : -1.0;
  Field phi_star = morphism_adjoint(q.phi, h.h1, h.h2);
  Field psi_star = morphism_adjoint(q.psi, h.h2, h.h1);

  VortexResidual r;
  r.R1 = contracted_higgs_curvature(h.h1, q.theta1, q.deg1);
  r.R1 += (s * kI) * mul(phi_star, q.phi);
  r.R1 -= kI * mul(q.psi, psi_star);
  add_identity(r.R1, 2.0 * kPi * kI * c.tau_d());

  r.R2 = contracted_higgs_curvature(h.h2, q.theta2, q.deg2);
  r.R2 -= (s * kI) * mul(q.phi, phi_star);
  r.R2 += kI * mul(psi_star, q.psi);
  add_identity(r.R2, 2.0 * kPi * kI * c.tau_prime_d());
  return r;
}

double residual_sup(const Field& R, const Field& h) {
  double m = 0;
  for (int p = 0; p < R.points(); ++p) {
    MatC Rs = h.mat(p).partialPivLu().solve(R.mat(p).adjoint() * h.mat(p));
    m = std::max(m, std::sqrt(std::abs((R.mat(p) * Rs).trace())));
  }
  return m;
}

double trace_identity_check(const QuadrupletSpec& q, const MetricPair& h, const VortexConstants& c,
                            CouplingSigns signs) {
  auto r = residual(q, h, c, signs);
  return std::abs(kI * integrate_trace(r.R1) + kI * integrate_trace(r.R2));
}

SolutionCheck is_solution(const QuadrupletSpec& q, const MetricPair& h, const VortexConstants& c,
                          double tol, CouplingSigns signs) {
  auto r = residual(q, h, c, signs);
  SolutionCheck s;
  s.sup_R1 = residual_sup(r.R1, h.h1);
  s.sup_R2 = residual_sup(r.R2, h.h2);
  s.ok = s.sup_R1 <= tol && s.sup_R2 <= tol;
  return s;
}

double psi_norm_integral(const QuadrupletSpec& q, const MetricPair& h) {
  return integrate_trace(mul(q.psi, morphism_adjoint(q.psi, h.h2, h.h1))).real();
}

double phi_norm_integral(const QuadrupletSpec& q, const MetricPair& h) {
  return integrate_trace(mul(morphism_adjoint(q.phi, h.h1, h.h2), q.phi)).real();
}

namespace {

double log_det(const MatC& h) {
  Eigen::LLT<MatC> llt(h);
  double s = 0;
  for (int k = 0; k < h.rows(); ++k) s += 2.0 * std::log(llt.matrixLLT()(k, k).real());
  return s;
}

double integrated_log_det(const Field& h) {
  double s = 0;
  for (int p = 0; p < h.points(); ++p) s += log_det(MatC(h.mat(p)));
  return s / h.points();
}

double max_abs_log_eig(const Field& h) {
  double m = 0;
  for (int p = 0; p < h.points(); ++p) {
    Eigen::SelfAdjointEigenSolver<MatC> es(MatC(h.mat(p)), Eigen::EigenvaluesOnly);
    m = std::max({m, std::abs(std::log(es.eigenvalues().minCoeff())),
                  std::abs(std::log(es.eigenvalues().maxCoeff()))});
  }
  return m;
}

// h <- herm(h exp(-eps M)); false if positivity is lost
bool flow_step(const Field& h, const Field& M, double eps, Field& out) {
  out = Field(h.n(), h.rows(), h.cols());
  bool ok = true;
#pragma omp parallel for schedule(static) reduction(&& : ok)
  for (int p = 0; p < h.points(); ++p) {
    MatC e = (-eps * MatC(M.mat(p))).exp();
    MatC hn = h.mat(p) * e;
    hn = 0.5 * (hn + hn.adjoint()).eval();
    Eigen::LLT<MatC> llt(hn);
    if (llt.info() != Eigen::Success) ok = false;
    out.mat(p) = hn;
  }
  return ok;
}

Field precondition(const Field& iR, double smoothing) {
  const int n = iR.n();
  auto sym = kernels::symbol_laplace(n);
  for (auto& s : sym) s = 1.0 / (1.0 - smoothing * s.real());
  Field out(n, iR.rows(), iR.cols());
  kernels::spectral_apply(iR.data(), out.data(), n, iR.block(), sym, kernels::default_exec());
  return out;
}

void scale_metric(Field& h, double factor) {
  for (std::size_t i = 0; i < h.size(); ++i) h.data()[i] *= factor;
}

void gauge_fix(const QuadrupletSpec& q, MetricPair& h) {
  double l1 = integrated_log_det(h.h1), l2 = integrated_log_det(h.h2);
  if (q.coupled()) {
    // only the common scaling is a symmetry when phi or psi is present
    double c = (l1 + l2) / (q.r1() + q.r2());
    scale_metric(h.h1, std::exp(-c));
    scale_metric(h.h2, std::exp(-c));
  } else {
    scale_metric(h.h1, std::exp(-l1 / q.r1()));
    scale_metric(h.h2, std::exp(-l2 / q.r2()));
  }
}

// mean square of |R|_h, smooth unlike the sup norm, so the line search uses it
double residual_l2sq(const Field& R, const Field& h) {
  double m = 0;
  for (int p = 0; p < R.points(); ++p) {
    MatC Rs = h.mat(p).partialPivLu().solve(R.mat(p).adjoint() * h.mat(p));
    m += std::abs((R.mat(p) * Rs).trace());
  }
  return m / R.points();
}

struct Eval {
  VortexResidual r;
  double s1 = 0, s2 = 0;
  double l2 = 0;
  double merit() const { return std::max(s1, s2); }
};

Eval evaluate(const QuadrupletSpec& q, const MetricPair& h, const VortexConstants& c,
              CouplingSigns signs) {
  Eval e;
  e.r = residual(q, h, c, signs);
  e.s1 = residual_sup(e.r.R1, h.h1);
  e.s2 = residual_sup(e.r.R2, h.h2);
  e.l2 = residual_l2sq(e.r.R1, h.h1) + residual_l2sq(e.r.R2, h.h2);
  return e;
}

}  // namespace

std::pair<MetricPair, SolveReport> solve(const QuadrupletSpec& q, const VortexConstants& c,
                                         const SolveOptions& opt, const MetricPair* initial) {
  q.validate();
  MetricPair h = initial ? *initial : MetricPair::identity(q);
  h.validate(1e-10);

  SolveReport rep;
  Eval cur = evaluate(q, h, c, opt.signs);
  MetricPair best = h;
  double best_merit = cur.merit();
  std::vector<double> merits;
  double eps = opt.step;

  for (int it = 0;; ++it) {
    rep.history.push_back({it, cur.s1, cur.s2});
    merits.push_back(cur.merit());
    rep.iterations = it;
    if (cur.merit() < best_merit || it == 0) {
      best_merit = cur.merit();
      best = h;
      rep.best_iteration = it;
    }
    if (cur.merit() <= opt.target) {
      rep.converged = true;
      rep.reason = "target reached";
      break;
    }
    if (it >= opt.max_iter) {
      rep.reason = "iteration limit";
      break;
    }
    if (it >= opt.patience &&
        merits[it] > merits[it - opt.patience] * (1.0 - opt.min_improvement)) {
      rep.reason = "stagnated";
      break;
    }

    auto line_search = [&](const Field& M1, const Field& M2) {
      while (true) {
        MetricPair trial;
        bool ok = flow_step(h.h1, M1, eps, trial.h1) && flow_step(h.h2, M2, eps, trial.h2);
        if (ok) {
          if (opt.gauge_fix) gauge_fix(q, trial);
          Eval e = evaluate(q, trial, c, opt.signs);
          if (!opt.backtracking || e.l2 < cur.l2) {
            h = std::move(trial);
            cur = std::move(e);
            if (opt.backtracking) eps = std::min(eps * opt.step_growth, opt.step_max);
            return true;
          }
        }
        if (!opt.backtracking) return false;
        eps *= 0.5;
        if (eps < opt.step_min) return false;
      }
    };
    bool accepted = line_search(precondition(kI * cur.r.R1, opt.smoothing),
                                precondition(kI * cur.r.R2, opt.smoothing));
    // the smoothed direction is not always a descent direction, the raw one is
    if (!accepted && opt.backtracking && opt.smoothing > 0) {
      eps = opt.step;
      accepted = line_search(kI * cur.r.R1, kI * cur.r.R2);
    }
    rep.final_step = eps;
    if (!accepted) {
      rep.reason = opt.backtracking ? "step size underflow" : "lost positivity";
      break;
    }
    if (max_abs_log_eig(h.h1) > opt.max_log_metric || max_abs_log_eig(h.h2) > opt.max_log_metric) {
      rep.history.push_back({it + 1, cur.s1, cur.s2});
      rep.iterations = it + 1;
      rep.reason = "metric diverged";
      break;
    }
  }
  rep.final_step = eps;
  Eval fin = evaluate(q, best, c, opt.signs);
  rep.sup_R1 = fin.s1;
  rep.sup_R2 = fin.s2;
  return {best, rep};
}

}  // namespace vx
