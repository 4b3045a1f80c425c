#include "vortexlab/higgs.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "vortexlab/kernels.hpp"

namespace vx {

constexpr double kPi = 3.14159265358979323846264338327950288;

QuadrupletSpec QuadrupletSpec::zero(int n, std::vector<int> deg1, std::vector<int> deg2) {
  QuadrupletSpec q;
  int r1 = int(deg1.size()), r2 = int(deg2.size());
  q.deg1 = std::move(deg1);
  q.deg2 = std::move(deg2);
  q.theta1 = Field(n, r1, r1, Form::one_zero);
  q.theta2 = Field(n, r2, r2, Form::one_zero);
  q.phi = Field(n, r2, r1);
  q.psi = Field(n, r1, r2);
  return q;
}

int QuadrupletSpec::d1() const { return std::accumulate(deg1.begin(), deg1.end(), 0); }
int QuadrupletSpec::d2() const { return std::accumulate(deg2.begin(), deg2.end(), 0); }

bool QuadrupletSpec::coupled() const { return sup_abs_entry(phi) > 0 || sup_abs_entry(psi) > 0; }

namespace {

void check_blocks(const Field& f, const std::vector<int>& drow, const std::vector<int>& dcol,
                  const char* name) {
  for (int r = 0; r < f.rows(); ++r)
    for (int c = 0; c < f.cols(); ++c) {
      if (drow[r] == dcol[c]) continue;
      for (int p = 0; p < f.points(); ++p)
        if (f(p, r, c) != cplx(0))
          throw ConstraintError(std::string(name) + " couples summands of different degree");
    }
}

}  // namespace

void QuadrupletSpec::validate() const {
  if (deg1.empty() || deg2.empty()) throw ShapeError("quadruplet ranks must be positive");
  const int n = phi.n(), a = r1(), b = r2();
  auto shape = [&](const Field& f, int r, int c, Form fm, const char* name) {
    if (f.n() != n || f.rows() != r || f.cols() != c)
      throw ShapeError(std::string(name) + " has the wrong shape");
    if (f.form() != fm) throw FormError(std::string(name) + " has the wrong form type");
  };
  shape(theta1, a, a, Form::one_zero, "theta1");
  shape(theta2, b, b, Form::one_zero, "theta2");
  shape(phi, b, a, Form::function, "phi");
  shape(psi, a, b, Form::function, "psi");
  check_blocks(theta1, deg1, deg1, "theta1");
  check_blocks(theta2, deg2, deg2, "theta2");
  check_blocks(phi, deg2, deg1, "phi");
  check_blocks(psi, deg1, deg2, "psi");
}

void check_metric(const Field& h, double herm_tol) {
  if (h.rows() != h.cols() || h.form() != Form::function) throw ShapeError("metric must be a square function field");
  for (int p = 0; p < h.points(); ++p) {
    auto m = h.mat(p);
    double scale = std::max(1.0, m.norm());
    if ((m - m.adjoint()).norm() > herm_tol * scale) throw DomainError("metric is not Hermitian");
    Eigen::SelfAdjointEigenSolver<MatC> es(MatC(m), Eigen::EigenvaluesOnly);
    if (!(es.eigenvalues().minCoeff() > 0)) throw DomainError("metric is not positive definite");
  }
}

MetricPair MetricPair::identity(const QuadrupletSpec& q) {
  return {Field::identity(q.n(), q.r1()), Field::identity(q.n(), q.r2())};
}

void MetricPair::validate(double herm_tol) const {
  check_metric(h1, herm_tol);
  check_metric(h2, herm_tol);
}

Field background_curvature(int n, const std::vector<int>& degrees) {
  const int r = int(degrees.size());
  MatC m = MatC::Zero(r, r);
  // -2 pi i d (i/2) dz^dzbar = pi d dz^dzbar
  for (int k = 0; k < r; ++k) m(k, k) = kPi * degrees[k];
  return Field::constant(n, m, Form::one_one);
}

Field chern_curvature(const Field& h, const std::vector<int>& degrees) {
  if (int(degrees.size()) != h.rows()) throw ShapeError("chern_curvature: degree list does not match rank");
  check_metric(h, 1e-10);
  Field a = mul(inverse(h), del(h));
  Field f = background_curvature(h.n(), degrees);
  f += dbar_of_one_zero(a);
  return f;
}

Field higgs_adjoint(const Field& theta, const Field& h) {
  if (theta.form() != Form::one_zero) throw FormError("higgs_adjoint expects a (1,0)-form");
  if (theta.rows() != theta.cols() || theta.rows() != h.rows() || theta.n() != h.n())
    throw ShapeError("higgs_adjoint: shape mismatch");
  Field out(theta.n(), theta.rows(), theta.rows(), Form::zero_one);
  kernels::pointwise_adjoint(h.data(), theta.data(), h.data(), out.data(), h.points(), h.rows(),
                             h.rows(), kernels::default_exec());
  return out;
}

Field bracket_theta(const Field& theta, const Field& theta_dag) {
  require_same_shape(theta, theta_dag, "bracket_theta");
  // theta_dag ^ theta = -(B A) dz^dzbar
  Field ab = wedge_dz_dzbar(theta, theta_dag);
  Field a = theta, b = theta_dag;
  a.set_form(Form::function);
  b.set_form(Form::function);
  Field ba = mul(b, a);
  ba.set_form(Form::one_one);
  return ab - ba;
}

Field morphism_adjoint(const Field& f, const Field& h_from, const Field& h_to) {
  if (f.cols() != h_from.rows() || f.rows() != h_to.rows() || f.n() != h_from.n() || f.n() != h_to.n())
    throw ShapeError("morphism_adjoint: shape mismatch");
  Field out(f.n(), f.cols(), f.rows(), f.form());
  kernels::pointwise_adjoint(h_from.data(), f.data(), h_to.data(), out.data(), f.points(),
                             h_from.rows(), h_to.rows(), kernels::default_exec());
  return out;
}

double HolomorphyResiduals::max() const { return std::max({theta1, theta2, phi, psi}); }

namespace {

Field as_function(Field f) {
  f.set_form(Form::function);
  return f;
}

// sup over points of sqrt(|a|^2 + |b|^2)
double pair_sup(const Field& a, const Field& b) {
  double m = 0;
  for (int p = 0; p < a.points(); ++p)
    m = std::max(m, std::sqrt(a.mat(p).squaredNorm() + b.mat(p).squaredNorm()));
  return m;
}

}  // namespace

HolomorphyResiduals holomorphy_residuals(const QuadrupletSpec& q) {
  q.validate();
  HolomorphyResiduals r;
  Field t1 = as_function(q.theta1), t2 = as_function(q.theta2);
  r.theta1 = sup_norm(dbar(t1));
  r.theta2 = sup_norm(dbar(t2));
  // within equal-degree blocks the background connections cancel
  Field dphi = dbar(q.phi), dpsi = dbar(q.psi);
  Field cphi = mul(t2, q.phi) - mul(q.phi, t1);
  Field cpsi = mul(q.psi, t2) - mul(t1, q.psi);
  r.phi = pair_sup(dphi, cphi);
  r.psi = pair_sup(dpsi, cpsi);
  return r;
}

double composition_residual(const QuadrupletSpec& q) {
  return std::max(sup_norm(mul(q.phi, q.psi)), sup_norm(mul(q.psi, q.phi)));
}

}  // namespace vx
