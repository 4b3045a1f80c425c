#include "vortexlab/hyperkahler.hpp"

#include <cmath>

#include "vortexlab/random_fields.hpp"

namespace vx {

constexpr double kPi = 3.14159265358979323846264338327950288;
const cplx kI(0, 1);

namespace {

Field commutator(const Field& a, const Field& b) { return mul(a, b) - mul(b, a); }

Field adjoint_field(const Field& a) {
  Field out(a.n(), a.cols(), a.rows(), a.form());
  for (int p = 0; p < a.points(); ++p) out.mat(p) = a.mat(p).adjoint();
  return out;
}

// Re int tr(a b^dagger)
double re_inner(const Field& a, const Field& b) {
  require_same_shape(a, b, "inner product");
  double s = 0;
  for (int p = 0; p < a.points(); ++p) s += (a.mat(p).array() * b.mat(p).array().conjugate()).sum().real();
  return s / a.points();
}

double sup_skew_defect(const Field& a) {
  double m = 0;
  for (int p = 0; p < a.points(); ++p) m = std::max(m, (a.mat(p) + a.mat(p).adjoint()).norm());
  return m;
}

OneForm star(const OneForm& a) { return {-1.0 * a[1], a[0]}; }
OneForm neg(const OneForm& a) { return {-1.0 * a[0], -1.0 * a[1]}; }

void add_identity(Field& f, cplx s) {
  for (int p = 0; p < f.points(); ++p)
    for (int k = 0; k < f.rows(); ++k) f(p, k, k) += s;
}

// entries (i, j) may only be nonzero between summands of equal degree
void mask_degrees(Field& f, const std::vector<int>& row_deg, const std::vector<int>& col_deg) {
  for (int i = 0; i < f.rows(); ++i)
    for (int j = 0; j < f.cols(); ++j)
      if (row_deg[i] != col_deg[j])
        for (int p = 0; p < f.points(); ++p) f(p, i, j) = 0;
}

Field skew_masked(int n, const std::vector<int>& deg, std::mt19937_64& rng, double amp, int modes = 2) {
  Field f = random_skew_hermitian(n, int(deg.size()), rng, modes, amp);
  mask_degrees(f, deg, deg);
  return f;
}

Field conj_by(const Field& g, const Field& m) { return mul(mul(g, m), adjoint_field(g)); }

Field sqrt_metric(const Field& h) {
  Field out(h.n(), h.rows(), h.cols());
  for (int p = 0; p < h.points(); ++p) {
    Eigen::SelfAdjointEigenSolver<MatC> es{MatC(h.mat(p))};
    out.mat(p) = es.operatorSqrt();
  }
  return out;
}

}  // namespace

TangentData& TangentData::operator+=(const TangentData& o) {
  for (int k = 0; k < 2; ++k) {
    A1_dot[k] += o.A1_dot[k];
    Phi1_dot[k] += o.Phi1_dot[k];
    A2_dot[k] += o.A2_dot[k];
    Phi2_dot[k] += o.Phi2_dot[k];
  }
  f += o.f;
  g_dir += o.g_dir;
  return *this;
}

TangentData& TangentData::operator*=(double s) {
  for (int k = 0; k < 2; ++k) {
    A1_dot[k] *= s;
    Phi1_dot[k] *= s;
    A2_dot[k] *= s;
    Phi2_dot[k] *= s;
  }
  f *= s;
  g_dir *= s;
  return *this;
}

TangentData operator+(TangentData a, const TangentData& b) { return a += b; }
TangentData operator-(TangentData a, const TangentData& b) { return a += (-1.0) * b; }
TangentData operator*(double s, TangentData a) { return a *= s; }

void check_tangent(const TangentData& a, double tol) {
  for (int k = 0; k < 2; ++k)
    for (const Field* f : {&a.A1_dot[k], &a.Phi1_dot[k], &a.A2_dot[k], &a.Phi2_dot[k]})
      if (sup_skew_defect(*f) > tol) throw ConstraintError("tangent 1-form slot is not skew-Hermitian");
  const int r1 = a.A1_dot[0].rows(), r2 = a.A2_dot[0].rows();
  if (a.f.rows() != r2 || a.f.cols() != r1 || a.g_dir.rows() != r1 || a.g_dir.cols() != r2)
    throw ShapeError("tangent coupling slots have the wrong shape");
}

void check_gauge_direction(const GaugeDirection& xi, double tol) {
  if (sup_skew_defect(xi.u) > tol || sup_skew_defect(xi.v) > tol)
    throw ConstraintError("gauge direction is not skew-Hermitian");
}

Configuration displace(const Configuration& x, const TangentData& a, double eps) {
  Configuration y = x;
  for (int k = 0; k < 2; ++k) {
    y.A1[k] += eps * a.A1_dot[k];
    y.Phi1[k] += eps * a.Phi1_dot[k];
    y.A2[k] += eps * a.A2_dot[k];
    y.Phi2[k] += eps * a.Phi2_dot[k];
  }
  y.phi += eps * a.f;
  y.psi += eps * a.g_dir;
  return y;
}

TangentData zero_tangent(const Configuration& x) {
  const int n = x.n(), r1 = x.r1(), r2 = x.r2();
  TangentData t;
  for (int k = 0; k < 2; ++k) {
    t.A1_dot[k] = Field(n, r1, r1);
    t.Phi1_dot[k] = Field(n, r1, r1);
    t.A2_dot[k] = Field(n, r2, r2);
    t.Phi2_dot[k] = Field(n, r2, r2);
  }
  t.f = Field(n, r2, r1);
  t.g_dir = Field(n, r1, r2);
  return t;
}

double tangent_distance(const TangentData& a, const TangentData& b) {
  double m = 0;
  for (int k = 0; k < 2; ++k) {
    m = std::max(m, sup_abs_entry(a.A1_dot[k] - b.A1_dot[k]));
    m = std::max(m, sup_abs_entry(a.Phi1_dot[k] - b.Phi1_dot[k]));
    m = std::max(m, sup_abs_entry(a.A2_dot[k] - b.A2_dot[k]));
    m = std::max(m, sup_abs_entry(a.Phi2_dot[k] - b.Phi2_dot[k]));
  }
  m = std::max(m, sup_abs_entry(a.f - b.f));
  m = std::max(m, sup_abs_entry(a.g_dir - b.g_dir));
  return m;
}

double metric_g(const TangentData& a, const TangentData& b, double kappa) {
  // -Tr(a b) = Re tr(a b^dagger) for skew-Hermitian a, b
  double s = 0;
  for (int k = 0; k < 2; ++k) {
    s += re_inner(a.A1_dot[k], b.A1_dot[k]) + re_inner(a.Phi1_dot[k], b.Phi1_dot[k]);
    s += re_inner(a.A2_dot[k], b.A2_dot[k]) + re_inner(a.Phi2_dot[k], b.Phi2_dot[k]);
  }
  return s + kappa * (re_inner(a.f, b.f) + re_inner(a.g_dir, b.g_dir));
}

TangentData apply_I(const TangentData& a) {
  TangentData t;
  t.A1_dot = star(a.A1_dot);
  t.Phi1_dot = neg(star(a.Phi1_dot));
  t.A2_dot = star(a.A2_dot);
  t.Phi2_dot = neg(star(a.Phi2_dot));
  t.f = kI * a.f;
  t.g_dir = kI * a.g_dir;
  return t;
}

TangentData apply_J(const TangentData& a) {
  TangentData t;
  t.A1_dot = neg(a.Phi1_dot);
  t.Phi1_dot = a.A1_dot;
  t.A2_dot = neg(a.Phi2_dot);
  t.Phi2_dot = a.A2_dot;
  t.f = -1.0 * adjoint_field(a.g_dir);
  t.g_dir = adjoint_field(a.f);
  return t;
}

TangentData apply_K(const TangentData& a) { return apply_I(apply_J(a)); }

TangentData apply(Structure s, const TangentData& a) {
  switch (s) {
    case Structure::I: return apply_I(a);
    case Structure::J: return apply_J(a);
    case Structure::K: return apply_K(a);
  }
  return a;
}

double omega(Structure s, const TangentData& a, const TangentData& b, double kappa) {
  return metric_g(apply(s, a), b, kappa);
}

Field curvature_xy(const OneForm& A, const std::vector<int>& degrees) {
  Field F = dx(A[1]) - dy(A[0]) + commutator(A[0], A[1]);
  for (int k = 0; k < F.rows(); ++k) {
    const cplx bg = -2.0 * kPi * kI * double(degrees[k]);
    for (int p = 0; p < F.points(); ++p) F(p, k, k) += bg;
  }
  return F;
}

MomentI moment_mu_I(const Configuration& x) {
  Field phid = adjoint_field(x.phi), psid = adjoint_field(x.psi);
  MomentI m;
  m.mu1 = curvature_xy(x.A1, x.deg1) - commutator(x.Phi1[0], x.Phi1[1]);
  m.mu1 += kI * mul(phid, x.phi);
  m.mu1 -= kI * mul(x.psi, psid);
  m.mu2 = curvature_xy(x.A2, x.deg2) - commutator(x.Phi2[0], x.Phi2[1]);
  m.mu2 -= kI * mul(x.phi, phid);
  m.mu2 += kI * mul(psid, x.psi);
  return m;
}

double pairing(const MomentI& m, const GaugeDirection& xi) {
  return (integrate_trace(mul(xi.u, m.mu1)) + integrate_trace(mul(xi.v, m.mu2))).real();
}

TangentData infinitesimal_action(const Configuration& x, const GaugeDirection& xi) {
  TangentData t;
  t.A1_dot = {dx(xi.u) + commutator(x.A1[0], xi.u), dy(xi.u) + commutator(x.A1[1], xi.u)};
  t.Phi1_dot = {commutator(x.Phi1[0], xi.u), commutator(x.Phi1[1], xi.u)};
  t.A2_dot = {dx(xi.v) + commutator(x.A2[0], xi.v), dy(xi.v) + commutator(x.A2[1], xi.v)};
  t.Phi2_dot = {commutator(x.Phi2[0], xi.v), commutator(x.Phi2[1], xi.v)};
  t.f = mul(x.phi, xi.u) - mul(xi.v, x.phi);
  t.g_dir = mul(x.psi, xi.v) - mul(xi.u, x.psi);
  return t;
}

Configuration gauge_transform(const Configuration& x, const Field& g1, const Field& g2) {
  Configuration y = x;
  Field g1i = adjoint_field(g1), g2i = adjoint_field(g2);
  for (int k = 0; k < 2; ++k) {
    Field d1 = k == 0 ? dx(g1i) : dy(g1i);
    Field d2 = k == 0 ? dx(g2i) : dy(g2i);
    y.A1[k] = mul(mul(g1, x.A1[k]), g1i) + mul(g1, d1);
    y.A2[k] = mul(mul(g2, x.A2[k]), g2i) + mul(g2, d2);
    y.Phi1[k] = mul(mul(g1, x.Phi1[k]), g1i);
    y.Phi2[k] = mul(mul(g2, x.Phi2[k]), g2i);
  }
  y.phi = mul(mul(g2, x.phi), g1i);
  y.psi = mul(mul(g1, x.psi), g2i);
  return y;
}

MomentCheck moment_map_property_check(const Configuration& x, const TangentData& a,
                                      const GaugeDirection& xi, double step) {
  MomentCheck c;
  c.lhs = (pairing(moment_mu_I(displace(x, a, step)), xi) - pairing(moment_mu_I(displace(x, a, -step)), xi)) /
          (2 * step);
  c.rhs = omega_I(infinitesimal_action(x, xi), a);
  c.error = std::abs(c.lhs - c.rhs);
  return c;
}

double QuaternionCheck::max() const { return std::max({I2, J2, K2, K_eq_IJ, IJ_anti, g_invariance}); }

QuaternionCheck quaternion_check(const TangentData& a, const TangentData& b) {
  QuaternionCheck q;
  TangentData ma = -1.0 * a;
  q.I2 = tangent_distance(apply_I(apply_I(a)), ma);
  q.J2 = tangent_distance(apply_J(apply_J(a)), ma);
  q.K2 = tangent_distance(apply_K(apply_K(a)), ma);
  q.K_eq_IJ = tangent_distance(apply_K(a), apply_I(apply_J(a)));
  q.IJ_anti = tangent_distance(apply_I(apply_J(a)), -1.0 * apply_J(apply_I(a)));
  const double gab = metric_g(a, b);
  for (Structure s : {Structure::I, Structure::J, Structure::K})
    q.g_invariance = std::max(q.g_invariance, std::abs(metric_g(apply(s, a), apply(s, b)) - gab));
  return q;
}

double equivariance_check(const Configuration& x, const GaugeDirection& U) {
  Field g1 = field_exp(U.u), g2 = field_exp(U.v);
  MomentI m = moment_mu_I(x), mg = moment_mu_I(gauge_transform(x, g1, g2));
  return std::max(sup_norm(mg.mu1 - conj_by(g1, m.mu1)), sup_norm(mg.mu2 - conj_by(g2, m.mu2)));
}

namespace {

// Chern connection of h and theta, moved to the frame g = h^(1/2)
void to_unitary(const Field& h, const Field& theta, OneForm& A, OneForm& Phi, Field& g) {
  g = sqrt_metric(h);
  Field gi = inverse(g);
  Field dh = del(h);
  dh.set_form(Form::function);
  Field a = mul(mul(g, mul(inverse(h), dh)), gi);  // dz part
  A[0] = a + mul(g, dx(gi));
  A[1] = kI * a + mul(g, dy(gi));
  Field t = theta;
  t.set_form(Form::function);
  Field tu = mul(mul(g, t), gi);
  Field tud = adjoint_field(tu);
  Phi[0] = tu - tud;
  Phi[1] = kI * (tu + tud);
}

}  // namespace

Configuration unitary_frame(const QuadrupletSpec& q, const MetricPair& h) {
  q.validate();
  h.validate(1e-10);
  Configuration x;
  x.deg1 = q.deg1;
  x.deg2 = q.deg2;
  Field g1, g2;
  to_unitary(h.h1, q.theta1, x.A1, x.Phi1, g1);
  to_unitary(h.h2, q.theta2, x.A2, x.Phi2, g2);
  x.phi = mul(mul(g2, q.phi), inverse(g1));
  x.psi = mul(mul(g1, q.psi), inverse(g2));
  return x;
}

CrossModuleCheck cross_module_check(const QuadrupletSpec& q, const MetricPair& h, const VortexConstants& c) {
  CrossModuleCheck out;
  Configuration x = unitary_frame(q, h);
  MomentI m = moment_mu_I(x);
  add_identity(m.mu1, 2.0 * kPi * kI * c.tau_d());
  add_identity(m.mu2, 2.0 * kPi * kI * c.tau_prime_d());
  VortexResidual r = residual(q, h, c, CouplingSigns::reduction);
  Field g1 = sqrt_metric(h.h1), g2 = sqrt_metric(h.h2);
  Field R1u = mul(mul(g1, r.R1), inverse(g1)), R2u = mul(mul(g2, r.R2), inverse(g2));
  out.mu_vs_residual = std::max(sup_norm(m.mu1 - R1u), sup_norm(m.mu2 - R2u));
  out.mu_off_center = std::max(sup_norm(m.mu1), sup_norm(m.mu2));
  out.holomorphy = std::max(holomorphy_residuals(q).max(), composition_residual(q));
  return out;
}

Configuration random_configuration(int n, const std::vector<int>& deg1, const std::vector<int>& deg2,
                                   std::mt19937_64& rng, double amplitude) {
  Configuration x;
  x.deg1 = deg1;
  x.deg2 = deg2;
  for (int k = 0; k < 2; ++k) {
    x.A1[k] = skew_masked(n, deg1, rng, amplitude);
    x.Phi1[k] = skew_masked(n, deg1, rng, amplitude);
    x.A2[k] = skew_masked(n, deg2, rng, amplitude);
    x.Phi2[k] = skew_masked(n, deg2, rng, amplitude);
  }
  x.phi = random_smooth_field(n, int(deg2.size()), int(deg1.size()), rng, 2, amplitude);
  mask_degrees(x.phi, deg2, deg1);
  x.psi = random_smooth_field(n, int(deg1.size()), int(deg2.size()), rng, 2, amplitude);
  mask_degrees(x.psi, deg1, deg2);
  return x;
}

TangentData random_tangent(const Configuration& x, std::mt19937_64& rng, double amplitude) {
  Configuration y = random_configuration(x.n(), x.deg1, x.deg2, rng, amplitude);
  TangentData t;
  t.A1_dot = y.A1;
  t.Phi1_dot = y.Phi1;
  t.A2_dot = y.A2;
  t.Phi2_dot = y.Phi2;
  t.f = y.phi;
  t.g_dir = y.psi;
  return t;
}

GaugeDirection random_gauge_direction(const Configuration& x, std::mt19937_64& rng, double amplitude) {
  // single Fourier mode keeps exp(U) resolved at n = 32
  return {skew_masked(x.n(), x.deg1, rng, amplitude, 1), skew_masked(x.n(), x.deg2, rng, amplitude, 1)};
}

}  // namespace vx
