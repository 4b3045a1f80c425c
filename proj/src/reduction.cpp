#include "vortexlab/reduction.hpp"

#include <cmath>
#include <functional>

#include "vortexlab/random_fields.hpp"

namespace vx {

constexpr double kPi = 3.14159265358979323846264338327950288;
const cplx kI(0, 1);

namespace {

// 6th order central stencils
constexpr double kD1[3] = {45.0 / 60.0, -9.0 / 60.0, 1.0 / 60.0};
constexpr double kD2c = -49.0 / 18.0;
constexpr double kD2[3] = {3.0 / 2.0, -3.0 / 20.0, 1.0 / 90.0};
constexpr double kStep2 = 5e-3;
constexpr double kStep1 = 1e-3;

template <class T, class F>
T central_d1(F f, cplx c, cplx dir, double h) {
  T s = kD1[0] * (f(c + dir * h) - f(c - dir * h));
  s += kD1[1] * (f(c + dir * (2 * h)) - f(c - dir * (2 * h)));
  s += kD1[2] * (f(c + dir * (3 * h)) - f(c - dir * (3 * h)));
  return s / h;
}

// d/dc and d/dcbar of a matrix valued function of the chart coordinate
MatC d_holo(const std::function<MatC(cplx)>& f, cplx c) {
  MatC du = central_d1<MatC>(f, c, cplx(1, 0), kStep1);
  MatC dv = central_d1<MatC>(f, c, cplx(0, 1), kStep1);
  return 0.5 * (du - kI * dv);
}

MatC d_anti(const std::function<MatC(cplx)>& f, cplx c) {
  MatC du = central_d1<MatC>(f, c, cplx(1, 0), kStep1);
  MatC dv = central_d1<MatC>(f, c, cplx(0, 1), kStep1);
  return 0.5 * (du + kI * dv);
}

double p1_metric2(cplx c) { return line_metric(2, c); }

// d/dc of h^(2) = (1+|c|^2)^-2
cplx d_p1_metric2(cplx c) {
  double s = 1.0 + std::norm(c);
  return -2.0 * std::conj(c) / (s * s * s);
}

MatC commutator(const MatC& a, const MatC& b) { return a * b - b * a; }

MatC block_diag(const MatC& a, const MatC& b) {
  MatC m = MatC::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  m.topLeftCorner(a.rows(), a.cols()) = a;
  m.bottomRightCorner(b.rows(), b.cols()) = b;
  return m;
}

}  // namespace

// ---------------- O(n) on P^1 ----------------

cplx p1_contracted_curvature(int n, cplx c) {
  auto lg = [n](cplx z) { return std::log(line_metric(n, z)); };
  const double h = kStep2;
  double lap = 2 * kD2c * lg(c);
  for (int k = 1; k <= 3; ++k) {
    lap += kD2[k - 1] * (lg(c + double(k) * h) + lg(c - double(k) * h));
    lap += kD2[k - 1] * (lg(c + kI * (double(k) * h)) + lg(c - kI * (double(k) * h)));
  }
  lap /= h * h;
  // F = dbar del log h = (lap/4) dzbar^dz; Lambda(dzbar^dz) = 2i / rho
  return kI * 0.5 * lap / fs_density(c);
}

double deg_p1(int n, int n_radial, int n_angular) {
  auto q = p1_quadrature(n_radial, n_angular);
  cplx s = 0;
  for (const P1Chart* ch : {&q.first, &q.second})
    for (std::size_t i = 0; i < ch->points.size(); ++i)
      s += ch->weights[i] * p1_contracted_curvature(n, ch->points[i]);
  return (kI / (2 * kPi) * s).real();
}

FsConstant fs_contraction_constant(int twist, int n_radial, int n_angular) {
  auto q = p1_quadrature(n_radial, n_angular);
  std::vector<cplx> vals;
  cplx mean = 0;
  for (const P1Chart* ch : {&q.first, &q.second})
    for (cplx p : ch->points) {
      vals.push_back(p1_contracted_curvature(twist, p));
      mean += vals.back();
    }
  mean /= double(vals.size());
  double dev = 0;
  for (cplx v : vals) dev = std::max(dev, std::abs(v - mean));
  return {mean, dev};
}

// ---------------- alpha, beta ----------------

cplx alpha_coeff(Chart ch, cplx c) {
  double s = 1.0 + std::norm(c);
  return (ch == Chart::z ? 1.0 : -1.0) / (s * s);
}

cplx beta_coeff(Chart ch, cplx) { return ch == Chart::z ? 1.0 : -1.0; }

// round metric with |dz|^2 = (1+|z|^2)^2
double alpha_norm2(Chart ch, cplx c) {
  double s = 1.0 + std::norm(c);
  return std::norm(alpha_coeff(ch, c)) * line_metric(-2, c) * s * s;
}

double beta_norm2(Chart ch, cplx c) {
  double s = 1.0 + std::norm(c);
  return std::norm(beta_coeff(ch, c)) * line_metric(2, c) * s * s;
}

Calibration calibrate_alpha_beta(double sigma, int samples, unsigned seed) {
  if (!(sigma > 0)) throw std::invalid_argument("calibration needs sigma > 0");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Calibration cal;
  double amin = 1e300, amax = -1e300, bmin = 1e300, bmax = -1e300;
  for (int k = 0; k < samples; ++k) {
    Chart ch = k % 2 ? Chart::w : Chart::z;
    cplx c = std::polar(std::sqrt(u(rng)), 2 * kPi * u(rng));
    double hp = line_metric(2, c), rho = fs_density(c);
    // alpha ^ alpha*: a dzbar ^ (abar / h^(2)) dz = (|a|^2/h^(2)) 2i dx^dy
    cplx a = alpha_coeff(ch, c), b = beta_coeff(ch, c);
    cplx wa = std::norm(a) / hp * 2.0 * kI;
    // beta* ^ beta: bbar h^(2) dzbar ^ b dz
    cplx wb = std::norm(b) * hp * 2.0 * kI;
    // as multiples of 2i omega_P1 = 2i rho dx^dy
    double ra = (wa / (2.0 * kI * rho)).real(), rb = (wb / (2.0 * kI * rho)).real();
    amin = std::min(amin, ra);
    amax = std::max(amax, ra);
    bmin = std::min(bmin, rb);
    bmax = std::max(bmax, rb);
  }
  cal.raw_alpha = 0.5 * (amin + amax);
  cal.raw_beta = 0.5 * (bmin + bmax);
  cal.max_spread = std::max(amax - amin, bmax - bmin);
  // c^2 raw 2i = 2i / sigma
  cal.c_alpha = 1.0 / std::sqrt(sigma * cal.raw_alpha);
  cal.c_beta = 1.0 / std::sqrt(sigma * cal.raw_beta);
  return cal;
}

ContractionWeights weights_for(double sigma, bool sigma_on_p1) {
  return {2.0 / sigma, sigma_on_p1 ? 1.0 / sigma : 1.0};
}

std::vector<ProductPoint> random_product_points(int n, int count, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> idx(0, n * n - 1);
  std::vector<ProductPoint> pts;
  for (int k = 0; k < count; ++k) {
    ProductPoint p;
    p.torus_index = idx(rng);
    p.chart = u(rng) < 0.5 ? Chart::z : Chart::w;
    p.coord = std::polar(std::sqrt(u(rng)), 2 * kPi * u(rng));
    pts.push_back(p);
  }
  return pts;
}

// ---------------- assembly ----------------

namespace {

struct Ctx {
  const QuadrupletSpec& q;
  const MetricPair& h;
  Calibration cal;
  Field del_h1, del_h2;  // del of the metrics on X
  int r1, r2, R;
};

MatC H_at(const Ctx& x, int p, cplx c) {
  return block_diag(MatC(x.h.h1.mat(p)), MatC(x.h.h2.mat(p)) * p1_metric2(c));
}

MatC dPH_at(const Ctx& x, int p, cplx c) {
  return block_diag(MatC::Zero(x.r1, x.r1), MatC(x.h.h2.mat(p)) * d_p1_metric2(c));
}

MatC Bp_at(const Ctx& x, Chart ch, int p, cplx c) {
  MatC m = MatC::Zero(x.R, x.R);
  m.topRightCorner(x.r1, x.r2) = MatC(x.q.psi.mat(p)) * (x.cal.c_alpha * alpha_coeff(ch, c));
  return m;
}

MatC thP_at(const Ctx& x, Chart ch, int p, cplx c) {
  MatC m = MatC::Zero(x.R, x.R);
  m.bottomLeftCorner(x.r2, x.r1) = MatC(x.q.phi.mat(p)) * (x.cal.c_beta * beta_coeff(ch, c));
  return m;
}

MatC thX_at(const Ctx& x, int p) {
  return block_diag(MatC(x.q.theta1.mat(p)), MatC(x.q.theta2.mat(p)));
}

MatC AX_at(const Ctx& x, int p, cplx c) {
  MatC dH = block_diag(MatC(x.del_h1.mat(p)), MatC(x.del_h2.mat(p)) * p1_metric2(c));
  return H_at(x, p, c).partialPivLu().solve(dH);
}

// (1,0) part of the Chern connection of (dbar_F, H) along P^1
MatC AP_at(const Ctx& x, Chart ch, int p, cplx c) {
  MatC H = H_at(x, p, c);
  MatC B = Bp_at(x, ch, p, c);
  return H.partialPivLu().solve(dPH_at(x, p, c) - B.adjoint() * H);
}

MatC adj(const MatC& H, const MatC& m) { return H.partialPivLu().solve(m.adjoint() * H); }

Field grid_of(int n, int R, const std::function<MatC(int)>& f) {
  Field g(n, R, R);
  for (int p = 0; p < g.points(); ++p) g.mat(p) = f(p);
  return g;
}

}  // namespace

AssembledF assemble_F(const QuadrupletSpec& q, const MetricPair& h, double sigma,
                      const std::vector<ProductPoint>& pts, bool sigma_on_p1) {
  q.validate();
  h.validate(1e-10);
  if (!(sigma > 0)) throw std::invalid_argument("assemble_F needs sigma > 0");
  Ctx x{q, h, calibrate_alpha_beta(sigma), del(h.h1), del(h.h2), q.r1(), q.r2(), q.r1() + q.r2()};
  x.del_h1.set_form(Form::function);
  x.del_h2.set_form(Form::function);
  const int n = q.n(), R = x.R;
  AssembledF out;
  out.r1 = x.r1;
  out.r2 = x.r2;
  out.sigma = sigma;
  out.cal = x.cal;
  const ContractionWeights w = weights_for(sigma, sigma_on_p1);

  MatC bg = MatC::Zero(R, R);
  for (int k = 0; k < x.r1; ++k) bg(k, k) = kPi * q.deg1[k];
  for (int k = 0; k < x.r2; ++k) bg(x.r1 + k, x.r1 + k) = kPi * q.deg2[k];

  auto dbar_at = [](const Field& g, int p) {
    Field d = dbar(g);
    return MatC(d.mat(p));
  };
  auto del_at = [](const Field& g, int p) {
    Field d = del(g);
    return MatC(d.mat(p));
  };

  for (const auto& pt : pts) {
    const int j = pt.torus_index;
    const Chart ch = pt.chart;
    const cplx c = pt.coord;
    ProductPointData d;
    d.pt = pt;
    d.weights = w;
    d.H = H_at(x, j, c);
    d.dbar_x = MatC::Zero(R, R);
    d.dbar_p = Bp_at(x, ch, j, c);
    d.theta_x = thX_at(x, j);
    d.theta_p = thP_at(x, ch, j, c);

    // X derivatives need whole-grid fields at this P^1 point
    Field gAX = grid_of(n, R, [&](int p) { return AX_at(x, p, c); });
    Field gAP = grid_of(n, R, [&](int p) { return AP_at(x, ch, p, c); });
    Field gBp = grid_of(n, R, [&](int p) { return Bp_at(x, ch, p, c); });
    Field gThX = grid_of(n, R, [&](int p) { return thX_at(x, p); });
    Field gThP = grid_of(n, R, [&](int p) { return thP_at(x, ch, p, c); });

    const MatC AX = AX_at(x, j, c), AP = AP_at(x, ch, j, c), Bp = d.dbar_p;
    auto fAX = [&](cplx z) { return AX_at(x, j, z); };
    auto fAP = [&](cplx z) { return AP_at(x, ch, j, z); };
    auto fBp = [&](cplx z) { return Bp_at(x, ch, j, z); };
    auto fThX = [&](cplx z) { (void)z; return thX_at(x, j); };
    auto fThP = [&](cplx z) { return thP_at(x, ch, j, z); };

    // F_{a bbar} = d_a A_bbar - dbar_b A_a + [A_a, A_bbar], A_Xbar = 0
    d.F[0] = -dbar_at(gAX, j) + bg;
    d.F[1] = d_holo(fBp, c) - d_anti(fAP, c) + commutator(AP, Bp);
    d.F[2] = del_at(gBp, j) - d_anti(fAX, c) + commutator(AX, Bp);
    d.F[3] = -dbar_at(gAP, j);

    const MatC tx = d.theta_x, tp = d.theta_p;
    const MatC txd = adj(d.H, tx), tpd = adj(d.H, tp);
    const MatC Gxx = tx * txd - txd * tx;
    const MatC Gpp = tp * tpd - tpd * tp;
    const MatC total_xx = d.F[0] + Gxx, total_pp = d.F[1] + Gpp;
    d.lambda_total = -2.0 * kI * (w.x * total_xx + (w.p1 / fs_density(c)) * total_pp);

    // (dbar_F + theta_F)^2, every component
    double integ = 0;
    auto upd = [&](const MatC& m) { integ = std::max(integ, m.norm()); };
    upd(dbar_at(gBp, j));                                   // dzbar_X ^ dzbar_P
    upd(tx * tp - tp * tx);                                 // dz_X ^ dz_P
    upd(-dbar_at(gThX, j));                                 // dz_X ^ dzbar_X
    upd(-d_anti(fThP, c) + commutator(tp, Bp));             // dz_P ^ dzbar_P
    upd(-d_anti(fThX, c) + commutator(tx, Bp));             // dz_X ^ dzbar_P
    upd(-dbar_at(gThP, j));                                 // dz_P ^ dzbar_X
    d.integrability = integ;
    out.points.push_back(std::move(d));
  }
  return out;
}

HeResult he_residual_product(const AssembledF& a, cplx lambda) {
  HeResult r;
  const int r1 = a.r1, r2 = a.r2, R = r1 + r2;
  for (const auto& d : a.points) {
    Eigen::LLT<MatC> llt(d.H);
    MatC L = llt.matrixL();
    MatC G = d.lambda_total - lambda * MatC::Identity(R, R);
    // unitary frame: s_u = L^dagger s
    MatC Gu = L.adjoint() * G * L.adjoint().inverse();
    r.residual = std::max(r.residual, Gu.norm());
    r.block1 = std::max(r.block1, Gu.topLeftCorner(r1, r1).norm());
    r.block2 = std::max(r.block2, Gu.bottomRightCorner(r2, r2).norm());
    r.off_diagonal = std::max({r.off_diagonal, Gu.topRightCorner(r1, r2).norm(),
                               Gu.bottomLeftCorner(r2, r1).norm()});
  }
  return r;
}

double integrability_residual(const AssembledF& a) {
  double m = 0;
  for (const auto& d : a.points) m = std::max(m, d.integrability);
  return m;
}

// ---------------- degrees and volumes ----------------

double product_volume(double sigma, int n_radial, int n_angular) {
  auto q = p1_quadrature(n_radial, n_angular);
  double p1 = integrate_p1(q, [](Chart, cplx) { return 1.0; });
  return 0.5 * sigma * 1.0 * p1;
}

double block_bundle_degree(const QuadInvariants& inv, double sigma, int n_radial, int n_angular) {
  auto q = p1_quadrature(n_radial, n_angular);
  double p1 = integrate_p1(q, [](Chart, cplx) { return 1.0; });
  return (inv.d1 + inv.d2) * p1 + inv.r2 * 0.5 * sigma * deg_p1(2, n_radial, n_angular);
}

cplx lambda_from_quadrature(const QuadInvariants& amb, double sigma) {
  double vol = product_volume(sigma);
  return -2.0 * kPi * kI / vol * (block_bundle_degree(amb, sigma) / (amb.r1 + amb.r2));
}

Rational block_bundle_degree_exact(const QuadInvariants& inv, const Rational& sigma) {
  return Rational(inv.d1 + inv.d2) + sigma * Rational(inv.r2);
}

// ---------------- iota ----------------

void check_iota_components(const IotaComponents& c, const MetricPair& h, double tol) {
  auto skew = [&](const Field& psi, const Field& hh, const char* name) {
    for (int p = 0; p < psi.points(); ++p) {
      MatC m = hh.mat(p) * psi.mat(p) + psi.mat(p).adjoint() * hh.mat(p);
      if (m.norm() > tol * std::max(1.0, psi.mat(p).norm()))
        throw ConstraintError(std::string(name) + " is not skew-Hermitian with respect to the metric");
    }
  };
  auto compat = [&](const Field& a, const Field& dh, const Field& hh, const char* name) {
    for (int p = 0; p < a.points(); ++p) {
      MatC m = hh.mat(p) * a.mat(p) + a.mat(p).adjoint() * hh.mat(p) - dh.mat(p);
      if (m.norm() > tol * std::max(1.0, a.mat(p).norm()))
        throw ConstraintError(std::string(name) + " is not compatible with the metric");
    }
  };
  Field d1x = dx(h.h1), d1y = dy(h.h1), d2x = dx(h.h2), d2y = dy(h.h2);
  skew(c.Psi1[0], h.h1, "Psi1");
  skew(c.Psi1[1], h.h1, "Psi1");
  skew(c.Psi2[0], h.h2, "Psi2");
  skew(c.Psi2[1], h.h2, "Psi2");
  compat(c.A1[0], d1x, h.h1, "A1");
  compat(c.A1[1], d1y, h.h1, "A1");
  compat(c.A2[0], d2x, h.h2, "A2");
  compat(c.A2[1], d2y, h.h2, "A2");
}

InvariantConnection iota_assemble(const IotaComponents& comp, const MetricPair& h, double sigma,
                                  const std::vector<ProductPoint>& p1_points) {
  check_iota_components(comp, h);
  const int n = h.h1.n(), r1 = h.h1.rows(), r2 = h.h2.rows(), R = r1 + r2;
  if (int(p1_points.size()) != n * n) throw ShapeError("iota_assemble: need one P1 point per grid point");
  const Calibration cal = calibrate_alpha_beta(sigma);
  InvariantConnection out;
  out.r1 = r1;
  out.r2 = r2;
  for (int p = 0; p < n * n; ++p) {
    const ProductPoint& pt = p1_points[p];
    const cplx c = pt.coord;
    const double hp = p1_metric2(c);
    const cplx a = cal.c_alpha * alpha_coeff(pt.chart, c), b = cal.c_beta * beta_coeff(pt.chart, c);
    MatC h1 = h.h1.mat(p), h2 = h.h2.mat(p);
    MatC psi = comp.psi.mat(p), phi = comp.phi.mat(p);
    MatC psi_star = h2.partialPivLu().solve(psi.adjoint() * h1);
    MatC phi_star = h1.partialPivLu().solve(phi.adjoint() * h2);

    InvariantConnectionPoint q;
    q.pt = pt;
    for (int k = 0; k < 2; ++k)
      q.D[k] = block_diag(MatC(comp.A1[k].mat(p)) + kI * MatC(comp.Psi1[k].mat(p)),
                          MatC(comp.A2[k].mat(p)) + kI * MatC(comp.Psi2[k].mat(p)));
    MatC nP = MatC::Zero(R, R), nPb = MatC::Zero(R, R), fP = MatC::Zero(R, R), fPb = MatC::Zero(R, R);
    nP.bottomLeftCorner(r2, r1) = -(std::conj(a) / hp) * psi_star;
    nP.bottomRightCorner(r2, r2) = (d_p1_metric2(c) / hp) * MatC::Identity(r2, r2);
    nPb.topRightCorner(r1, r2) = a * psi;
    fP.bottomLeftCorner(r2, r1) = b * phi;
    fPb.topRightCorner(r1, r2) = -(std::conj(b) * hp) * phi_star;
    MatC DP = nP + kI * fP, DPb = nPb + kI * fPb;
    q.D[2] = DP + DPb;
    q.D[3] = kI * (DP - DPb);
    out.points.push_back(std::move(q));
  }
  return out;
}

IotaComponents iota_decompose(const InvariantConnection& d, const MetricPair& h, double sigma,
                              double tol) {
  const int n = h.h1.n(), r1 = d.r1, r2 = d.r2, R = r1 + r2;
  if (int(d.points.size()) != n * n) throw ShapeError("iota_decompose: size mismatch");
  const Calibration cal = calibrate_alpha_beta(sigma);
  Field d1[2] = {dx(h.h1), dy(h.h1)}, d2[2] = {dx(h.h2), dy(h.h2)};
  IotaComponents out;
  for (int k = 0; k < 2; ++k) {
    out.A1[k] = Field(n, r1, r1);
    out.Psi1[k] = Field(n, r1, r1);
    out.A2[k] = Field(n, r2, r2);
    out.Psi2[k] = Field(n, r2, r2);
  }
  out.phi = Field(n, r2, r1);
  out.psi = Field(n, r1, r2);

  auto fail = [](const char* what) {
    throw ConstraintError(std::string("not an invariant connection of block form: ") + what);
  };
  for (int p = 0; p < n * n; ++p) {
    const auto& q = d.points[p];
    const cplx c = q.pt.coord;
    const double hp = p1_metric2(c);
    const cplx dhp = d_p1_metric2(c);
    const cplx a = cal.c_alpha * alpha_coeff(q.pt.chart, c), b = cal.c_beta * beta_coeff(q.pt.chart, c);
    MatC H = block_diag(MatC(h.h1.mat(p)), MatC(h.h2.mat(p)) * hp);
    std::array<MatC, 4> dH;
    for (int k = 0; k < 2; ++k) dH[k] = block_diag(MatC(d1[k].mat(p)), MatC(d2[k].mat(p)) * hp);
    dH[2] = block_diag(MatC::Zero(r1, r1), MatC(h.h2.mat(p)) * (2.0 * dhp.real()));
    dH[3] = block_diag(MatC::Zero(r1, r1), MatC(h.h2.mat(p)) * (-2.0 * dhp.imag()));

    // unitary part of each real component, the rest is i Phi
    std::array<MatC, 4> A, iPhi;
    for (int k = 0; k < 4; ++k) {
      A[k] = 0.5 * (q.D[k] - adj(H, q.D[k]) + H.partialPivLu().solve(dH[k]));
      iPhi[k] = q.D[k] - A[k];
    }
    for (int k = 0; k < 2; ++k) {
      if (A[k].topRightCorner(r1, r2).norm() > tol || A[k].bottomLeftCorner(r2, r1).norm() > tol ||
          iPhi[k].topRightCorner(r1, r2).norm() > tol || iPhi[k].bottomLeftCorner(r2, r1).norm() > tol)
        fail("X components mix E1 and E2");
      out.A1[k].mat(p) = A[k].topLeftCorner(r1, r1);
      out.A2[k].mat(p) = A[k].bottomRightCorner(r2, r2);
      out.Psi1[k].mat(p) = -kI * iPhi[k].topLeftCorner(r1, r1);
      out.Psi2[k].mat(p) = -kI * iPhi[k].bottomRightCorner(r2, r2);
    }
    MatC AP = 0.5 * (A[2] - kI * A[3]), APb = 0.5 * (A[2] + kI * A[3]);
    MatC FP = 0.5 * (iPhi[2] - kI * iPhi[3]), FPb = 0.5 * (iPhi[2] + kI * iPhi[3]);
    MatC psi = APb.topRightCorner(r1, r2) / a;
    MatC phi = FP.bottomLeftCorner(r2, r1) / (kI * b);
    out.psi.mat(p) = psi;
    out.phi.mat(p) = phi;

    // remaining entries are forced by (phi, psi) and the O(2) connection
    MatC expectAP = MatC::Zero(R, R);
    MatC psi_star = MatC(h.h2.mat(p)).partialPivLu().solve(psi.adjoint() * MatC(h.h1.mat(p)));
    expectAP.bottomLeftCorner(r2, r1) = -(std::conj(a) / hp) * psi_star;
    expectAP.bottomRightCorner(r2, r2) = (dhp / hp) * MatC::Identity(r2, r2);
    MatC expectAPb = MatC::Zero(R, R);
    expectAPb.topRightCorner(r1, r2) = a * psi;
    if ((AP - expectAP).norm() > tol * std::max(1.0, AP.norm()) ||
        (APb - expectAPb).norm() > tol * std::max(1.0, APb.norm()))
      fail("P1 part of the unitary connection");
    MatC expectFP = MatC::Zero(R, R);
    expectFP.bottomLeftCorner(r2, r1) = kI * b * phi;
    if ((FP - expectFP).norm() > tol * std::max(1.0, FP.norm())) fail("P1 part of the Higgs field");
  }
  return out;
}

double iota_component_distance(const IotaComponents& a, const IotaComponents& b) {
  double m = 0;
  for (int k = 0; k < 2; ++k) {
    m = std::max(m, sup_norm(a.A1[k] - b.A1[k]));
    m = std::max(m, sup_norm(a.Psi1[k] - b.Psi1[k]));
    m = std::max(m, sup_norm(a.A2[k] - b.A2[k]));
    m = std::max(m, sup_norm(a.Psi2[k] - b.Psi2[k]));
  }
  m = std::max(m, sup_norm(a.phi - b.phi));
  m = std::max(m, sup_norm(a.psi - b.psi));
  return m;
}

IotaComponents random_iota_components(const MetricPair& h, std::mt19937_64& rng) {
  const int n = h.h1.n(), r1 = h.h1.rows(), r2 = h.h2.rows();
  IotaComponents c;
  auto build = [&](const Field& hh, int r, std::array<Field, 2>& A, std::array<Field, 2>& Psi) {
    Field hinv = inverse(hh);
    Field dh[2] = {dx(hh), dy(hh)};
    for (int k = 0; k < 2; ++k) {
      A[k] = 0.5 * mul(hinv, dh[k]) + mul(hinv, random_skew_hermitian(n, r, rng));
      Psi[k] = mul(hinv, random_skew_hermitian(n, r, rng));
    }
  };
  build(h.h1, r1, c.A1, c.Psi1);
  build(h.h2, r2, c.A2, c.Psi2);
  c.phi = random_smooth_field(n, r2, r1, rng);
  c.psi = random_smooth_field(n, r1, r2, rng);
  return c;
}

}  // namespace vx
