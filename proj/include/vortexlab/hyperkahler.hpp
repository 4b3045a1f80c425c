#ifndef VORTEXLAB_HYPERKAHLER_HPP
#define VORTEXLAB_HYPERKAHLER_HPP

#include <array>
#include <random>
#include <vector>

#include "vortexlab/higgs.hpp"
#include "vortexlab/vortex.hpp"

namespace vx {

// real 1-form, components along dx and dy
using OneForm = std::array<Field, 2>;

// Everything here lives in a unitary frame (h = Id).  Connections are
// written relative to the fixed background connection, so the degree only
// enters through the constant background curvature.
struct Configuration {
  std::vector<int> deg1, deg2;
  OneForm A1, Phi1, A2, Phi2;  // skew-Hermitian components
  Field phi;                   // r2 x r1
  Field psi;                   // r1 x r2

  int n() const { return phi.n(); }
  int r1() const { return int(deg1.size()); }
  int r2() const { return int(deg2.size()); }
};

struct TangentData {
  OneForm A1_dot, Phi1_dot, A2_dot, Phi2_dot;
  Field f;      // r2 x r1
  Field g_dir;  // r1 x r2

  TangentData& operator+=(const TangentData& o);
  TangentData& operator*=(double s);
};

TangentData operator+(TangentData a, const TangentData& b);
TangentData operator-(TangentData a, const TangentData& b);
TangentData operator*(double s, TangentData a);

struct GaugeDirection {
  Field u, v;  // skew-Hermitian, on E1 and E2
};

void check_tangent(const TangentData& a, double tol = 1e-12);
void check_gauge_direction(const GaugeDirection& xi, double tol = 1e-12);
// tangent data at x pointing along itself (used for x +- eps a)
Configuration displace(const Configuration& x, const TangentData& a, double eps);
TangentData zero_tangent(const Configuration& x);
double tangent_distance(const TangentData& a, const TangentData& b);

// weight of the Hom(E1,E2) and Hom(E2,E1) slots in g
constexpr double kCouplingWeight = 2.0;

double metric_g(const TangentData& a, const TangentData& b, double kappa = kCouplingWeight);

enum class Structure { I, J, K };
TangentData apply_I(const TangentData& a);
TangentData apply_J(const TangentData& a);
TangentData apply_K(const TangentData& a);
TangentData apply(Structure s, const TangentData& a);

// omega_S(a, b) = g(S a, b)
double omega(Structure s, const TangentData& a, const TangentData& b, double kappa = kCouplingWeight);
inline double omega_I(const TangentData& a, const TangentData& b, double kappa = kCouplingWeight) {
  return omega(Structure::I, a, b, kappa);
}

// F(A) as the coefficient of dx^dy, background included
Field curvature_xy(const OneForm& A, const std::vector<int>& degrees);

// coefficients of omega
struct MomentI {
  Field mu1, mu2;
};
MomentI moment_mu_I(const Configuration& x);
double pairing(const MomentI& m, const GaugeDirection& xi);

TangentData infinitesimal_action(const Configuration& x, const GaugeDirection& xi);

// (g1, g2) unitary, acting as A -> g A g^-1 + g d(g^-1), phi -> g2 phi g1^-1, psi -> g1 psi g2^-1
Configuration gauge_transform(const Configuration& x, const Field& g1, const Field& g2);

// ---- checks ----

struct MomentCheck {
  double lhs = 0, rhs = 0, error = 0;
};
// |<D mu_I(x)[a], xi> - omega_I(X_xi(x), a)| with central differences
MomentCheck moment_map_property_check(const Configuration& x, const TangentData& a,
                                      const GaugeDirection& xi, double step = 1e-4);

struct QuaternionCheck {
  double I2 = 0, J2 = 0, K2 = 0, K_eq_IJ = 0, IJ_anti = 0;
  double g_invariance = 0;  // |g(Sa, Sb) - g(a, b)| over S = I, J, K
  double max() const;
};
QuaternionCheck quaternion_check(const TangentData& a, const TangentData& b);

// sup over points of |mu_I(g x) - g mu_I(x) g^-1|, g = exp(U)
double equivariance_check(const Configuration& x, const GaugeDirection& U);

// quadruplet plus metric pushed to the unitary frame g = h^(1/2)
Configuration unitary_frame(const QuadrupletSpec& q, const MetricPair& h);

struct CrossModuleCheck {
  double mu_vs_residual = 0;  // sup |mu_I + 2 pi i (tau, tau') - g R g^-1|
  double mu_off_center = 0;   // sup |mu_I + 2 pi i (tau, tau')|
  double holomorphy = 0;      // quadruplet constraints
};
CrossModuleCheck cross_module_check(const QuadrupletSpec& q, const MetricPair& h, const VortexConstants& c);

// ---- random data respecting the equal-degree rule ----

Configuration random_configuration(int n, const std::vector<int>& deg1, const std::vector<int>& deg2,
                                   std::mt19937_64& rng, double amplitude = 0.5);
TangentData random_tangent(const Configuration& x, std::mt19937_64& rng, double amplitude = 0.5);
GaugeDirection random_gauge_direction(const Configuration& x, std::mt19937_64& rng, double amplitude = 0.3);

}  // namespace vx

#endif
