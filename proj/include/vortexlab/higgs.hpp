#ifndef VORTEXLAB_HIGGS_HPP
#define VORTEXLAB_HIGGS_HPP

#include <vector>

#include "vortexlab/field.hpp"

namespace vx {

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

struct ConstraintError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// E1, E2 are sums of line bundles with the listed degrees.  theta_i are
// (1,0)-forms, phi : E1 -> E2 and psi : E2 -> E1 are functions.
struct QuadrupletSpec {
  std::vector<int> deg1, deg2;
  Field theta1, theta2, phi, psi;

  static QuadrupletSpec zero(int n, std::vector<int> deg1, std::vector<int> deg2);

  int n() const { return phi.n(); }
  int r1() const { return int(deg1.size()); }
  int r2() const { return int(deg2.size()); }
  int d1() const;
  int d2() const;
  bool coupled() const;  // phi or psi not identically zero

  // shapes, form types, and the equal-degree rule for off-diagonal blocks
  void validate() const;
};

struct MetricPair {
  Field h1, h2;

  static MetricPair identity(const QuadrupletSpec& q);
  void validate(double herm_tol = 1e-13) const;
};

void check_metric(const Field& h, double herm_tol = 1e-13);

// F_bg = -2 pi i d omega on each summand, returned as a dz^dzbar coefficient
Field background_curvature(int n, const std::vector<int>& degrees);

// F_h = F_bg + dbar(h^{-1} del h)
Field chern_curvature(const Field& h, const std::vector<int>& degrees);

// h^{-1} theta^dagger h, attached to dz-bar
Field higgs_adjoint(const Field& theta, const Field& h);

// theta ^ theta_dag + theta_dag ^ theta as a dz^dzbar coefficient
Field bracket_theta(const Field& theta, const Field& theta_dag);

// f* = h_from^{-1} f^dagger h_to, so h_to(f s, t) = h_from(s, f* t)
Field morphism_adjoint(const Field& f, const Field& h_from, const Field& h_to);

struct HolomorphyResiduals {
  double theta1 = 0, theta2 = 0, phi = 0, psi = 0;
  double max() const;
};

HolomorphyResiduals holomorphy_residuals(const QuadrupletSpec& q);

// sup of |phi psi| and |psi phi|
double composition_residual(const QuadrupletSpec& q);

}  // namespace vx

#endif
