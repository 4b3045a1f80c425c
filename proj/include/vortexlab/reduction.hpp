#ifndef VORTEXLAB_REDUCTION_HPP
#define VORTEXLAB_REDUCTION_HPP

#include <array>
#include <random>
#include <vector>

#include "vortexlab/higgs.hpp"
#include "vortexlab/p1.hpp"
#include "vortexlab/rational.hpp"
#include "vortexlab/stability.hpp"

namespace vx {

// ---- line bundles O(n) on P^1 ----

// Lambda of the curvature of h^(n) at a chart point, by finite differences of log h
cplx p1_contracted_curvature(int n, cplx c);
double deg_p1(int n, int n_radial = 24, int n_angular = 24);

struct FsConstant {
  cplx value;            // mean over the quadrature nodes
  double max_deviation;  // constancy over P^1
};
FsConstant fs_contraction_constant(int twist = 2, int n_radial = 24, int n_angular = 24);

// ---- invariant forms ----

// chart coefficients: alpha = a dzbar (x) e_{-2}, beta = b dz (x) e_2
cplx alpha_coeff(Chart ch, cplx c);
cplx beta_coeff(Chart ch, cplx c);
// pointwise norms against h^(-2) (resp. h^(2)) and the Fubini-Study metric
double alpha_norm2(Chart ch, cplx c);
double beta_norm2(Chart ch, cplx c);

struct Calibration {
  double raw_alpha = 0, raw_beta = 0;  // wedge / omega_P1 ratios for unit constants, sigma free
  double c_alpha = 0, c_beta = 0;
  double max_spread = 0;  // variation of the raw ratios over the samples
};
Calibration calibrate_alpha_beta(double sigma, int samples = 64, unsigned seed = 7);

// Lambda_sigma(p* omega), Lambda_sigma(q* omega_P1)
struct ContractionWeights {
  double x = 1, p1 = 1;
};
ContractionWeights weights_for(double sigma, bool sigma_on_p1 = false);

// ---- product data ----

struct ProductPoint {
  int torus_index = 0;
  Chart chart = Chart::z;
  cplx coord = 0;
};

std::vector<ProductPoint> random_product_points(int n, int count, std::mt19937_64& rng);

// block objects at one point, frame (E1, E2 (x) e_2) of F
struct ProductPointData {
  ProductPoint pt;
  MatC H;                     // p*h1 + p*h2 (x) h^(2)
  MatC dbar_x, dbar_p;        // (0,1) parts of dbar_F beyond the trivial operator
  MatC theta_x, theta_p;      // theta_F = theta_x dz_X + theta_p dz_P
  std::array<MatC, 4> F;      // curvature, coefficients of dz_a ^ dzbar_b: XX, PP, XP, PX
  MatC lambda_total;          // Lambda_sigma(F + [theta, theta^dagger])
  ContractionWeights weights;
  double integrability = 0;   // sup of all components of (dbar_F + theta_F)^2
};

struct AssembledF {
  int r1 = 0, r2 = 0;
  double sigma = 0;
  Calibration cal;
  std::vector<ProductPointData> points;
};

AssembledF assemble_F(const QuadrupletSpec& q, const MetricPair& h, double sigma,
                      const std::vector<ProductPoint>& pts, bool sigma_on_p1 = false);

struct HeResult {
  double residual = 0;   // sup |Lambda_sigma(...) - lambda Id|
  double block1 = 0, block2 = 0;
  double off_diagonal = 0;
};
HeResult he_residual_product(const AssembledF& a, cplx lambda);

double integrability_residual(const AssembledF& a);

// ---- degrees and volumes on X x P^1 ----

double product_volume(double sigma, int n_radial = 24, int n_angular = 24);
double block_bundle_degree(const QuadInvariants& inv, double sigma, int n_radial = 24, int n_angular = 24);
cplx lambda_from_quadrature(const QuadInvariants& amb, double sigma);
// exact counterpart: deg F' = d1' + d2' + sigma r2'
Rational block_bundle_degree_exact(const QuadInvariants& inv, const Rational& sigma);

// ---- iota_h ----

// real components (x, y) on X; Psi_i must be h_i-skew, A_i h_i-compatible
struct IotaComponents {
  std::array<Field, 2> A1, Psi1, A2, Psi2;
  Field phi, psi;
};

// D = nabla_h + i Phi at one point, real components along x, y, u, v (P^1 chart z = u + iv)
struct InvariantConnectionPoint {
  ProductPoint pt;
  std::array<MatC, 4> D;
};

struct InvariantConnection {
  int r1 = 0, r2 = 0;
  std::vector<InvariantConnectionPoint> points;  // one per torus grid point
};

void check_iota_components(const IotaComponents& c, const MetricPair& h, double tol = 1e-10);
InvariantConnection iota_assemble(const IotaComponents& c, const MetricPair& h, double sigma,
                                  const std::vector<ProductPoint>& p1_points);
IotaComponents iota_decompose(const InvariantConnection& d, const MetricPair& h, double sigma,
                              double tol = 1e-9);
double iota_component_distance(const IotaComponents& a, const IotaComponents& b);

// random smooth components compatible with h
IotaComponents random_iota_components(const MetricPair& h, std::mt19937_64& rng);

}  // namespace vx

#endif
