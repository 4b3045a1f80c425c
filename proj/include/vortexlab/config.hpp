#ifndef VORTEXLAB_CONFIG_HPP
#define VORTEXLAB_CONFIG_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vortexlab/higgs.hpp"
#include "vortexlab/rational.hpp"
#include "vortexlab/vortex.hpp"

namespace vx {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// value * profile(x, y); profiles: const, exp_x = e^{2 pi i x}, cos_x = cos(2 pi x)
struct FieldSpec {
  MatC value;
  std::string mode = "const";
};

struct Tolerances {
  double residual = 1e-8;       // vortex residual, sup norm
  double psi_norm = 1e-6;       // int |psi|^2 against 2 pi tau
  double he = 1e-6;             // product HE residual
  double off_diagonal = 1e-8;
  double integrability = 1e-9;
  double broken_integrability = 1e-2;  // lower bound once phi psi != 0
  double iota = 1e-10;
  double fs_constant = 1e-8;
  double deg = 1e-6;
  double trace = 1e-8;
  double quaternion = 1e-12;
  double moment = 1e-6;
  double equivariance = 1e-10;
  double cross_module = 1e-8;
};

struct RunConfig {
  std::string path;  // empty when parsed from a string
  std::string hash;  // FNV-1a of the file text
  int n = 64;
  int p1_radial = 24, p1_angular = 24;
  std::vector<int> deg1, deg2;
  std::optional<Rational> tau, sigma;
  FieldSpec theta1, theta2, phi, psi;
  SolveOptions solver;
  Tolerances tol;
  // verification
  int samples = 200;
  int iota_sets = 5;
  int hk_samples = 10;
  unsigned seed = 7;
  bool sigma_on_p1 = false;
  // stability
  std::string catalog;                 // resolved path, empty means coordinate sub-objects
  std::optional<std::string> expect;   // expected verdict
};

RunConfig parse_config(const std::string& text, const std::string& name = "<string>");
RunConfig load_config(const std::string& path);

// "a, b; c, d" with complex entries such as 1, -2.5, 3i, 1+2i, 0.5-i
MatC parse_matrix(const std::string& s);
cplx parse_complex(const std::string& s);

QuadrupletSpec build_quadruplet(const RunConfig& c);
VortexConstants build_constants(const RunConfig& c);

std::string fnv1a_hex(const std::string& text);

}  // namespace vx

#endif
