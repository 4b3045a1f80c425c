#include "vortexlab/config.hpp"

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace vx {

namespace pt = boost::property_tree;

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::string trim(std::string s) {
  boost::algorithm::trim(s);
  return s;
}

[[noreturn]] void key_error(const std::string& name, const std::string& key, const std::string& what) {
  throw ConfigError(name + ": key '" + key + "': " + what);
}

double to_real(const std::string& name, const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    double d = std::stod(v, &used);
    if (used != v.size() || !std::isfinite(d)) throw std::invalid_argument("");
    return d;
  } catch (const std::exception&) {
    key_error(name, key, "expected a real number, got '" + v + "'");
  }
}

long to_int(const std::string& name, const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    long d = std::stol(v, &used);
    if (used != v.size()) throw std::invalid_argument("");
    return d;
  } catch (const std::exception&) {
    key_error(name, key, "expected an integer, got '" + v + "'");
  }
}

bool to_bool(const std::string& name, const std::string& key, const std::string& v) {
  std::string s = boost::algorithm::to_lower_copy(v);
  if (s == "true" || s == "yes" || s == "1") return true;
  if (s == "false" || s == "no" || s == "0") return false;
  key_error(name, key, "expected true or false, got '" + v + "'");
}

std::vector<int> to_int_list(const std::string& name, const std::string& key, const std::string& v) {
  std::vector<std::string> parts;
  boost::algorithm::split(parts, v, boost::algorithm::is_any_of(", "), boost::algorithm::token_compress_on);
  std::vector<int> out;
  for (auto& p : parts)
    if (!p.empty()) out.push_back(int(to_int(name, key, p)));
  if (out.empty()) key_error(name, key, "empty list");
  return out;
}

}  // namespace

cplx parse_complex(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw std::invalid_argument("empty complex number");
  // split into signed terms, an exponent sign is not a term boundary
  std::vector<std::string> terms;
  std::size_t start = 0;
  for (std::size_t k = 1; k < s.size(); ++k)
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      terms.push_back(s.substr(start, k - start));
      start = k;
    }
  terms.push_back(s.substr(start));
  if (terms.size() > 2) throw std::invalid_argument("bad complex number '" + text + "'");
  cplx z = 0;
  int nre = 0, nim = 0;
  for (auto t : terms) {
    bool imag = !t.empty() && (t.back() == 'i' || t.back() == 'j');
    if (imag) t.pop_back();
    if (t == "" || t == "+") t = "1";
    if (t == "-") t = "-1";
    std::size_t used = 0;
    double v;
    try {
      v = std::stod(t, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad complex number '" + text + "'");
    }
    if (used != t.size()) throw std::invalid_argument("bad complex number '" + text + "'");
    if (imag) {
      z += cplx(0, v);
      ++nim;
    } else {
      z += v;
      ++nre;
    }
  }
  if (nre > 1 || nim > 1) throw std::invalid_argument("bad complex number '" + text + "'");
  return z;
}

MatC parse_matrix(const std::string& s) {
  std::vector<std::string> rows;
  boost::algorithm::split(rows, s, boost::algorithm::is_any_of(";"));
  std::vector<std::vector<cplx>> v;
  for (auto& r : rows) {
    std::vector<std::string> cols;
    boost::algorithm::split(cols, r, boost::algorithm::is_any_of(","));
    v.emplace_back();
    for (auto& c : cols) v.back().push_back(parse_complex(c));
  }
  for (auto& r : v)
    if (r.size() != v.front().size()) throw std::invalid_argument("ragged matrix '" + s + "'");
  MatC m(v.size(), v.front().size());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v[i].size(); ++j) m(i, j) = v[i][j];
  return m;
}

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

RunConfig parse_config(const std::string& text, const std::string& name) {
  pt::ptree tree;
  std::istringstream is(text);
  try {
    pt::ini_parser::read_ini(is, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(name + ":" + std::to_string(e.line()) + ": " + e.message());
  }

  RunConfig c;
  c.path = name;
  c.hash = fnv1a_hex(text);

  const std::map<std::string, std::set<std::string>> known = {
      {"grid", {"n", "p1_radial", "p1_angular"}},
      {"quadruplet",
       {"deg1", "deg2", "tau", "sigma", "theta1", "theta2", "phi", "psi", "theta1_mode", "theta2_mode",
        "phi_mode", "psi_mode", "signs"}},
      {"solver",
       {"step", "step_min", "step_max", "step_growth", "backtracking", "gauge_fix", "smoothing", "max_iter",
        "patience", "min_improvement", "target", "max_log_metric"}},
      {"tolerances",
       {"residual", "psi_norm", "he", "off_diagonal", "integrability", "broken_integrability", "iota",
        "fs_constant", "deg", "trace", "quaternion", "moment", "equivariance", "cross_module"}},
      {"verify", {"samples", "iota_sets", "hk_samples", "seed", "sigma_on_p1"}},
      {"stability", {"catalog", "expect"}},
  };
  for (const auto& [sec, body] : tree) {
    auto it = known.find(sec);
    if (it == known.end()) {
      if (body.empty() && !body.data().empty()) throw ConfigError(name + ": key '" + sec + "' outside a section");
      throw ConfigError(name + ": unknown section [" + sec + "]");
    }
    for (const auto& [key, v] : body)
      if (!it->second.count(key)) throw ConfigError(name + ": unknown key '" + sec + "." + key + "'");
  }

  auto get = [&](const std::string& path) -> std::optional<std::string> {
    auto v = tree.get_optional<std::string>(pt::ptree::path_type(path, '.'));
    if (!v) return std::nullopt;
    return trim(*v);
  };
  auto real = [&](const std::string& path, double& out, bool positive) {
    if (auto v = get(path)) {
      out = to_real(name, path, *v);
      if (positive && !(out > 0)) key_error(name, path, "must be positive");
    }
  };
  auto integer = [&](const std::string& path, int& out, long lo, long hi) {
    if (auto v = get(path)) {
      long x = to_int(name, path, *v);
      if (x < lo || x > hi) key_error(name, path, "out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
      out = int(x);
    }
  };
  auto boolean = [&](const std::string& path, bool& out) {
    if (auto v = get(path)) out = to_bool(name, path, *v);
  };

  integer("grid.n", c.n, 8, 1024);
  if (c.n % 2) key_error(name, "grid.n", "must be even");
  integer("grid.p1_radial", c.p1_radial, 8, 256);
  integer("grid.p1_angular", c.p1_angular, 8, 512);

  auto d1 = get("quadruplet.deg1"), d2 = get("quadruplet.deg2");
  if (!d1) key_error(name, "quadruplet.deg1", "required");
  if (!d2) key_error(name, "quadruplet.deg2", "required");
  c.deg1 = to_int_list(name, "quadruplet.deg1", *d1);
  c.deg2 = to_int_list(name, "quadruplet.deg2", *d2);

  auto tau = get("quadruplet.tau"), sigma = get("quadruplet.sigma");
  if (bool(tau) == bool(sigma)) key_error(name, "quadruplet.tau", "give exactly one of tau and sigma");
  try {
    if (tau) c.tau = parse_rational(*tau);
    if (sigma) c.sigma = parse_rational(*sigma);
  } catch (const std::exception& e) {
    key_error(name, tau ? "quadruplet.tau" : "quadruplet.sigma", e.what());
  }

  const int r1 = int(c.deg1.size()), r2 = int(c.deg2.size());
  auto field = [&](const std::string& key, FieldSpec& f, int rows, int cols) {
    f.value = MatC::Zero(rows, cols);
    if (auto v = get("quadruplet." + key)) {
      MatC m;
      try {
        m = parse_matrix(*v);
      } catch (const std::exception& e) {
        key_error(name, "quadruplet." + key, e.what());
      }
      if (m.size() == 1 && rows == cols) m = m(0, 0) * MatC::Identity(rows, cols);
      else if (m.size() == 1 && rows * cols == 1) {
      } else if (m.rows() != rows || m.cols() != cols)
        key_error(name, "quadruplet." + key,
                  "expected a " + std::to_string(rows) + "x" + std::to_string(cols) + " matrix");
      f.value = m;
    }
    if (auto v = get("quadruplet." + key + "_mode")) {
      if (*v != "const" && *v != "exp_x" && *v != "cos_x")
        key_error(name, "quadruplet." + key + "_mode", "expected const, exp_x or cos_x");
      f.mode = *v;
    }
  };
  field("theta1", c.theta1, r1, r1);
  field("theta2", c.theta2, r2, r2);
  field("phi", c.phi, r2, r1);
  field("psi", c.psi, r1, r2);
  if (auto v = get("quadruplet.signs")) {
    try {
      c.solver.signs = coupling_signs_from_string(*v);
    } catch (const std::exception& e) {
      key_error(name, "quadruplet.signs", e.what());
    }
  }

  auto& s = c.solver;
  real("solver.step", s.step, true);
  real("solver.step_min", s.step_min, true);
  real("solver.step_max", s.step_max, true);
  real("solver.step_growth", s.step_growth, true);
  boolean("solver.backtracking", s.backtracking);
  boolean("solver.gauge_fix", s.gauge_fix);
  real("solver.smoothing", s.smoothing, false);
  if (s.smoothing < 0) key_error(name, "solver.smoothing", "must be non-negative");
  integer("solver.max_iter", s.max_iter, 1, 10000000);
  integer("solver.patience", s.patience, 1, 10000000);
  real("solver.min_improvement", s.min_improvement, true);
  real("solver.target", s.target, true);
  real("solver.max_log_metric", s.max_log_metric, true);

  auto& t = c.tol;
  for (auto [key, ptr] : std::initializer_list<std::pair<const char*, double*>>{
           {"residual", &t.residual}, {"psi_norm", &t.psi_norm}, {"he", &t.he},
           {"off_diagonal", &t.off_diagonal}, {"integrability", &t.integrability},
           {"broken_integrability", &t.broken_integrability}, {"iota", &t.iota},
           {"fs_constant", &t.fs_constant}, {"deg", &t.deg}, {"trace", &t.trace},
           {"quaternion", &t.quaternion}, {"moment", &t.moment}, {"equivariance", &t.equivariance},
           {"cross_module", &t.cross_module}})
    real(std::string("tolerances.") + key, *ptr, true);

  integer("verify.samples", c.samples, 1, 100000);
  integer("verify.iota_sets", c.iota_sets, 0, 10000);
  integer("verify.hk_samples", c.hk_samples, 1, 10000);
  int seed = int(c.seed);
  integer("verify.seed", seed, 0, 2147483647);
  c.seed = unsigned(seed);
  boolean("verify.sigma_on_p1", c.sigma_on_p1);

  if (auto v = get("stability.catalog")) {
    std::filesystem::path p(*v);
    if (p.is_relative() && name.find('/') != std::string::npos)
      p = std::filesystem::path(name).parent_path() / p;
    c.catalog = p.string();
  }
  if (auto v = get("stability.expect")) {
    if (*v != "stable" && *v != "semistable" && *v != "unstable")
      key_error(name, "stability.expect", "expected stable, semistable or unstable");
    c.expect = *v;
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

namespace {

Field realize(const FieldSpec& f, int n, Form form) {
  Field out(n, int(f.value.rows()), int(f.value.cols()), form);
  for (int p = 0; p < out.points(); ++p) {
    double x = double(p / n) / n;
    cplx w = 1.0;
    if (f.mode == "exp_x") w = std::polar(1.0, kTwoPi * x);
    else if (f.mode == "cos_x") w = std::cos(kTwoPi * x);
    out.mat(p) = w * f.value;
  }
  return out;
}

}  // namespace

QuadrupletSpec build_quadruplet(const RunConfig& c) {
  QuadrupletSpec q;
  q.deg1 = c.deg1;
  q.deg2 = c.deg2;
  q.theta1 = realize(c.theta1, c.n, Form::one_zero);
  q.theta2 = realize(c.theta2, c.n, Form::one_zero);
  q.phi = realize(c.phi, c.n, Form::function);
  q.psi = realize(c.psi, c.n, Form::function);
  try {
    q.validate();
  } catch (const std::exception& e) {
    throw ConfigError(c.path + ": [quadruplet]: " + e.what());
  }
  return q;
}

VortexConstants build_constants(const RunConfig& c) {
  const int r1 = int(c.deg1.size()), r2 = int(c.deg2.size());
  int d1 = 0, d2 = 0;
  for (int d : c.deg1) d1 += d;
  for (int d : c.deg2) d2 += d;
  return c.tau ? constants_from_tau(*c.tau, r1, r2, d1, d2) : constants_from_sigma(*c.sigma, r1, r2, d1, d2);
}

}  // namespace vx
