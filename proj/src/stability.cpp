#include "vortexlab/stability.hpp"

#include <cctype>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "vortexlab/higgs.hpp"

namespace vx {

namespace {

// cpp_int reads a leading 0 as octal
Integer decimal_integer(std::string digits) {
  auto nz = digits.find_first_not_of('0');
  digits = nz == std::string::npos ? "0" : digits.substr(nz);
  return Integer(digits);
}

}  // namespace

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw std::invalid_argument("empty number");
  auto slash = s.find('/');
  auto parse_int = [](const std::string& t) {
    if (t.empty()) throw std::invalid_argument("bad integer");
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) throw std::invalid_argument("bad integer '" + t + "'");
    for (std::size_t k = i; k < t.size(); ++k)
      if (!std::isdigit(static_cast<unsigned char>(t[k]))) throw std::invalid_argument("bad integer '" + t + "'");
    Integer v = decimal_integer(t.substr(i));
    return t[0] == '-' ? Integer(-v) : v;
  };
  if (slash != std::string::npos) {
    Integer den = parse_int(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(parse_int(s.substr(0, slash)), den);
  }
  // decimal: [sign] digits [. digits] [e [sign] digits]
  std::string mant = s, ex;
  auto epos = s.find_first_of("eE");
  if (epos != std::string::npos) {
    mant = s.substr(0, epos);
    ex = s.substr(epos + 1);
  }
  bool neg = false;
  if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) {
    neg = mant[0] == '-';
    mant = mant.substr(1);
  }
  auto dot = mant.find('.');
  std::string ip = mant.substr(0, dot), fp = dot == std::string::npos ? "" : mant.substr(dot + 1);
  if (ip.empty() && fp.empty()) throw std::invalid_argument("bad number '" + text + "'");
  for (char ch : ip + fp)
    if (!std::isdigit(static_cast<unsigned char>(ch))) throw std::invalid_argument("bad number '" + text + "'");
  Integer num = decimal_integer(ip + fp);
  Integer den = 1;
  for (std::size_t k = 0; k < fp.size(); ++k) den *= 10;
  Rational q(num, den);
  if (!ex.empty()) {
    Integer e = parse_int(ex);
    if (e > 300 || e < -300) throw std::invalid_argument("exponent out of range");
    int ei = e.convert_to<int>();
    Integer p10 = 1;
    for (int k = 0; k < std::abs(ei); ++k) p10 *= 10;
    q = ei >= 0 ? q * Rational(p10) : q / Rational(p10);
  }
  return neg ? Rational(-q) : q;
}

std::string to_string(const Rational& q) {
  std::ostringstream os;
  os << numerator(q);
  if (denominator(q) != 1) os << "/" << denominator(q);
  return os.str();
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

Rational deg_sigma(const QuadInvariants& q, const Rational& sigma) {
  return Rational(q.d1 + q.d2) + Rational(q.r2) * sigma;
}

Rational mu_sigma(const QuadInvariants& q, const Rational& sigma) {
  if (q.r1 + q.r2 == 0) throw std::invalid_argument("mu_sigma: total rank is zero");
  return deg_sigma(q, sigma) / Rational(q.r1 + q.r2);
}

Rational slope(const QuadInvariants& q) { return mu_sigma(q, Rational(0)); }

Rational theta_tau(const QuadInvariants& sub, const QuadInvariants& amb, const Rational& tau) {
  if (sub.r1 + sub.r2 == 0) throw std::invalid_argument("theta_tau: trivial sub-object");
  if (amb.r2 == 0) throw std::invalid_argument("theta_tau: ambient r2 must be positive");
  Rational w = Rational(sub.r2, amb.r2) * Rational(amb.r1 + amb.r2, sub.r1 + sub.r2);
  return (slope(sub) - tau) - w * (slope(amb) - tau);
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::stable: return "stable";
    case Verdict::semistable: return "semistable";
    case Verdict::unstable: return "unstable";
  }
  return "?";
}

namespace {

template <class F>
VerdictResult decide(const SubobjectCatalog& cat, F value) {
  VerdictResult r;
  if (cat.entries.empty()) {
    r.vacuous = true;
    return r;
  }
  for (std::size_t i = 0; i < cat.entries.size(); ++i) {
    Rational v = value(cat.entries[i].inv);
    if (i == 0 || v > r.worst) {
      r.worst = v;
      r.witnesses = {i};
    } else if (v == r.worst) {
      r.witnesses.push_back(i);
    }
  }
  if (r.worst < 0) r.verdict = Verdict::stable;
  else if (r.worst == 0) r.verdict = Verdict::semistable;
  else r.verdict = Verdict::unstable;
  return r;
}

}  // namespace

VerdictResult verdict_tau(const SubobjectCatalog& cat, const Rational& tau) {
  return decide(cat, [&](const QuadInvariants& q) { return theta_tau(q, cat.ambient, tau); });
}

VerdictResult verdict_sigma(const SubobjectCatalog& cat, const Rational& sigma) {
  Rational mu = mu_sigma(cat.ambient, sigma);
  return decide(cat, [&](const QuadInvariants& q) { return mu_sigma(q, sigma) - mu; });
}

bool equivalence_check(const SubobjectCatalog& cat, const Rational& sigma) {
  Rational tau = mu_sigma(cat.ambient, sigma);
  for (const auto& e : cat.entries)
    if (theta_tau(e.inv, cat.ambient, tau) != mu_sigma(e.inv, sigma) - tau) return false;
  return true;
}

SubobjectCatalog coordinate_subquadruplets(const QuadrupletSpec& q, double tol) {
  q.validate();
  const int r1 = q.r1(), r2 = q.r2(), k = r1 + r2;
  if (k > 20) throw std::invalid_argument("coordinate_subquadruplets: too many summands");
  // support[a][b]: summand b maps into summand a (indices 0..r1-1 for E1, then E2)
  std::vector<std::vector<bool>> support(k, std::vector<bool>(k, false));
  auto mark = [&](const Field& f, int roff, int coff) {
    for (int r = 0; r < f.rows(); ++r)
      for (int c = 0; c < f.cols(); ++c)
        for (int p = 0; p < f.points(); ++p)
          if (std::abs(f(p, r, c)) > tol) {
            support[roff + r][coff + c] = true;
            break;
          }
  };
  mark(q.theta1, 0, 0);
  mark(q.theta2, r1, r1);
  mark(q.phi, r1, 0);
  mark(q.psi, 0, r1);

  SubobjectCatalog cat;
  cat.ambient = {r1, r2, q.d1(), q.d2()};
  const unsigned full = (1u << k) - 1u;
  for (unsigned mask = 1; mask < full; ++mask) {
    bool closed = true;
    for (int b = 0; b < k && closed; ++b) {
      if (!(mask >> b & 1u)) continue;
      for (int a = 0; a < k; ++a)
        if (support[a][b] && !(mask >> a & 1u)) {
          closed = false;
          break;
        }
    }
    if (!closed) continue;
    QuadInvariants inv;
    std::string label = "S1={";
    for (int i = 0; i < r1; ++i)
      if (mask >> i & 1u) {
        ++inv.r1;
        inv.d1 += q.deg1[i];
        label += (label.back() == '{' ? "" : ",") + std::to_string(i);
      }
    label += "} S2={";
    for (int j = 0; j < r2; ++j)
      if (mask >> (r1 + j) & 1u) {
        ++inv.r2;
        inv.d2 += q.deg2[j];
        label += (label.back() == '{' ? "" : ",") + std::to_string(j);
      }
    label += "}";
    cat.entries.push_back({inv, "coordinate", label});
  }
  return cat;
}

QuadInvariants direct_sum(const QuadInvariants& a, const QuadInvariants& b) {
  return {a.r1 + b.r1, a.r2 + b.r2, a.d1 + b.d1, a.d2 + b.d2};
}

bool polystable_check(const std::vector<PolystablePart>& parts, const Rational& sigma) {
  if (parts.empty()) throw std::invalid_argument("polystable_check: empty parts list");
  Rational mu0 = mu_sigma(parts.front().catalog.ambient, sigma);
  for (const auto& p : parts) {
    if (mu_sigma(p.catalog.ambient, sigma) != mu0) return false;
    if (verdict_sigma(p.catalog, sigma).verdict != Verdict::stable) return false;
  }
  return true;
}

void write_catalog(std::ostream& os, const SubobjectCatalog& cat) {
  os << "# r1 r2 d1 d2 provenance label\n";
  const auto& a = cat.ambient;
  os << a.r1 << ' ' << a.r2 << ' ' << a.d1 << ' ' << a.d2 << " ambient\n";
  for (const auto& e : cat.entries) {
    os << e.inv.r1 << ' ' << e.inv.r2 << ' ' << e.inv.d1 << ' ' << e.inv.d2 << ' ' << e.provenance;
    if (!e.label.empty()) os << ' ' << e.label;
    os << '\n';
  }
}

SubobjectCatalog read_catalog(std::istream& is) {
  SubobjectCatalog cat;
  bool have_ambient = false;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    CatalogEntry e;
    if (!(ls >> e.inv.r1)) continue;
    if (!(ls >> e.inv.r2 >> e.inv.d1 >> e.inv.d2 >> e.provenance))
      throw std::invalid_argument("catalog line " + std::to_string(lineno) + ": expected r1 r2 d1 d2 provenance");
    std::getline(ls >> std::ws, e.label);
    if (e.inv.r1 < 0 || e.inv.r2 < 0)
      throw std::invalid_argument("catalog line " + std::to_string(lineno) + ": negative rank");
    if (!have_ambient) {
      if (e.provenance != "ambient")
        throw std::invalid_argument("catalog line " + std::to_string(lineno) + ": first record must be the ambient");
      if (e.inv.r1 < 1 || e.inv.r2 < 1)
        throw std::invalid_argument("catalog line " + std::to_string(lineno) + ": ambient ranks must be positive");
      cat.ambient = e.inv;
      have_ambient = true;
      continue;
    }
    if (e.inv.r1 + e.inv.r2 == 0)
      throw std::invalid_argument("catalog line " + std::to_string(lineno) + ": zero sub-object is trivial");
    if (e.inv.r1 > cat.ambient.r1 || e.inv.r2 > cat.ambient.r2)
      throw std::invalid_argument("catalog line " + std::to_string(lineno) + ": ranks exceed the ambient");
    if (e.inv == cat.ambient)
      throw std::invalid_argument("catalog line " + std::to_string(lineno) + ": the ambient itself is trivial");
    cat.entries.push_back(e);
  }
  if (!have_ambient) throw std::invalid_argument("catalog has no ambient record");
  return cat;
}

}  // namespace vx
