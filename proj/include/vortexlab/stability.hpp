#ifndef VORTEXLAB_STABILITY_HPP
#define VORTEXLAB_STABILITY_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "vortexlab/rational.hpp"

namespace vx {

struct QuadrupletSpec;

struct QuadInvariants {
  int r1 = 0, r2 = 0;
  int d1 = 0, d2 = 0;

  bool operator==(const QuadInvariants&) const = default;
};

struct CatalogEntry {
  QuadInvariants inv;
  std::string provenance;  // "coordinate", "user", "degree-lowered"
  std::string label;
};

struct SubobjectCatalog {
  QuadInvariants ambient;
  std::vector<CatalogEntry> entries;
};

Rational deg_sigma(const QuadInvariants& q, const Rational& sigma);
Rational mu_sigma(const QuadInvariants& q, const Rational& sigma);
Rational slope(const QuadInvariants& q);  // ordinary slope of E1 + E2
Rational theta_tau(const QuadInvariants& sub, const QuadInvariants& ambient, const Rational& tau);

enum class Verdict { stable, semistable, unstable };
const char* to_string(Verdict v);

struct VerdictResult {
  Verdict verdict = Verdict::stable;
  bool vacuous = false;
  Rational worst;                 // max Theta (or max mu' - mu)
  std::vector<std::size_t> witnesses;  // entries attaining the max
};

VerdictResult verdict_tau(const SubobjectCatalog& cat, const Rational& tau);
VerdictResult verdict_sigma(const SubobjectCatalog& cat, const Rational& sigma);

// Theta_tau(Q') == mu_sigma(Q') - mu_sigma(Q) for each entry, tau = mu_sigma(Q)
bool equivalence_check(const SubobjectCatalog& cat, const Rational& sigma);

// block support patterns closed under theta_i, phi, psi
SubobjectCatalog coordinate_subquadruplets(const QuadrupletSpec& q, double tol = 0.0);

QuadInvariants direct_sum(const QuadInvariants& a, const QuadInvariants& b);

struct PolystablePart {
  SubobjectCatalog catalog;  // ambient is the part itself
};

bool polystable_check(const std::vector<PolystablePart>& parts, const Rational& sigma);

// one record per line: "r1 r2 d1 d2 provenance [label]"; "#" starts a comment;
// the first record is the ambient with provenance "ambient"
void write_catalog(std::ostream& os, const SubobjectCatalog& cat);
SubobjectCatalog read_catalog(std::istream& is);

}  // namespace vx

#endif
