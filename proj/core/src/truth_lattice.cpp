#include "morpho/truth_lattice.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "morpho/error.hpp"

namespace morpho {

std::string_view to_string(LatticeKind kind) {
  switch (kind) {
    case LatticeKind::boolean:
      return "boolean";
    case LatticeKind::goguen:
      return "goguen";
    case LatticeKind::lukasiewicz:
      return "lukasiewicz";
  }
  return "?";
}

LatticeKind parse_lattice_kind(std::string_view text) {
  if (text == "boolean") return LatticeKind::boolean;
  if (text == "goguen") return LatticeKind::goguen;
  if (text == "lukasiewicz") return LatticeKind::lukasiewicz;
  throw DomainError("unknown lattice kind '" + std::string(text) +
                    "' (expected boolean, goguen or lukasiewicz)");
}

double TruthLattice::check(double a) const {
  if (!(a >= -kTruthTolerance && a <= 1.0 + kTruthTolerance))
    throw DomainError("truth value " + std::to_string(a) + " outside [0,1]");
  if (kind_ == LatticeKind::boolean) {
    if (a <= kTruthTolerance) return 0.0;
    if (a >= 1.0 - kTruthTolerance) return 1.0;
    throw DomainError("truth value " + std::to_string(a) + " is not boolean");
  }
  return std::clamp(a, 0.0, 1.0);
}

double TruthLattice::meet(double a, double b) const { return std::min(check(a), check(b)); }

double TruthLattice::join(double a, double b) const { return std::max(check(a), check(b)); }

double TruthLattice::otimes(double a, double b) const {
  a = check(a);
  b = check(b);
  switch (kind_) {
    case LatticeKind::boolean:
      return std::min(a, b);
    case LatticeKind::goguen:
      return a * b;
    case LatticeKind::lukasiewicz:
      return std::max(0.0, a + b - 1.0);
  }
  return 0.0;
}

double TruthLattice::residuum(double a, double b) const {
  a = check(a);
  b = check(b);
  switch (kind_) {
    case LatticeKind::boolean:
      return a <= b ? 1.0 : 0.0;
    case LatticeKind::goguen:
      return a <= b ? 1.0 : b / a;
    case LatticeKind::lukasiewicz:
      return std::min(1.0, 1.0 - a + b);
  }
  return 0.0;
}

double TruthLattice::complement(double a) const { return 1.0 - check(a); }

bool TruthLattice::leq(double a, double b) const { return a <= b + kTruthTolerance; }

bool TruthLattice::equal(double a, double b) const { return std::fabs(a - b) <= kTruthTolerance; }

}  // namespace morpho
