#pragma once

#include <string_view>

namespace morpho {

/// Absolute tolerance used for every truth-value comparison.
inline constexpr double kTruthTolerance = 1e-9;

enum class LatticeKind { boolean, goguen, lukasiewicz };

std::string_view to_string(LatticeKind kind);

/// Parses "boolean", "goguen" or "lukasiewicz"; throws DomainError otherwise.
LatticeKind parse_lattice_kind(std::string_view text);

/// A residuated lattice on [0,1] (or {0,1} for the boolean kind).
///
/// Every operation validates its inputs: a value further than kTruthTolerance
/// outside the carrier raises DomainError, values within tolerance are
/// clamped. The complement is a -> 1 - a for all kinds.
class TruthLattice {
 public:
  constexpr explicit TruthLattice(LatticeKind kind = LatticeKind::boolean) : kind_(kind) {}

  constexpr LatticeKind kind() const noexcept { return kind_; }
  constexpr bool is_boolean() const noexcept { return kind_ == LatticeKind::boolean; }

  static constexpr double bottom() noexcept { return 0.0; }
  static constexpr double top() noexcept { return 1.0; }

  double meet(double a, double b) const;
  double join(double a, double b) const;
  /// Monoid operation (t-norm): min, product or max(0, a+b-1).
  double otimes(double a, double b) const;
  /// Residuum of otimes: the largest x with otimes(x, a) <= b.
  double residuum(double a, double b) const;
  double complement(double a) const;

  /// a <= b up to kTruthTolerance.
  bool leq(double a, double b) const;
  /// |a - b| <= kTruthTolerance.
  bool equal(double a, double b) const;

  /// Validates and clamps a value into the carrier.
  double check(double a) const;

 private:
  LatticeKind kind_;
};

}  // namespace morpho
