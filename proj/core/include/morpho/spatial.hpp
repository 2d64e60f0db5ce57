#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "morpho/formula.hpp"
#include "morpho/models.hpp"

namespace morpho {

/// Box by the selem (default "main"); the model must provide it.
Formula interior(const Model& m, const Formula& f, std::string_view se = kMainSelem);
/// Diamond by the selem.
Formula closure(const Model& m, const Formula& f, std::string_view se = kMainSelem);
/// f & ~interior(f).
Formula boundary(const Model& m, const Formula& f, std::string_view se = kMainSelem);

enum class Rcc8Relation { DC, EC, PO, TPP, TPPi, NTPP, NTPPi, EQ };

std::string_view to_string(Rcc8Relation r);
std::optional<Rcc8Relation> parse_rcc8_relation(std::string_view text);
/// Converse relation: TPP <-> TPPi, NTPP <-> NTPPi, others fixed.
Rcc8Relation inverse(Rcc8Relation r);

/// Truth of each defining condition for a pair of regions.
struct Rcc8Predicates {
  bool C = false;
  bool DC = false;
  bool EC = false;
  bool PO = false;
  bool TPP = false;
  bool TPPi = false;
  bool NTPP = false;
  bool NTPPi = false;
  bool EQ = false;

  bool get(Rcc8Relation r) const;
  friend bool operator==(const Rcc8Predicates&, const Rcc8Predicates&) = default;
};

struct Rcc8Result {
  /// Strict relation: the first true strict predicate in the order
  /// EQ, NTPP, NTPPi, TPP, TPPi, PO, EC, DC.
  Rcc8Relation relation = Rcc8Relation::DC;
  /// Literal encodings:
  ///   C     A(f & g)
  ///   DC    U(~f | ~g)
  ///   EC    U~(f & g), A(Df & g), A(f & Dg)
  ///   PO    A(f & g), A(f & ~g), A(~f & g)
  ///   TPP   U(f -> g), A(Df & ~g)
  ///   NTPP  U(f -> g), U(f -> Eg)
  ///   EQ    U(f <-> g)
  /// with TPPi, NTPPi the same on swapped arguments.
  Rcc8Predicates raw;
  /// raw plus side conditions: DC needs ~EC, TPP needs A(g & ~f),
  /// NTPP needs ~EQ (and symmetrically for the inverses).
  Rcc8Predicates strict;
};

/// The defining formula of a raw predicate, D and E taken by selem se.
Formula rcc8_raw_formula(Rcc8Relation r, const Formula& f, const Formula& g, std::string_view se);
Formula rcc8_connected_formula(const Formula& f, const Formula& g);

/// Throws DomainError for an empty region or a selem that is not reflexive and
/// symmetric.
Rcc8Result rcc8_classify(const Model& m, const Formula& f, const Formula& g, std::string_view se);

enum class RegionPart { boundary = 0, interior = 1, exterior = 2 };

std::string_view to_string(RegionPart p);

/// at(i, j): part i of the first region meets part j of the second.
struct NineIntersection {
  std::array<std::array<bool, 3>, 3> cells{};

  bool at(RegionPart a, RegionPart b) const {
    return cells[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
  }
  friend bool operator==(const NineIntersection&, const NineIntersection&) = default;
};

NineIntersection nine_intersection(const Model& m, const Formula& f, const Formula& g,
                                   std::string_view se = kMainSelem);

/// Non-negative integer or +infinity.
class Distance {
 public:
  Distance() = default;
  explicit Distance(std::size_t v) : value_(v) {}
  static Distance infinite() { return Distance(); }

  bool is_infinite() const noexcept { return !value_; }
  std::size_t value() const { return value_.value(); }
  /// Decimal integer or "inf".
  std::string str() const;

  friend bool operator==(const Distance&, const Distance&) = default;
  friend bool operator==(const Distance& d, std::size_t v) { return d.value_ == v; }

 private:
  std::optional<std::size_t> value_;
};

// Distances by iterated dilation with a reflexive symmetric unit selem. The
// iteration stops after |states| steps; an unreached target gives infinity.

/// Least n with s in D^n(f).
Distance dist_point(const Model& m, StateId s, const Formula& f, std::string_view unit);
/// Least n with A(D^n(f) & g).
Distance d_min(const Model& m, const Formula& f, const Formula& g, std::string_view unit);
/// Least n with g => D^n(f) and f => D^n(g).
Distance d_hausdorff(const Model& m, const Formula& f, const Formula& g, std::string_view unit);

/// Validity of g => ~D^n1(f) & D^n2(f), with D^0 the identity.
bool in_distance_interval(const Model& m, const Formula& g, const Formula& f, std::size_t n1, std::size_t n2,
                          std::string_view unit);

/// sat(f2) inside the dilation of sat(f) by dir: every f2 state is reached from
/// an f state along dir.
bool directional_check(const Model& m, const Formula& f2, const Formula& f, std::string_view dir);

}  // namespace morpho
