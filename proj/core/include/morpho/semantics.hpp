#pragma once

#include <span>
#include <variant>
#include <vector>

#include "morpho/formula.hpp"
#include "morpho/models.hpp"
#include "morpho/state_set.hpp"
#include "morpho/truth_lattice.hpp"

namespace morpho {

/// Fuzzy subset of the states: one truth value per state id.
using FuzzySet = std::vector<double>;

// Set morphology. B is read as the relation eta -> B_eta.

/// D_B(S) = {eta : transpose(B)_eta meets S}, i.e. the image of S under B.
StateSet dilate_set(const StructuringElement& se, const StateSet& s);
/// E_B(S) = {eta : B_eta subset of S}.
StateSet erode_set(const StructuringElement& se, const StateSet& s);

/// D_B(v)(eta) = sup over eta' of transpose(B)_eta(eta') (x) v(eta').
FuzzySet fuzzy_dilate(const TruthLattice& l, const StructuringElement& se, const FuzzySet& v);
/// E_B(v)(eta) = inf over eta' of B_eta(eta') -> v(eta').
FuzzySet fuzzy_erode(const TruthLattice& l, const StructuringElement& se, const FuzzySet& v);

/// Result of evaluating a formula: crisp state subset or fuzzy map.
class SatMap {
 public:
  explicit SatMap(StateSet s) : value_(std::move(s)) {}
  explicit SatMap(FuzzySet f) : value_(std::move(f)) {}

  bool is_crisp() const noexcept { return std::holds_alternative<StateSet>(value_); }
  const StateSet& crisp() const { return std::get<StateSet>(value_); }
  const FuzzySet& fuzzy() const { return std::get<FuzzySet>(value_); }

 private:
  std::variant<StateSet, FuzzySet> value_;
};

/// Crisp satisfaction set.
///
/// [B]^n phi is erosion by B iterated n times; <B>^n phi is dilation by the
/// transpose of B, so that <B> = ~[B]~ and `dia` matches the Kripke diamond.
/// Throws EvalError for unbound atoms or selems, fuzzy content, and quantifiers
/// on models that are not valuation spaces.
StateSet sat(const Model& m, const Formula& f);

/// Fuzzy satisfaction under lattice l: ~ is 1-a, & and | are meet and join,
/// -> is the residuum, [B] and <B> are fuzzy erosion and dilation (the latter by
/// the transposed selem). Crisp atoms and selems are read as {0,1}-valued.
FuzzySet sat_fuzzy(const Model& m, const Formula& f, const TruthLattice& l);

/// Crisp map for the boolean lattice on a model without fuzzy content,
/// fuzzy map otherwise.
SatMap evaluate(const Model& m, const Formula& f, const TruthLattice& l);

bool holds(const Model& m, StateId s, const Formula& f);
/// M |= f at every state.
bool valid(const Model& m, const Formula& f);

/// sat(f) subset of sat(g).
bool preceq(const Model& m, const Formula& f, const Formula& g);
bool equiv(const Model& m, const Formula& f, const Formula& g);
/// Pointwise order and equality of fuzzy satisfaction, within kTruthTolerance.
bool preceq(const Model& m, const Formula& f, const Formula& g, const TruthLattice& l);
bool equiv(const Model& m, const Formula& f, const Formula& g, const TruthLattice& l);

/// Every bank model that globally satisfies all of gamma globally satisfies phi.
bool entails(std::span<const Model> bank, std::span<const Formula> gamma, const Formula& phi);

}  // namespace morpho
