#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "morpho/formula.hpp"
#include "morpho/models.hpp"

namespace morpho {

enum class ProofSystem { T, S4, B, S5 };

std::string_view to_string(ProofSystem s);
/// Throws DomainError for anything but T, S4, B, S5.
ProofSystem parse_proof_system(std::string_view text);

enum class AxiomKind { taut, dual, distr, inst, invar, s4, b, s5 };

std::string_view to_string(AxiomKind k);
std::optional<AxiomKind> parse_axiom_kind(std::string_view text);
/// The S4 axiom is admitted in S4 and S5, the B axiom in B and S5, the S5
/// axiom in S5 only; the other schemas everywhere.
bool admissible(AxiomKind k, ProofSystem s);

/// Side condition of an Inst or Invar axiom.
struct Witness {
  enum class Kind { none, self, subst, closed, bank };
  Kind kind = Kind::none;
  std::string variable;  // subst
  std::string term;      // subst

  static Witness self() { return {Kind::self, {}, {}}; }
  static Witness subst(std::string x, std::string t) { return {Kind::subst, std::move(x), std::move(t)}; }
  static Witness closed() { return {Kind::closed, {}, {}}; }
  static Witness bank() { return {Kind::bank, {}, {}}; }

  friend bool operator==(const Witness&, const Witness&) = default;
};

struct Justification {
  enum class Kind { axiom, mp, nec, hyp };
  Kind kind = Kind::hyp;
  AxiomKind axiom = AxiomKind::taut;
  Witness witness;
  /// mp: premise line and implication line; nec: premise line. 1-based.
  std::size_t first = 0;
  std::size_t second = 0;

  static Justification of_axiom(AxiomKind k, Witness w = {}) { return {Kind::axiom, k, std::move(w), 0, 0}; }
  static Justification mp(std::size_t premise, std::size_t implication) {
    return {Kind::mp, AxiomKind::taut, {}, premise, implication};
  }
  static Justification nec(std::size_t premise) { return {Kind::nec, AxiomKind::taut, {}, premise, 0}; }
  static Justification hypothesis() { return {Kind::hyp, AxiomKind::taut, {}, 0, 0}; }

  friend bool operator==(const Justification&, const Justification&) = default;
};

struct ProofLine {
  Formula formula;
  Justification why;
};

/// Lines are numbered 1..n in order.
struct Derivation {
  ProofSystem system = ProofSystem::T;
  std::vector<ProofLine> lines;

  /// Appends a line and returns its number.
  std::size_t add(Formula f, Justification j);
};

/// Frame condition of a system on a crisp selem: reflexive (T), reflexive and
/// transitive (S4), reflexive and symmetric (B), equivalence (S5).
bool meets_frame_condition(const StructuringElement& se, ProofSystem s);

/// Replaces maximal non-Boolean subformulas by letters and decides the result
/// by truth table. Throws ProofError beyond 16 letters.
bool is_tautology_instance(const Formula& f);

/// Whether f is an invariant formula by syntax alone: built from T, F,
/// U/A-formulas, and FOL sentences (quantifiers over var:x, atoms whose
/// arguments are all bound or constant).
bool is_closed_formula(const Formula& f);

/// Checks f against one schema, including admissibility and side conditions.
/// An inst axiom without witness is read as a self-instance; an invar axiom
/// without witness as syntactic closedness. `why` receives the reason for a
/// mismatch. Invar with a bank witness and an empty bank throws ProofError.
bool matches_axiom(const Formula& f, AxiomKind k, ProofSystem s, const Witness& w, std::span<const Model> bank,
                   std::string* why = nullptr);

/// First schema admissible in s that f matches with the given witness.
std::optional<AxiomKind> match_axiom(const Formula& f, ProofSystem s, const Witness& w = {},
                                     std::span<const Model> bank = {});

struct AuditFailure {
  std::size_t line = 0;
  std::size_t model = 0;  // index into the bank
  std::string state;
};

struct CheckReport {
  bool accepted = true;
  /// First rejected line, with the reason.
  std::optional<std::size_t> failing_line;
  std::string reason;
  /// Lines accepted on semantic bank evidence only.
  std::vector<std::size_t> bank_relative;
  std::vector<std::size_t> hypotheses;

  // Soundness audit, run when a bank is supplied and the derivation is accepted.
  bool audited = false;
  std::size_t models_audited = 0;
  std::size_t models_skipped = 0;
  std::vector<AuditFailure> audit_failures;
};

/// Verifies every line in order. With `gamma`, hypothesis lines must be members
/// of gamma. A non-empty bank also runs the soundness audit: every line must be
/// valid in each bank model that interprets all symbols, whose selems meet the
/// frame condition, and where every hypothesis is valid.
/// Throws ProofError for references to missing or later lines.
CheckReport check_derivation(const Derivation& d, std::span<const Model> bank = {},
                             std::optional<std::span<const Formula>> gamma = std::nullopt);

/// Turns a derivation using hypothesis `phi` into a derivation of phi -> psi
/// (psi the last line) without it. Remaining hypothesis lines are kept.
/// `invariance` is the evidence used for phi -> E(phi) at Nec steps.
/// Throws ProofError when d is rejected, phi is not invariant, or d is empty.
Derivation deduction_transform(const Derivation& d, const Formula& phi, const Witness& invariance,
                               std::span<const Model> bank = {});

/// Text format:
///   system T|S4|B|S5
///   N axiom KIND "FORMULA" [witness self|subst X T|closed|bank]
///   N rule mp I J "FORMULA"
///   N rule nec I "FORMULA"
///   N hyp "FORMULA"
/// with N = 1, 2, ... and % comments.
Derivation parse_derivation(std::string_view text);
Derivation load_derivation(const std::string& path);
std::string print_derivation(const Derivation& d);

}  // namespace morpho
