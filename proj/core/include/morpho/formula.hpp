#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace morpho {

/// Reserved structuring-element names.
inline constexpr std::string_view kMainSelem = "main";
inline constexpr std::string_view kUniversalSelem = "univ";
inline constexpr std::string_view kVariableSelemPrefix = "var:";

/// "var:x" for variable x.
std::string variable_selem(std::string_view variable);
/// The variable bound by a "var:x" selem name, if it is one.
std::optional<std::string> selem_variable(std::string_view selem);

enum class NodeKind {
  atom,
  top,
  bottom,
  negation,
  conjunction,
  disjunction,
  implication,
  erosion,
  dilation,
};

/// Immutable formula AST with structural sharing.
///
/// Erosion and dilation nodes carry the structuring-element name and an
/// iteration count n >= 1 (E^n, D^n). U and A are erosion and dilation by the
/// reserved selem "univ"; box/dia use "main"; forall x / exists x use "var:x".
class Formula {
 public:
  /// Defaults to T.
  Formula();

  static Formula atom(std::string name, std::vector<std::string> args = {});
  static Formula top();
  static Formula bottom();
  static Formula negation(Formula f);
  static Formula conjunction(Formula a, Formula b);
  static Formula disjunction(Formula a, Formula b);
  static Formula implication(Formula a, Formula b);
  /// (a -> b) & (b -> a)
  static Formula biconditional(const Formula& a, const Formula& b);
  static Formula erosion(std::string selem, unsigned iterations, Formula f);
  static Formula dilation(std::string selem, unsigned iterations, Formula f);

  // Sugar.
  static Formula box(Formula f) { return erosion(std::string(kMainSelem), 1, std::move(f)); }
  static Formula dia(Formula f) { return dilation(std::string(kMainSelem), 1, std::move(f)); }
  static Formula everywhere(Formula f) { return erosion(std::string(kUniversalSelem), 1, std::move(f)); }
  static Formula somewhere(Formula f) { return dilation(std::string(kUniversalSelem), 1, std::move(f)); }
  static Formula forall(std::string_view var, Formula f) { return erosion(variable_selem(var), 1, std::move(f)); }
  static Formula exists(std::string_view var, Formula f) { return dilation(variable_selem(var), 1, std::move(f)); }

  NodeKind kind() const noexcept;
  /// Atom name or selem name; empty for other nodes.
  const std::string& name() const noexcept;
  /// Atom argument terms (variable names or domain constants).
  const std::vector<std::string>& args() const noexcept;
  unsigned iterations() const noexcept;
  /// Operand of a unary node, left operand of a binary node.
  const Formula& lhs() const;
  const Formula& rhs() const;

  bool is_modal() const noexcept { return kind() == NodeKind::erosion || kind() == NodeKind::dilation; }
  bool is_binary() const noexcept {
    return kind() == NodeKind::conjunction || kind() == NodeKind::disjunction ||
           kind() == NodeKind::implication;
  }

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator<(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Parses the concrete syntax; throws ParseError with line/column.
Formula parse_formula(std::string_view text);

/// Minimal-parenthesis rendering; parse_formula(print_formula(f)) == f.
std::string print_formula(const Formula& f);

/// Atom text as it appears in the concrete syntax, e.g. "p" or "p(x,0)".
std::string atom_text(const Formula& atom);

/// Simultaneous replacement of atoms keyed by their atom_text.
Formula substitute(const Formula& f, const std::map<std::string, Formula>& replacement);

/// Number of Boolean connectives plus modal nodes, an n-fold operator counting n.
std::size_t formula_size(const Formula& f);

/// Rewrites every E^n / D^n with n > 1 into n nested single steps.
Formula unfold_iterations(const Formula& f);

/// Every atom_text occurring in f.
std::set<std::string> atom_names(const Formula& f);
/// Every selem name occurring in f.
std::set<std::string> selem_names(const Formula& f);

/// Variables with a free occurrence in an atom argument list.
std::set<std::string> free_variables(const Formula& f);

/// FOL substitution f(x/t): replaces free occurrences of variable x in atom
/// arguments by term t. Returns nullopt when t is a variable that would be
/// captured by an enclosing quantifier.
std::optional<Formula> substitute_variable(const Formula& f, std::string_view variable,
                                           std::string_view term);

}  // namespace morpho
