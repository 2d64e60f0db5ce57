#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "morpho/state_set.hpp"

namespace morpho {

enum class ModelKind { graph, grid, topology, valuation_space };

std::string_view to_string(ModelKind kind);

/// One weighted neighbour of a state in a structuring element.
struct Neighbor {
  StateId state;
  double weight;  // 1 for crisp selems, in (0,1] for fuzzy ones

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

/// A structuring element over a finite state space: a (possibly fuzzy)
/// relation eta -> B_eta. Rows are kept sorted by state id and contain only
/// strictly positive weights.
class StructuringElement {
 public:
  StructuringElement() = default;

  static StructuringElement crisp(std::string name, std::vector<std::vector<StateId>> rows);
  static StructuringElement fuzzy(std::string name, std::vector<std::vector<Neighbor>> rows);
  /// B_eta = every state; crisp.
  static StructuringElement universal(std::string name, std::size_t states);
  /// B_eta = {eta}; crisp.
  static StructuringElement identity(std::string name, std::size_t states);

  const std::string& name() const noexcept { return name_; }
  std::size_t state_count() const noexcept { return size_; }
  bool is_fuzzy() const noexcept { return fuzzy_; }
  bool is_universal() const noexcept { return universal_; }

  std::span<const Neighbor> neighbors(StateId s) const { return compact_ ? universal_row_ : rows_[s]; }
  /// Crisp support of B_eta.
  StateSet support(StateId s) const;
  /// B_from(to); 0 when absent.
  double weight(StateId from, StateId to) const;

  /// eta in B_eta (weight 1) for every eta.
  bool is_reflexive() const noexcept { return reflexive_; }
  /// B_eta(eta') == B_eta'(eta) for every pair.
  bool is_symmetric() const noexcept { return symmetric_; }
  /// Crisp transitivity of the support relation.
  bool is_transitive() const;
  /// First (a,b),(b,c) with (a,c) missing, if any.
  std::optional<std::pair<StateId, StateId>> transitivity_violation() const;

  /// eta' in transpose(B)_eta  iff  eta in B_eta'; same name.
  StructuringElement transpose() const;
  StructuringElement renamed(std::string name) const;

  /// Same relation (names ignored).
  friend bool operator==(const StructuringElement& a, const StructuringElement& b) {
    if (a.size_ != b.size_) return false;
    for (StateId s = 0; s < a.size_; ++s)
      if (!std::ranges::equal(a.neighbors(s), b.neighbors(s))) return false;
    return true;
  }

 private:
  void finalize();

  std::string name_;
  std::size_t size_ = 0;
  std::vector<std::vector<Neighbor>> rows_;
  bool compact_ = false;  // universal selem stored as one shared row
  std::vector<Neighbor> universal_row_;
  bool fuzzy_ = false;
  bool universal_ = false;
  bool reflexive_ = false;
  bool symmetric_ = false;
};

struct GridGeometry {
  int width = 0;
  int height = 0;

  std::size_t cells() const { return static_cast<std::size_t>(width) * static_cast<std::size_t>(height); }
  StateId id(int x, int y) const { return static_cast<StateId>(y) * static_cast<StateId>(width) + static_cast<StateId>(x); }
  int x(StateId s) const { return static_cast<int>(s % static_cast<StateId>(width)); }
  int y(StateId s) const { return static_cast<int>(s / static_cast<StateId>(width)); }
  bool contains(int x, int y) const { return x >= 0 && y >= 0 && x < width && y < height; }
};

struct Offset {
  int dx = 0;
  int dy = 0;
  double weight = 1.0;
};

/// B_(x,y) = {(x+dx, y+dy)} clipped to the grid.
StructuringElement offset_selem(std::string name, const GridGeometry& grid, std::span<const Offset> offsets);
/// Same, keeping offset weights as fuzzy memberships.
StructuringElement fuzzy_offset_selem(std::string name, const GridGeometry& grid, std::span<const Offset> offsets);

/// Origin plus the four axis neighbours.
std::vector<Offset> n4_offsets();
/// Origin plus the eight surrounding cells.
std::vector<Offset> n8_offsets();

/// Extensional predicate of a valuation-space model.
struct Predicate {
  std::vector<std::string> params;                // declared variable arguments
  std::vector<std::vector<std::size_t>> tuples;  // satisfying domain-index tuples
};

/// A finite state space with named structuring elements and an atom valuation.
///
/// Every model carries the universal selem "univ". Models are built by the
/// factory functions below or by load_model, and are treated as immutable
/// afterwards.
class Model {
 public:
  Model(ModelKind kind, std::vector<std::string> state_names);

  ModelKind kind() const noexcept { return kind_; }
  std::size_t state_count() const noexcept { return state_names_.size(); }
  const std::string& state_name(StateId s) const { return state_names_.at(s); }
  /// Accepts the state name; grid cells also as "x,y" or "(x,y)".
  std::optional<StateId> find_state(std::string_view name) const;
  StateSet all_states() const { return StateSet::full(state_count()); }

  const std::optional<GridGeometry>& grid() const noexcept { return grid_; }
  void set_grid(GridGeometry g);

  /// Adds or replaces a selem; its transpose is cached alongside.
  void add_selem(StructuringElement se);
  bool has_selem(std::string_view name) const;
  /// Throws EvalError when missing.
  const StructuringElement& selem(std::string_view name) const;
  const StructuringElement& transposed(std::string_view name) const;
  std::vector<std::string> selem_names() const;

  void set_atom(const std::string& name, StateSet extension);
  void set_fuzzy_atom(const std::string& name, std::vector<double> values);
  bool has_atom(std::string_view name) const;
  const StateSet* crisp_atom(std::string_view name) const;
  const std::vector<double>* fuzzy_atom(std::string_view name) const;
  std::vector<std::string> atom_names() const;
  bool has_fuzzy_content() const;

  // Valuation-space structure.
  const std::vector<std::string>& variables() const noexcept { return variables_; }
  const std::vector<std::string>& domain() const noexcept { return domain_; }
  /// Domain index of each variable in state s.
  const std::vector<std::size_t>& assignment(StateId s) const { return assignments_.at(s); }
  const Predicate* predicate(std::string_view name) const;
  /// Truth of name(terms) at state s; terms are variables or domain constants.
  bool predicate_holds(std::string_view name, std::span<const std::string> terms, StateId s) const;

 private:
  friend Model build_valuation_space(const std::vector<std::string>&, const std::vector<std::string>&,
                                     const std::map<std::string, Predicate>&);

  ModelKind kind_;
  std::vector<std::string> state_names_;
  std::optional<GridGeometry> grid_;
  std::map<std::string, std::pair<StructuringElement, StructuringElement>, std::less<>> selems_;
  std::map<std::string, StateSet, std::less<>> crisp_atoms_;
  std::map<std::string, std::vector<double>, std::less<>> fuzzy_atoms_;
  std::vector<std::string> variables_;
  std::vector<std::string> domain_;
  std::vector<std::vector<std::size_t>> assignments_;
  std::map<std::string, Predicate, std::less<>> predicates_;
};

/// Grid model with cells named "(x,y)", row-major ids.
Model make_grid_model(int width, int height);

/// Kripke model; selem "main" is the edge relation (reflexively closed on request).
Model make_kripke_model(std::vector<std::string> states, const std::vector<std::pair<StateId, StateId>>& edges,
                        const std::map<std::string, StateSet>& labels, bool reflexive = false);

/// Finite Alexandrov topology; `order` must already be a preorder (checked).
/// Selem "main" maps eta to its up-set.
Model make_topology_model(std::vector<std::string> states, const std::vector<std::pair<StateId, StateId>>& order,
                          const std::map<std::string, StateSet>& labels);

/// Reflexive-transitive closure of a relation on n states.
std::vector<std::pair<StateId, StateId>> preorder_closure(std::size_t n,
                                                          const std::vector<std::pair<StateId, StateId>>& generators);

/// States are all assignments vars -> domain; one selem "var:x" per variable.
Model build_valuation_space(const std::vector<std::string>& vars, const std::vector<std::string>& domain,
                            const std::map<std::string, Predicate>& predicates);

/// B_theta(eta) = states within path distance theta along `unit`.
StructuringElement threshold_selem(const Model& m, std::string_view unit, std::size_t theta, std::string name);

/// Parses any of the four model formats; throws ParseError / ModelError.
Model parse_model(std::string_view text);
Model load_model(const std::string& path);

}  // namespace morpho
