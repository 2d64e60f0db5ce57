#include "morpho/models.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <fstream>
#include <sstream>

#include "morpho/error.hpp"
#include "morpho/formula.hpp"
#include "morpho/truth_lattice.hpp"

namespace morpho {

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::graph:
      return "graph";
    case ModelKind::grid:
      return "grid";
    case ModelKind::topology:
      return "topology";
    case ModelKind::valuation_space:
      return "valuation-space";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// StructuringElement

StructuringElement StructuringElement::crisp(std::string name, std::vector<std::vector<StateId>> rows) {
  StructuringElement se;
  se.name_ = std::move(name);
  se.rows_.resize(rows.size());
  for (std::size_t s = 0; s < rows.size(); ++s) {
    for (StateId t : rows[s]) {
      if (t >= rows.size())
        throw ModelError("selem '" + se.name_ + "': state " + std::to_string(t) + " out of range");
      se.rows_[s].push_back({t, 1.0});
    }
  }
  se.finalize();
  return se;
}

StructuringElement StructuringElement::fuzzy(std::string name, std::vector<std::vector<Neighbor>> rows) {
  StructuringElement se;
  se.name_ = std::move(name);
  se.fuzzy_ = true;
  se.rows_ = std::move(rows);
  for (auto& row : se.rows_) {
    for (auto& n : row) {
      if (n.state >= se.rows_.size())
        throw ModelError("selem '" + se.name_ + "': state " + std::to_string(n.state) + " out of range");
      if (!(n.weight >= -kTruthTolerance && n.weight <= 1.0 + kTruthTolerance))
        throw ModelError("selem '" + se.name_ + "': weight " + std::to_string(n.weight) + " outside [0,1]");
      n.weight = std::clamp(n.weight, 0.0, 1.0);
    }
    std::erase_if(row, [](const Neighbor& n) { return n.weight <= 0.0; });
  }
  se.finalize();
  return se;
}

StructuringElement StructuringElement::universal(std::string name, std::size_t states) {
  // One shared row instead of |states|^2 entries.
  StructuringElement se;
  se.name_ = std::move(name);
  se.size_ = states;
  se.compact_ = true;
  se.universal_ = se.reflexive_ = se.symmetric_ = true;
  se.universal_row_.reserve(states);
  for (StateId t = 0; t < states; ++t) se.universal_row_.push_back({t, 1.0});
  return se;
}

StructuringElement StructuringElement::identity(std::string name, std::size_t states) {
  std::vector<std::vector<StateId>> rows(states);
  for (StateId s = 0; s < states; ++s) rows[s] = {s};
  return crisp(std::move(name), std::move(rows));
}

void StructuringElement::finalize() {
  size_ = rows_.size();
  for (auto& row : rows_) {
    std::sort(row.begin(), row.end(), [](const Neighbor& a, const Neighbor& b) { return a.state < b.state; });
    // Duplicates keep the larger weight.
    std::vector<Neighbor> merged;
    for (const auto& n : row) {
      if (!merged.empty() && merged.back().state == n.state)
        merged.back().weight = std::max(merged.back().weight, n.weight);
      else
        merged.push_back(n);
    }
    row = std::move(merged);
  }
  const std::size_t n = rows_.size();
  reflexive_ = true;
  universal_ = !fuzzy_ || std::all_of(rows_.begin(), rows_.end(), [](const auto& row) {
    return std::all_of(row.begin(), row.end(), [](const Neighbor& x) { return x.weight == 1.0; });
  });
  for (StateId s = 0; s < n; ++s) {
    if (weight(s, s) < 1.0 - kTruthTolerance) reflexive_ = false;
    if (rows_[s].size() != n) universal_ = false;
  }
  symmetric_ = true;
  for (StateId s = 0; s < n && symmetric_; ++s)
    for (const auto& nb : rows_[s])
      if (std::fabs(weight(nb.state, s) - nb.weight) > kTruthTolerance) {
        symmetric_ = false;
        break;
      }
}

StateSet StructuringElement::support(StateId s) const {
  if (compact_) return StateSet::full(size_);
  StateSet out(size_);
  for (const auto& n : rows_[s]) out.insert(n.state);
  return out;
}

double StructuringElement::weight(StateId from, StateId to) const {
  if (compact_) return 1.0;
  const auto& row = rows_[from];
  auto it = std::lower_bound(row.begin(), row.end(), to, [](const Neighbor& n, StateId t) { return n.state < t; });
  return (it != row.end() && it->state == to) ? it->weight : 0.0;
}

std::optional<std::pair<StateId, StateId>> StructuringElement::transitivity_violation() const {
  if (compact_) return std::nullopt;
  for (StateId a = 0; a < rows_.size(); ++a) {
    const StateSet from_a = support(a);
    for (const auto& b : rows_[a])
      for (const auto& c : rows_[b.state])
        if (!from_a.contains(c.state)) return std::make_pair(a, c.state);
  }
  return std::nullopt;
}

bool StructuringElement::is_transitive() const { return !transitivity_violation().has_value(); }

StructuringElement StructuringElement::transpose() const {
  if (compact_) return *this;
  StructuringElement t;
  t.name_ = name_;
  t.fuzzy_ = fuzzy_;
  t.rows_.resize(rows_.size());
  for (StateId s = 0; s < rows_.size(); ++s)
    for (const auto& n : rows_[s]) t.rows_[n.state].push_back({s, n.weight});
  t.finalize();
  return t;
}

StructuringElement StructuringElement::renamed(std::string name) const {
  StructuringElement r = *this;
  r.name_ = std::move(name);
  return r;
}

// ---------------------------------------------------------------------------
// Grid selems

namespace {

StructuringElement grid_selem(std::string name, const GridGeometry& grid, std::span<const Offset> offsets,
                              bool fuzzy) {
  std::vector<std::vector<Neighbor>> rows(grid.cells());
  for (int y = 0; y < grid.height; ++y)
    for (int x = 0; x < grid.width; ++x)
      for (const auto& o : offsets)
        if (grid.contains(x + o.dx, y + o.dy))
          rows[grid.id(x, y)].push_back({grid.id(x + o.dx, y + o.dy), fuzzy ? o.weight : 1.0});
  if (fuzzy) return StructuringElement::fuzzy(std::move(name), std::move(rows));
  std::vector<std::vector<StateId>> crisp(rows.size());
  for (std::size_t s = 0; s < rows.size(); ++s)
    for (const auto& n : rows[s]) crisp[s].push_back(n.state);
  return StructuringElement::crisp(std::move(name), std::move(crisp));
}

}  // namespace

StructuringElement offset_selem(std::string name, const GridGeometry& grid, std::span<const Offset> offsets) {
  return grid_selem(std::move(name), grid, offsets, false);
}

StructuringElement fuzzy_offset_selem(std::string name, const GridGeometry& grid, std::span<const Offset> offsets) {
  return grid_selem(std::move(name), grid, offsets, true);
}

std::vector<Offset> n4_offsets() { return {{0, 0}, {1, 0}, {-1, 0}, {0, 1}, {0, -1}}; }

std::vector<Offset> n8_offsets() {
  std::vector<Offset> out;
  for (int dy = -1; dy <= 1; ++dy)
    for (int dx = -1; dx <= 1; ++dx) out.push_back({dx, dy});
  return out;
}

// ---------------------------------------------------------------------------
// Model

Model::Model(ModelKind kind, std::vector<std::string> state_names)
    : kind_(kind), state_names_(std::move(state_names)) {
  add_selem(StructuringElement::universal(std::string(kUniversalSelem), state_count()));
}

std::optional<StateId> Model::find_state(std::string_view name) const {
  for (StateId s = 0; s < state_names_.size(); ++s)
    if (state_names_[s] == name) return s;
  if (grid_) {
    std::string t(name);
    if (t.size() >= 2 && t.front() == '(' && t.back() == ')') t = t.substr(1, t.size() - 2);
    int x = 0, y = 0;
    char comma = 0;
    std::istringstream in(t);
    if (in >> x >> comma >> y && comma == ',' && in.peek() == std::char_traits<char>::eof() &&
        grid_->contains(x, y))
      return grid_->id(x, y);
  }
  return std::nullopt;
}

void Model::set_grid(GridGeometry g) {
  if (g.cells() != state_count()) throw ModelError("grid geometry does not match state count");
  grid_ = g;
}

void Model::add_selem(StructuringElement se) {
  if (se.state_count() != state_count())
    throw ModelError("selem '" + se.name() + "' has " + std::to_string(se.state_count()) + " rows, model has " +
                     std::to_string(state_count()) + " states");
  StructuringElement t = se.transpose();
  std::string name = se.name();
  selems_.insert_or_assign(std::move(name), std::make_pair(std::move(se), std::move(t)));
}

bool Model::has_selem(std::string_view name) const { return selems_.find(name) != selems_.end(); }

const StructuringElement& Model::selem(std::string_view name) const {
  auto it = selems_.find(name);
  if (it == selems_.end()) throw EvalError("unknown structuring element '" + std::string(name) + "'");
  return it->second.first;
}

const StructuringElement& Model::transposed(std::string_view name) const {
  auto it = selems_.find(name);
  if (it == selems_.end()) throw EvalError("unknown structuring element '" + std::string(name) + "'");
  return it->second.second;
}

std::vector<std::string> Model::selem_names() const {
  std::vector<std::string> out;
  for (const auto& [name, _] : selems_) out.push_back(name);
  return out;
}

void Model::set_atom(const std::string& name, StateSet extension) {
  if (extension.universe() != state_count()) throw ModelError("atom '" + name + "': wrong state universe");
  if (fuzzy_atoms_.contains(name)) throw ModelError("atom '" + name + "' is already fuzzy");
  crisp_atoms_.insert_or_assign(name, std::move(extension));
}

void Model::set_fuzzy_atom(const std::string& name, std::vector<double> values) {
  if (kind_ != ModelKind::grid && kind_ != ModelKind::graph)
    throw ModelError("fuzzy valuations are only allowed in grid and graph models");
  if (values.size() != state_count()) throw ModelError("fuzzy atom '" + name + "': wrong number of values");
  if (crisp_atoms_.contains(name)) throw ModelError("atom '" + name + "' is already crisp");
  for (double& v : values) {
    if (!(v >= -kTruthTolerance && v <= 1.0 + kTruthTolerance))
      throw ModelError("fuzzy atom '" + name + "': value " + std::to_string(v) + " outside [0,1]");
    v = std::clamp(v, 0.0, 1.0);
  }
  fuzzy_atoms_.insert_or_assign(name, std::move(values));
}

bool Model::has_atom(std::string_view name) const {
  return crisp_atoms_.find(name) != crisp_atoms_.end() || fuzzy_atoms_.find(name) != fuzzy_atoms_.end();
}

const StateSet* Model::crisp_atom(std::string_view name) const {
  auto it = crisp_atoms_.find(name);
  return it == crisp_atoms_.end() ? nullptr : &it->second;
}

const std::vector<double>* Model::fuzzy_atom(std::string_view name) const {
  auto it = fuzzy_atoms_.find(name);
  return it == fuzzy_atoms_.end() ? nullptr : &it->second;
}

std::vector<std::string> Model::atom_names() const {
  std::vector<std::string> out;
  for (const auto& [n, _] : crisp_atoms_) out.push_back(n);
  for (const auto& [n, _] : fuzzy_atoms_) out.push_back(n);
  std::sort(out.begin(), out.end());
  return out;
}

bool Model::has_fuzzy_content() const {
  if (!fuzzy_atoms_.empty()) return true;
  for (const auto& [_, pair] : selems_)
    if (pair.first.is_fuzzy()) return true;
  return false;
}

const Predicate* Model::predicate(std::string_view name) const {
  auto it = predicates_.find(name);
  return it == predicates_.end() ? nullptr : &it->second;
}

bool Model::predicate_holds(std::string_view name, std::span<const std::string> terms, StateId s) const {
  const Predicate* p = predicate(name);
  if (p == nullptr) throw EvalError("unknown predicate '" + std::string(name) + "'");
  if (terms.size() != p->params.size())
    throw EvalError("predicate '" + std::string(name) + "' expects " + std::to_string(p->params.size()) +
                    " arguments, got " + std::to_string(terms.size()));
  std::vector<std::size_t> tuple;
  tuple.reserve(terms.size());
  for (const auto& term : terms) {
    auto v = std::find(variables_.begin(), variables_.end(), term);
    if (v != variables_.end()) {
      tuple.push_back(assignments_[s][static_cast<std::size_t>(v - variables_.begin())]);
      continue;
    }
    auto d = std::find(domain_.begin(), domain_.end(), term);
    if (d == domain_.end()) throw EvalError("term '" + term + "' is neither a variable nor a domain value");
    tuple.push_back(static_cast<std::size_t>(d - domain_.begin()));
  }
  return std::binary_search(p->tuples.begin(), p->tuples.end(), tuple);
}

// ---------------------------------------------------------------------------
// Factories

Model make_grid_model(int width, int height) {
  if (width <= 0 || height <= 0) throw ModelError("grid dimensions must be positive");
  GridGeometry g{width, height};
  std::vector<std::string> names(g.cells());
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x) names[g.id(x, y)] = "(" + std::to_string(x) + "," + std::to_string(y) + ")";
  Model m(ModelKind::grid, std::move(names));
  m.set_grid(g);
  return m;
}

Model make_kripke_model(std::vector<std::string> states, const std::vector<std::pair<StateId, StateId>>& edges,
                        const std::map<std::string, StateSet>& labels, bool reflexive) {
  const std::size_t n = states.size();
  Model m(ModelKind::graph, std::move(states));
  std::vector<std::vector<StateId>> rows(n);
  for (auto [a, b] : edges) {
    if (a >= n || b >= n) throw ModelError("edge references unknown state");
    rows[a].push_back(b);
  }
  if (reflexive)
    for (StateId s = 0; s < n; ++s) rows[s].push_back(s);
  m.add_selem(StructuringElement::crisp(std::string(kMainSelem), std::move(rows)));
  for (const auto& [name, ext] : labels) m.set_atom(name, ext);
  return m;
}

std::vector<std::pair<StateId, StateId>> preorder_closure(std::size_t n,
                                                          const std::vector<std::pair<StateId, StateId>>& generators) {
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (StateId s = 0; s < n; ++s) r[s][s] = true;
  for (auto [a, b] : generators) {
    if (a >= n || b >= n) throw ModelError("order references unknown state");
    r[a][b] = true;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (r[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (r[k][j]) r[i][j] = true;
  std::vector<std::pair<StateId, StateId>> out;
  for (StateId i = 0; i < n; ++i)
    for (StateId j = 0; j < n; ++j)
      if (r[i][j]) out.emplace_back(i, j);
  return out;
}

Model make_topology_model(std::vector<std::string> states, const std::vector<std::pair<StateId, StateId>>& order,
                          const std::map<std::string, StateSet>& labels) {
  const std::size_t n = states.size();
  Model m(ModelKind::topology, std::move(states));
  std::vector<std::vector<StateId>> rows(n);
  for (auto [a, b] : order) {
    if (a >= n || b >= n) throw ModelError("order references unknown state");
    rows[a].push_back(b);
  }
  auto up = StructuringElement::crisp(std::string(kMainSelem), std::move(rows));
  for (StateId s = 0; s < n; ++s)
    if (!up.support(s).contains(s))
      throw ModelError("topology order is not reflexive at state '" + m.state_name(s) + "'");
  if (auto bad = up.transitivity_violation()) {
    // Find the middle state for the message.
    StateId a = bad->first, c = bad->second, b = a;
    for (const auto& nb : up.neighbors(a))
      if (up.support(nb.state).contains(c)) b = nb.state;
    throw ModelError("topology order is not transitive: " + m.state_name(a) + " <= " + m.state_name(b) + " and " +
                     m.state_name(b) + " <= " + m.state_name(c) + " but not " + m.state_name(a) + " <= " +
                     m.state_name(c));
  }
  m.add_selem(std::move(up));
  for (const auto& [name, ext] : labels) m.set_atom(name, ext);
  return m;
}

Model build_valuation_space(const std::vector<std::string>& vars, const std::vector<std::string>& domain,
                            const std::map<std::string, Predicate>& predicates) {
  if (vars.empty()) throw ModelError("valuation space needs at least one variable");
  if (domain.empty()) throw ModelError("valuation space needs a non-empty domain");
  for (std::size_t i = 0; i < vars.size(); ++i)
    for (std::size_t j = i + 1; j < vars.size(); ++j)
      if (vars[i] == vars[j]) throw ModelError("duplicate variable '" + vars[i] + "'");
  const std::size_t k = vars.size(), d = domain.size();
  std::size_t n = 1;
  for (std::size_t i = 0; i < k; ++i) {
    n *= d;
    if (n > 1'000'000) throw ModelError("valuation space too large");
  }
  // vars[0] is the most significant digit.
  std::vector<std::size_t> stride(k, 1);
  for (std::size_t i = k - 1; i-- > 0;) stride[i] = stride[i + 1] * d;

  std::vector<std::vector<std::size_t>> assignments(n, std::vector<std::size_t>(k));
  std::vector<std::string> names(n);
  for (StateId s = 0; s < n; ++s) {
    std::string name;
    for (std::size_t i = 0; i < k; ++i) {
      assignments[s][i] = (s / stride[i]) % d;
      if (i) name += ',';
      name += vars[i] + "=" + domain[assignments[s][i]];
    }
    names[s] = std::move(name);
  }

  Model m(ModelKind::valuation_space, std::move(names));
  m.variables_ = vars;
  m.domain_ = domain;
  m.assignments_ = std::move(assignments);

  for (std::size_t i = 0; i < k; ++i) {
    std::vector<std::vector<StateId>> rows(n);
    for (StateId s = 0; s < n; ++s) {
      const StateId base = s - m.assignments_[s][i] * stride[i];
      for (std::size_t v = 0; v < d; ++v) rows[s].push_back(base + v * stride[i]);
    }
    m.add_selem(StructuringElement::crisp(variable_selem(vars[i]), std::move(rows)));
  }

  for (const auto& [name, pred] : predicates) {
    Predicate p = pred;
    for (const auto& param : p.params)
      if (std::find(vars.begin(), vars.end(), param) == vars.end())
        throw ModelError("predicate '" + name + "': unknown variable '" + param + "'");
    for (const auto& t : p.tuples) {
      if (t.size() != p.params.size()) throw ModelError("predicate '" + name + "': tuple arity mismatch");
      for (auto v : t)
        if (v >= d) throw ModelError("predicate '" + name + "': value index out of range");
    }
    std::sort(p.tuples.begin(), p.tuples.end());
    p.tuples.erase(std::unique(p.tuples.begin(), p.tuples.end()), p.tuples.end());
    m.predicates_.emplace(name, std::move(p));
    StateSet ext(n);
    const auto& stored = m.predicates_.at(name);
    for (StateId s = 0; s < n; ++s)
      if (m.predicate_holds(name, stored.params, s)) ext.insert(s);
    m.set_atom(name, std::move(ext));
  }
  return m;
}

StructuringElement threshold_selem(const Model& m, std::string_view unit, std::size_t theta, std::string name) {
  const StructuringElement& u = m.selem(unit);
  const std::size_t n = m.state_count();
  std::vector<std::vector<StateId>> rows(n);
  std::vector<std::size_t> dist(n);
  constexpr std::size_t kUnseen = static_cast<std::size_t>(-1);
  for (StateId src = 0; src < n; ++src) {
    std::fill(dist.begin(), dist.end(), kUnseen);
    std::deque<StateId> queue{src};
    dist[src] = 0;
    while (!queue.empty()) {
      StateId s = queue.front();
      queue.pop_front();
      rows[src].push_back(s);
      if (dist[s] == theta) continue;
      for (const auto& nb : u.neighbors(s))
        if (dist[nb.state] == kUnseen) {
          dist[nb.state] = dist[s] + 1;
          queue.push_back(nb.state);
        }
    }
  }
  return StructuringElement::crisp(std::move(name), std::move(rows));
}

}  // namespace morpho
