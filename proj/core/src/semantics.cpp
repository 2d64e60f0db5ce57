#include "morpho/semantics.hpp"

#include <algorithm>

#include "morpho/error.hpp"

namespace morpho {

StateSet dilate_set(const StructuringElement& se, const StateSet& s) {
  const std::size_t n = se.state_count();
  if (se.is_universal()) return s.empty() ? StateSet(n) : StateSet::full(n);
  StateSet out(n);
  for (StateId src : s.members())
    for (const auto& nb : se.neighbors(src)) out.insert(nb.state);
  return out;
}

StateSet erode_set(const StructuringElement& se, const StateSet& s) {
  const std::size_t n = se.state_count();
  if (se.is_universal()) return s.is_full() ? StateSet::full(n) : StateSet(n);
  StateSet out(n);
  for (StateId eta = 0; eta < n; ++eta) {
    const auto row = se.neighbors(eta);
    if (std::all_of(row.begin(), row.end(), [&](const Neighbor& nb) { return s.contains(nb.state); }))
      out.insert(eta);
  }
  return out;
}

FuzzySet fuzzy_dilate(const TruthLattice& l, const StructuringElement& se, const FuzzySet& v) {
  const std::size_t n = se.state_count();
  FuzzySet out(n, TruthLattice::bottom());
  // Weight 0 contributes 0 (x) v = 0, so only listed neighbours matter.
  for (StateId src = 0; src < n; ++src)
    for (const auto& nb : se.neighbors(src)) out[nb.state] = l.join(out[nb.state], l.otimes(nb.weight, v[src]));
  return out;
}

FuzzySet fuzzy_erode(const TruthLattice& l, const StructuringElement& se, const FuzzySet& v) {
  const std::size_t n = se.state_count();
  FuzzySet out(n, TruthLattice::top());
  // Weight 0 contributes 0 -> v = 1.
  for (StateId eta = 0; eta < n; ++eta)
    for (const auto& nb : se.neighbors(eta)) out[eta] = l.meet(out[eta], l.residuum(nb.weight, v[nb.state]));
  return out;
}

namespace {

void check_selem_binding(const Model& m, const Formula& f) {
  if (m.has_selem(f.name())) return;
  if (auto var = selem_variable(f.name())) {
    if (m.kind() != ModelKind::valuation_space)
      throw EvalError("quantifier over '" + *var + "' requires a valuation-space model, this model is a " +
                      std::string(to_string(m.kind())) + " model");
    throw EvalError("unknown variable '" + *var + "'");
  }
  if (f.name() == kMainSelem) throw EvalError("box/dia need a structuring element named 'main' in the model");
  throw EvalError("unknown structuring element '" + f.name() + "'");
}

StateSet crisp_atom(const Model& m, const Formula& f) {
  if (!f.args().empty()) {
    if (m.kind() != ModelKind::valuation_space)
      throw EvalError("atom '" + atom_text(f) + "' has arguments; only valuation-space models interpret them");
    StateSet out(m.state_count());
    for (StateId s = 0; s < m.state_count(); ++s)
      if (m.predicate_holds(f.name(), f.args(), s)) out.insert(s);
    return out;
  }
  if (const StateSet* ext = m.crisp_atom(f.name())) return *ext;
  if (m.fuzzy_atom(f.name())) throw EvalError("atom '" + f.name() + "' is fuzzy; evaluate with a fuzzy lattice");
  throw EvalError("unbound atom '" + f.name() + "'");
}

StateSet eval_crisp(const Model& m, const Formula& f) {
  const std::size_t n = m.state_count();
  switch (f.kind()) {
    case NodeKind::atom:
      return crisp_atom(m, f);
    case NodeKind::top:
      return StateSet::full(n);
    case NodeKind::bottom:
      return StateSet(n);
    case NodeKind::negation:
      return eval_crisp(m, f.lhs()).complement();
    case NodeKind::conjunction:
      return eval_crisp(m, f.lhs()) & eval_crisp(m, f.rhs());
    case NodeKind::disjunction:
      return eval_crisp(m, f.lhs()) | eval_crisp(m, f.rhs());
    case NodeKind::implication:
      return eval_crisp(m, f.lhs()).complement() | eval_crisp(m, f.rhs());
    case NodeKind::erosion:
    case NodeKind::dilation: {
      check_selem_binding(m, f);
      const bool erode = f.kind() == NodeKind::erosion;
      const StructuringElement& se = erode ? m.selem(f.name()) : m.transposed(f.name());
      if (se.is_fuzzy())
        throw EvalError("structuring element '" + f.name() + "' is fuzzy; evaluate with a fuzzy lattice");
      StateSet s = eval_crisp(m, f.lhs());
      for (unsigned i = 0; i < f.iterations(); ++i) s = erode ? erode_set(se, s) : dilate_set(se, s);
      return s;
    }
  }
  return StateSet(n);
}

FuzzySet eval_fuzzy(const Model& m, const Formula& f, const TruthLattice& l) {
  const std::size_t n = m.state_count();
  auto pointwise = [&](FuzzySet a, const FuzzySet& b, auto op) {
    for (std::size_t i = 0; i < n; ++i) a[i] = op(a[i], b[i]);
    return a;
  };
  switch (f.kind()) {
    case NodeKind::atom: {
      if (f.args().empty()) {
        if (const FuzzySet* v = m.fuzzy_atom(f.name())) {
          if (l.is_boolean())
            throw EvalError("atom '" + f.name() + "' is fuzzy; the boolean lattice cannot interpret it");
          return *v;
        }
      }
      StateSet s = crisp_atom(m, f);
      FuzzySet out(n, 0.0);
      for (StateId id : s.members()) out[id] = 1.0;
      return out;
    }
    case NodeKind::top:
      return FuzzySet(n, 1.0);
    case NodeKind::bottom:
      return FuzzySet(n, 0.0);
    case NodeKind::negation: {
      FuzzySet v = eval_fuzzy(m, f.lhs(), l);
      for (double& x : v) x = l.complement(x);
      return v;
    }
    case NodeKind::conjunction:
      return pointwise(eval_fuzzy(m, f.lhs(), l), eval_fuzzy(m, f.rhs(), l),
                       [&](double a, double b) { return l.meet(a, b); });
    case NodeKind::disjunction:
      return pointwise(eval_fuzzy(m, f.lhs(), l), eval_fuzzy(m, f.rhs(), l),
                       [&](double a, double b) { return l.join(a, b); });
    case NodeKind::implication:
      return pointwise(eval_fuzzy(m, f.lhs(), l), eval_fuzzy(m, f.rhs(), l),
                       [&](double a, double b) { return l.residuum(a, b); });
    case NodeKind::erosion:
    case NodeKind::dilation: {
      check_selem_binding(m, f);
      const bool erode = f.kind() == NodeKind::erosion;
      // Formula-level dilation uses the transposed selem, as in the crisp case.
      const StructuringElement& se = erode ? m.selem(f.name()) : m.transposed(f.name());
      if (se.is_fuzzy() && l.is_boolean())
        throw EvalError("structuring element '" + f.name() + "' is fuzzy; the boolean lattice cannot interpret it");
      FuzzySet v = eval_fuzzy(m, f.lhs(), l);
      for (unsigned i = 0; i < f.iterations(); ++i) {
        if (se.is_universal()) {
          // Constant-1 universal selem: inf / sup over all states.
          const double c = erode ? *std::min_element(v.begin(), v.end()) : *std::max_element(v.begin(), v.end());
          std::fill(v.begin(), v.end(), c);
        } else {
          v = erode ? fuzzy_erode(l, se, v) : fuzzy_dilate(l, se, v);
        }
      }
      return v;
    }
  }
  return FuzzySet(n, 0.0);
}

}  // namespace

StateSet sat(const Model& m, const Formula& f) { return eval_crisp(m, f); }

FuzzySet sat_fuzzy(const Model& m, const Formula& f, const TruthLattice& l) { return eval_fuzzy(m, f, l); }

SatMap evaluate(const Model& m, const Formula& f, const TruthLattice& l) {
  if (l.is_boolean()) return SatMap(sat(m, f));
  return SatMap(sat_fuzzy(m, f, l));
}

bool holds(const Model& m, StateId s, const Formula& f) {
  if (s >= m.state_count()) throw DomainError("state id out of range");
  return sat(m, f).contains(s);
}

bool valid(const Model& m, const Formula& f) { return sat(m, f).is_full(); }

bool preceq(const Model& m, const Formula& f, const Formula& g) { return sat(m, f).subset_of(sat(m, g)); }

bool equiv(const Model& m, const Formula& f, const Formula& g) { return sat(m, f) == sat(m, g); }

bool preceq(const Model& m, const Formula& f, const Formula& g, const TruthLattice& l) {
  const FuzzySet a = sat_fuzzy(m, f, l), b = sat_fuzzy(m, g, l);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!l.leq(a[i], b[i])) return false;
  return true;
}

bool equiv(const Model& m, const Formula& f, const Formula& g, const TruthLattice& l) {
  const FuzzySet a = sat_fuzzy(m, f, l), b = sat_fuzzy(m, g, l);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!l.equal(a[i], b[i])) return false;
  return true;
}

bool entails(std::span<const Model> bank, std::span<const Formula> gamma, const Formula& phi) {
  if (bank.empty()) throw DomainError("entailment needs a non-empty model bank");
  for (const Model& m : bank) {
    const bool premises = std::all_of(gamma.begin(), gamma.end(), [&](const Formula& g) { return valid(m, g); });
    if (premises && !valid(m, phi)) return false;
  }
  return true;
}

}  // namespace morpho
