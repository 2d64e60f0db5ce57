#include "morpho/proof.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "morpho/error.hpp"
#include "morpho/semantics.hpp"

namespace morpho {

std::string_view to_string(ProofSystem s) {
  switch (s) {
    case ProofSystem::T: return "T";
    case ProofSystem::S4: return "S4";
    case ProofSystem::B: return "B";
    case ProofSystem::S5: return "S5";
  }
  return "?";
}

ProofSystem parse_proof_system(std::string_view text) {
  for (ProofSystem s : {ProofSystem::T, ProofSystem::S4, ProofSystem::B, ProofSystem::S5})
    if (to_string(s) == text) return s;
  throw DomainError("unknown proof system '" + std::string(text) + "' (expected T, S4, B or S5)");
}

std::string_view to_string(AxiomKind k) {
  switch (k) {
    case AxiomKind::taut: return "taut";
    case AxiomKind::dual: return "dual";
    case AxiomKind::distr: return "distr";
    case AxiomKind::inst: return "inst";
    case AxiomKind::invar: return "invar";
    case AxiomKind::s4: return "s4";
    case AxiomKind::b: return "b";
    case AxiomKind::s5: return "s5";
  }
  return "?";
}

std::optional<AxiomKind> parse_axiom_kind(std::string_view text) {
  for (AxiomKind k : {AxiomKind::taut, AxiomKind::dual, AxiomKind::distr, AxiomKind::inst, AxiomKind::invar,
                      AxiomKind::s4, AxiomKind::b, AxiomKind::s5})
    if (to_string(k) == text) return k;
  return std::nullopt;
}

bool admissible(AxiomKind k, ProofSystem s) {
  switch (k) {
    case AxiomKind::s4: return s == ProofSystem::S4 || s == ProofSystem::S5;
    case AxiomKind::b: return s == ProofSystem::B || s == ProofSystem::S5;
    case AxiomKind::s5: return s == ProofSystem::S5;
    default: return true;
  }
}

std::size_t Derivation::add(Formula f, Justification j) {
  lines.push_back({std::move(f), std::move(j)});
  return lines.size();
}

bool meets_frame_condition(const StructuringElement& se, ProofSystem s) {
  if (se.is_fuzzy() || !se.is_reflexive()) return false;
  switch (s) {
    case ProofSystem::T: return true;
    case ProofSystem::S4: return se.is_transitive();
    case ProofSystem::B: return se.is_symmetric();
    case ProofSystem::S5: return se.is_symmetric() && se.is_transitive();
  }
  return false;
}

namespace {

// Formulas are compared modulo unfolding of iterated modalities.
bool same(const Formula& a, const Formula& b) { return a == b || unfold_iterations(a) == unfold_iterations(b); }

Formula modal(NodeKind k, const std::string& selem, unsigned n, Formula body) {
  return k == NodeKind::erosion ? Formula::erosion(selem, n, std::move(body))
                                : Formula::dilation(selem, n, std::move(body));
}

/// Number of leading k-steps by selem at the top of f.
unsigned chain(const Formula& f, NodeKind k, const std::string& selem) {
  unsigned n = 0;
  const Formula* cur = &f;
  while (cur->kind() == k && cur->name() == selem) {
    n += cur->iterations();
    cur = &cur->lhs();
  }
  return n;
}

/// f with exactly i leading k-steps by selem removed.
std::optional<Formula> strip(const Formula& f, NodeKind k, const std::string& selem, unsigned i) {
  Formula cur = f;
  while (i > 0) {
    if (cur.kind() != k || cur.name() != selem) return std::nullopt;
    const unsigned n = cur.iterations();
    if (n > i) return modal(k, selem, n - i, cur.lhs());
    i -= n;
    cur = cur.lhs();
  }
  return cur;
}

bool is_imp(const Formula& f) { return f.kind() == NodeKind::implication; }

bool fail(std::string* why, std::string text) {
  if (why) *why = std::move(text);
  return false;
}

// E^i(x) <-> ~D^i(~x), or with E and D exchanged, in either orientation.
bool dual_side(const Formula& l, const Formula& r) {
  if (!l.is_modal() || r.kind() != NodeKind::negation) return false;
  const NodeKind k = l.kind();
  const NodeKind other = k == NodeKind::erosion ? NodeKind::dilation : NodeKind::erosion;
  const std::string& b = l.name();
  for (unsigned i = 1; i <= chain(l, k, b); ++i) {
    auto x = strip(l, k, b, i);
    auto y = strip(r.lhs(), other, b, i);
    if (x && y && y->kind() == NodeKind::negation && same(y->lhs(), *x)) return true;
  }
  return false;
}

bool match_dual(const Formula& f) {
  if (f.kind() != NodeKind::conjunction || !is_imp(f.lhs()) || !is_imp(f.rhs())) return false;
  const Formula& l = f.lhs().lhs();
  const Formula& r = f.lhs().rhs();
  if (!same(f.rhs().lhs(), r) || !same(f.rhs().rhs(), l)) return false;
  return dual_side(l, r) || dual_side(r, l);
}

// E^i(a -> b) -> (E^i a -> E^i b)
bool match_distr(const Formula& f) {
  if (!is_imp(f) || !is_imp(f.rhs()) || f.lhs().kind() != NodeKind::erosion) return false;
  const std::string& b = f.lhs().name();
  for (unsigned i = 1; i <= chain(f.lhs(), NodeKind::erosion, b); ++i) {
    auto body = strip(f.lhs(), NodeKind::erosion, b, i);
    auto a = strip(f.rhs().lhs(), NodeKind::erosion, b, i);
    auto c = strip(f.rhs().rhs(), NodeKind::erosion, b, i);
    if (!body || !a || !c || !is_imp(*body)) continue;
    if (same(body->lhs(), *a) && same(body->rhs(), *c)) return true;
  }
  return false;
}

bool has_bare_atom(const Formula& f) {
  switch (f.kind()) {
    case NodeKind::atom: return f.args().empty();
    case NodeKind::top:
    case NodeKind::bottom: return false;
    case NodeKind::negation:
    case NodeKind::erosion:
    case NodeKind::dilation: return has_bare_atom(f.lhs());
    default: return has_bare_atom(f.lhs()) || has_bare_atom(f.rhs());
  }
}

// E^i(x) -> x'
bool match_inst(const Formula& f, const Witness& w, std::string* why) {
  if (!is_imp(f) || f.lhs().kind() != NodeKind::erosion) return fail(why, "not of the form E(phi) -> phi'");
  const Formula& l = f.lhs();
  if (w.kind == Witness::Kind::none || w.kind == Witness::Kind::self) {
    for (unsigned i = 1; i <= chain(l, NodeKind::erosion, l.name()); ++i)
      if (auto x = strip(l, NodeKind::erosion, l.name(), i); x && same(*x, f.rhs())) return true;
    return fail(why, "consequent is not the eroded formula (self-instance)");
  }
  if (w.kind != Witness::Kind::subst) return fail(why, "inst needs witness self or subst");
  if (l.name() != variable_selem(w.variable))
    return fail(why, "antecedent is not a quantifier over '" + w.variable + "'");
  auto body = strip(l, NodeKind::erosion, l.name(), 1);
  if (has_bare_atom(*body)) return fail(why, "substitution needs atoms with explicit arguments");
  auto inst = substitute_variable(*body, w.variable, w.term);
  if (!inst) return fail(why, "term '" + w.term + "' would be captured");
  if (!same(*inst, f.rhs())) return fail(why, "consequent is not phi(" + w.variable + "/" + w.term + ")");
  return true;
}

bool closed_under(const Formula& f, std::vector<std::string>& bound) {
  switch (f.kind()) {
    case NodeKind::top:
    case NodeKind::bottom: return true;
    case NodeKind::atom:
      return !f.args().empty() && std::all_of(f.args().begin(), f.args().end(), [&](const std::string& a) {
               return std::isdigit(static_cast<unsigned char>(a.front())) || a.front() == '-' ||
                      std::find(bound.begin(), bound.end(), a) != bound.end();
             });
    case NodeKind::negation: return closed_under(f.lhs(), bound);
    case NodeKind::erosion:
    case NodeKind::dilation: {
      if (f.name() == kUniversalSelem) return true;
      auto var = selem_variable(f.name());
      if (!var) return false;
      bound.push_back(*var);
      const bool ok = closed_under(f.lhs(), bound);
      bound.pop_back();
      return ok;
    }
    default: return closed_under(f.lhs(), bound) && closed_under(f.rhs(), bound);
  }
}

// x -> E^i(x)
bool match_invar(const Formula& f, const Witness& w, std::span<const Model> bank, std::string* why) {
  if (!is_imp(f) || f.rhs().kind() != NodeKind::erosion) return fail(why, "not of the form phi -> E(phi)");
  const Formula& r = f.rhs();
  bool shape = false;
  for (unsigned i = 1; i <= chain(r, NodeKind::erosion, r.name()) && !shape; ++i)
    if (auto x = strip(r, NodeKind::erosion, r.name(), i); x && same(*x, f.lhs())) shape = true;
  if (!shape) return fail(why, "not of the form phi -> E(phi)");
  if (w.kind == Witness::Kind::none || w.kind == Witness::Kind::closed) {
    if (!is_closed_formula(f.lhs())) return fail(why, "'" + print_formula(f.lhs()) + "' is not syntactically closed");
    return true;
  }
  if (w.kind != Witness::Kind::bank) return fail(why, "invar needs witness closed or bank");
  if (bank.empty()) throw ProofError("invar with bank evidence needs a non-empty model bank");
  std::size_t used = 0;
  for (std::size_t i = 0; i < bank.size(); ++i) {
    try {
      if (!valid(bank[i], f)) return fail(why, "not invariant in bank model " + std::to_string(i));
      ++used;
    } catch (const EvalError&) {
      // model does not interpret the formula
    }
  }
  if (used == 0) return fail(why, "no bank model interprets the formula");
  return true;
}

// E^i x -> E^i E^i x
bool match_s4(const Formula& f) {
  if (!is_imp(f) || f.lhs().kind() != NodeKind::erosion) return false;
  const std::string& b = f.lhs().name();
  for (unsigned i = 1; i <= chain(f.lhs(), NodeKind::erosion, b); ++i) {
    auto x = strip(f.lhs(), NodeKind::erosion, b, i);
    auto y = strip(f.rhs(), NodeKind::erosion, b, 2 * i);
    if (x && y && same(*x, *y)) return true;
  }
  return false;
}

// x -> E^i D^i x
bool match_b(const Formula& f) {
  if (!is_imp(f) || f.rhs().kind() != NodeKind::erosion) return false;
  const std::string& b = f.rhs().name();
  for (unsigned i = 1; i <= chain(f.rhs(), NodeKind::erosion, b); ++i) {
    auto x = strip(f.rhs(), NodeKind::erosion, b, i);
    if (!x) continue;
    auto y = strip(*x, NodeKind::dilation, b, i);
    if (y && same(*y, f.lhs())) return true;
  }
  return false;
}

// D^i x -> E^i D^i x
bool match_s5(const Formula& f) {
  if (!is_imp(f) || f.lhs().kind() != NodeKind::dilation) return false;
  const std::string& b = f.lhs().name();
  for (unsigned i = 1; i <= chain(f.lhs(), NodeKind::dilation, b); ++i) {
    auto x = strip(f.lhs(), NodeKind::dilation, b, i);
    auto e = strip(f.rhs(), NodeKind::erosion, b, i);
    if (!x || !e) continue;
    auto y = strip(*e, NodeKind::dilation, b, i);
    if (y && same(*y, *x)) return true;
  }
  return false;
}

struct Skeleton {
  std::map<Formula, std::size_t> letters;

  void collect(const Formula& f) {
    switch (f.kind()) {
      case NodeKind::top:
      case NodeKind::bottom: return;
      case NodeKind::negation: collect(f.lhs()); return;
      case NodeKind::conjunction:
      case NodeKind::disjunction:
      case NodeKind::implication:
        collect(f.lhs());
        collect(f.rhs());
        return;
      default: letters.emplace(unfold_iterations(f), letters.size());
    }
  }

  bool eval(const Formula& f, unsigned long bits) const {
    switch (f.kind()) {
      case NodeKind::top: return true;
      case NodeKind::bottom: return false;
      case NodeKind::negation: return !eval(f.lhs(), bits);
      case NodeKind::conjunction: return eval(f.lhs(), bits) && eval(f.rhs(), bits);
      case NodeKind::disjunction: return eval(f.lhs(), bits) || eval(f.rhs(), bits);
      case NodeKind::implication: return !eval(f.lhs(), bits) || eval(f.rhs(), bits);
      default: return (bits >> letters.at(unfold_iterations(f))) & 1UL;
    }
  }
};

}  // namespace

bool is_tautology_instance(const Formula& f) {
  Skeleton sk;
  sk.collect(f);
  if (sk.letters.size() > 16)
    throw ProofError("tautology check needs at most 16 propositional letters, found " +
                     std::to_string(sk.letters.size()));
  const unsigned long rows = 1UL << sk.letters.size();
  for (unsigned long bits = 0; bits < rows; ++bits)
    if (!sk.eval(f, bits)) return false;
  return true;
}

bool is_closed_formula(const Formula& f) {
  std::vector<std::string> bound;
  return closed_under(f, bound);
}

bool matches_axiom(const Formula& f, AxiomKind k, ProofSystem s, const Witness& w, std::span<const Model> bank,
                   std::string* why) {
  if (!admissible(k, s))
    return fail(why, std::string(to_string(k)) + " axiom is not admissible in system " + std::string(to_string(s)));
  const bool inst_or_invar = k == AxiomKind::inst || k == AxiomKind::invar;
  if (!inst_or_invar && w.kind != Witness::Kind::none)
    return fail(why, std::string(to_string(k)) + " axiom takes no witness");
  auto shape = [&](bool ok) { return ok || fail(why, "not an instance of the " + std::string(to_string(k)) + " schema"); };
  switch (k) {
    case AxiomKind::taut: return is_tautology_instance(f) || fail(why, "not a tautology instance");
    case AxiomKind::dual: return shape(match_dual(f));
    case AxiomKind::distr: return shape(match_distr(f));
    case AxiomKind::inst: return match_inst(f, w, why);
    case AxiomKind::invar: return match_invar(f, w, bank, why);
    case AxiomKind::s4: return shape(match_s4(f));
    case AxiomKind::b: return shape(match_b(f));
    case AxiomKind::s5: return shape(match_s5(f));
  }
  return false;
}

std::optional<AxiomKind> match_axiom(const Formula& f, ProofSystem s, const Witness& w, std::span<const Model> bank) {
  for (AxiomKind k : {AxiomKind::taut, AxiomKind::dual, AxiomKind::distr, AxiomKind::inst, AxiomKind::invar,
                      AxiomKind::s4, AxiomKind::b, AxiomKind::s5}) {
    const bool takes_witness = k == AxiomKind::inst || k == AxiomKind::invar;
    if (!takes_witness && w.kind != Witness::Kind::none) continue;
    if (k == AxiomKind::inst && (w.kind == Witness::Kind::closed || w.kind == Witness::Kind::bank)) continue;
    if (k == AxiomKind::invar && (w.kind == Witness::Kind::self || w.kind == Witness::Kind::subst)) continue;
    if (matches_axiom(f, k, s, w, bank)) return k;
  }
  return std::nullopt;
}

namespace {

void reject(CheckReport& r, std::size_t line, std::string reason) {
  r.accepted = false;
  r.failing_line = line;
  r.reason = std::move(reason);
}

void audit(const Derivation& d, std::span<const Model> bank, CheckReport& report) {
  std::set<std::string> selems;
  for (const auto& line : d.lines)
    for (const auto& s : selem_names(line.formula)) selems.insert(s);

  report.audited = true;
  for (std::size_t mi = 0; mi < bank.size(); ++mi) {
    const Model& m = bank[mi];
    const bool frame_ok = std::all_of(selems.begin(), selems.end(), [&](const std::string& s) {
      return m.has_selem(s) && meets_frame_condition(m.selem(s), d.system);
    });
    if (!frame_ok) {
      ++report.models_skipped;
      continue;
    }
    std::vector<StateSet> sats;
    try {
      for (const auto& line : d.lines) sats.push_back(sat(m, line.formula));
    } catch (const EvalError&) {
      ++report.models_skipped;
      continue;
    }
    bool hyps_hold = true;
    for (std::size_t i = 0; i < d.lines.size(); ++i)
      if (d.lines[i].why.kind == Justification::Kind::hyp && !sats[i].is_full()) hyps_hold = false;
    if (!hyps_hold) {
      ++report.models_skipped;
      continue;
    }
    ++report.models_audited;
    for (std::size_t i = 0; i < d.lines.size(); ++i) {
      if (sats[i].is_full()) continue;
      const StateSet missing = sats[i].complement();
      report.audit_failures.push_back({i + 1, mi, m.state_name(missing.members().front())});
    }
  }
}

}  // namespace

CheckReport check_derivation(const Derivation& d, std::span<const Model> bank,
                             std::optional<std::span<const Formula>> gamma) {
  CheckReport report;
  for (std::size_t k = 1; k <= d.lines.size() && report.accepted; ++k) {
    const ProofLine& line = d.lines[k - 1];
    const Justification& j = line.why;
    auto ref = [&](std::size_t i) -> const Formula& {
      if (i == 0 || i >= k)
        throw ProofError("line " + std::to_string(k) + " refers to line " + std::to_string(i) +
                         ", which is not an earlier line");
      return d.lines[i - 1].formula;
    };
    switch (j.kind) {
      case Justification::Kind::axiom: {
        std::string why;
        if (!matches_axiom(line.formula, j.axiom, d.system, j.witness, bank, &why))
          reject(report, k, why);
        else if (j.axiom == AxiomKind::invar && j.witness.kind == Witness::Kind::bank)
          report.bank_relative.push_back(k);
        break;
      }
      case Justification::Kind::mp: {
        const Formula& premise = ref(j.first);
        const Formula& implication = ref(j.second);
        if (!is_imp(implication))
          reject(report, k, "line " + std::to_string(j.second) + " is not an implication");
        else if (!same(implication.lhs(), premise))
          reject(report, k,
                 "line " + std::to_string(j.second) + " does not have line " + std::to_string(j.first) +
                     " as antecedent");
        else if (!same(implication.rhs(), line.formula))
          reject(report, k, "formula is not the consequent of line " + std::to_string(j.second));
        break;
      }
      case Justification::Kind::nec: {
        const Formula& premise = ref(j.first);
        const Formula& f = line.formula;
        bool ok = false;
        if (f.kind() == NodeKind::erosion)
          for (unsigned i = 1; i <= chain(f, NodeKind::erosion, f.name()) && !ok; ++i)
            if (auto x = strip(f, NodeKind::erosion, f.name(), i); x && same(*x, premise)) ok = true;
        if (!ok) reject(report, k, "formula is not an erosion of line " + std::to_string(j.first));
        break;
      }
      case Justification::Kind::hyp: {
        if (gamma && std::none_of(gamma->begin(), gamma->end(), [&](const Formula& g) { return same(g, line.formula); }))
          reject(report, k, "hypothesis is not in the premise set");
        else
          report.hypotheses.push_back(k);
        break;
      }
    }
  }
  if (report.accepted && !bank.empty()) audit(d, bank, report);
  return report;
}

Derivation deduction_transform(const Derivation& d, const Formula& phi, const Witness& invariance,
                               std::span<const Model> bank) {
  if (d.lines.empty()) throw ProofError("empty derivation");
  if (invariance.kind != Witness::Kind::closed && invariance.kind != Witness::Kind::bank)
    throw ProofError("invariance evidence must be closed or bank");
  const CheckReport input = check_derivation(d, bank);
  if (!input.accepted)
    throw ProofError("input derivation rejected at line " + std::to_string(*input.failing_line) + ": " + input.reason);

  auto imp = [](const Formula& a, const Formula& b) { return Formula::implication(a, b); };
  auto taut = [] { return Justification::of_axiom(AxiomKind::taut); };

  Derivation out;
  out.system = d.system;
  std::vector<std::size_t> moved(d.lines.size() + 1, 0);  // old line -> line proving phi -> chi

  for (std::size_t k = 1; k <= d.lines.size(); ++k) {
    const ProofLine& line = d.lines[k - 1];
    const Formula& chi = line.formula;
    const Formula target = imp(phi, chi);
    switch (line.why.kind) {
      case Justification::Kind::hyp:
        if (same(chi, phi)) {
          moved[k] = out.add(target, taut());
          break;
        }
        [[fallthrough]];
      case Justification::Kind::axiom: {
        const std::size_t a = out.add(chi, line.why);
        const std::size_t w = out.add(imp(chi, target), taut());
        moved[k] = out.add(target, Justification::mp(a, w));
        break;
      }
      case Justification::Kind::mp: {
        const Formula& a = d.lines[line.why.first - 1].formula;
        const Formula k_schema = imp(imp(phi, imp(a, chi)), imp(imp(phi, a), target));
        const std::size_t t = out.add(k_schema, taut());
        const std::size_t u = out.add(imp(imp(phi, a), target), Justification::mp(moved[line.why.second], t));
        moved[k] = out.add(target, Justification::mp(moved[line.why.first], u));
        break;
      }
      case Justification::Kind::nec: {
        // chi = E^n(psi) with psi the premise; mirror its modality on phi.
        const Formula& psi = d.lines[line.why.first - 1].formula;
        std::optional<Formula> e_phi;
        for (unsigned i = 1; i <= chain(chi, NodeKind::erosion, chi.name()) && !e_phi; ++i)
          if (auto x = strip(chi, NodeKind::erosion, chi.name(), i); x && same(*x, psi))
            e_phi = Formula::erosion(chi.name(), i, phi);
        const Formula e_imp = Formula::erosion(chi.name(), e_phi->iterations(), imp(phi, psi));
        const std::size_t a = out.add(e_imp, Justification::nec(moved[line.why.first]));
        const std::size_t b = out.add(imp(e_imp, imp(*e_phi, chi)), Justification::of_axiom(AxiomKind::distr));
        const std::size_t c = out.add(imp(*e_phi, chi), Justification::mp(a, b));
        const std::size_t i = out.add(imp(phi, *e_phi), Justification::of_axiom(AxiomKind::invar, invariance));
        const Formula trans = imp(imp(phi, *e_phi), imp(imp(*e_phi, chi), target));
        const std::size_t t = out.add(trans, taut());
        const std::size_t u = out.add(imp(imp(*e_phi, chi), target), Justification::mp(i, t));
        moved[k] = out.add(target, Justification::mp(c, u));
        break;
      }
    }
  }

  const CheckReport result = check_derivation(out, bank);
  if (!result.accepted) {
    const ProofLine& bad = out.lines[*result.failing_line - 1];
    if (bad.why.kind == Justification::Kind::axiom && bad.why.axiom == AxiomKind::invar)
      throw ProofError("'" + print_formula(phi) + "' is not invariant: " + result.reason);
    throw ProofError("transformed derivation rejected at line " + std::to_string(*result.failing_line) + ": " +
                     result.reason);
  }
  return out;
}

namespace {

struct Token {
  std::string text;
  std::size_t column;
  bool quoted;
};

std::vector<Token> tokenize(const std::string& line, std::size_t lineno) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
    } else if (line[i] == '%') {
      break;
    } else if (line[i] == '"') {
      const std::size_t close = line.find('"', i + 1);
      if (close == std::string::npos) throw ParseError(lineno, i + 1, "unterminated formula string");
      out.push_back({line.substr(i + 1, close - i - 1), i + 2, true});
      i = close + 1;
    } else {
      std::size_t j = i;
      while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])) && line[j] != '"') ++j;
      out.push_back({line.substr(i, j - i), i + 1, false});
      i = j;
    }
  }
  return out;
}

std::size_t parse_index(const Token& t, std::size_t lineno) {
  if (t.quoted || t.text.empty() || !std::all_of(t.text.begin(), t.text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw ParseError(lineno, t.column, "expected a line number, found '" + t.text + "'");
  return std::stoul(t.text);
}

Formula parse_quoted(const Token& t, std::size_t lineno) {
  if (!t.quoted) throw ParseError(lineno, t.column, "expected a quoted formula, found '" + t.text + "'");
  try {
    return parse_formula(t.text);
  } catch (const ParseError& e) {
    throw ParseError(lineno, t.column + e.column() - 1, e.detail());
  }
}

}  // namespace

Derivation parse_derivation(std::string_view text) {
  Derivation d;
  bool have_system = false;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto toks = tokenize(raw, lineno);
    if (toks.empty()) continue;
    auto need = [&](std::size_t n) {
      if (toks.size() < n)
        throw ParseError(lineno, raw.size() + 1, "incomplete line");
    };
    if (!have_system) {
      if (toks[0].text != "system" || toks[0].quoted)
        throw ParseError(lineno, toks[0].column, "expected 'system T|S4|B|S5'");
      need(2);
      if (toks.size() > 2) throw ParseError(lineno, toks[2].column, "unexpected token");
      try {
        d.system = parse_proof_system(toks[1].text);
      } catch (const DomainError& e) {
        throw ParseError(lineno, toks[1].column, e.what());
      }
      have_system = true;
      continue;
    }
    const std::size_t n = parse_index(toks[0], lineno);
    if (n != d.lines.size() + 1)
      throw ParseError(lineno, toks[0].column, "expected line number " + std::to_string(d.lines.size() + 1));
    need(2);
    const std::string& what = toks[1].text;
    std::size_t used = 0;
    ProofLine line;
    if (what == "hyp") {
      need(3);
      line = {parse_quoted(toks[2], lineno), Justification::hypothesis()};
      used = 3;
    } else if (what == "axiom") {
      need(4);
      auto kind = parse_axiom_kind(toks[2].text);
      if (!kind || toks[2].quoted) throw ParseError(lineno, toks[2].column, "unknown axiom '" + toks[2].text + "'");
      Witness w;
      used = 4;
      if (toks.size() > 4) {
        if (toks[4].text != "witness" || toks[4].quoted)
          throw ParseError(lineno, toks[4].column, "expected 'witness'");
        need(6);
        const std::string& mode = toks[5].text;
        used = 6;
        if (mode == "self") {
          w = Witness::self();
        } else if (mode == "closed") {
          w = Witness::closed();
        } else if (mode == "bank") {
          w = Witness::bank();
        } else if (mode == "subst") {
          need(8);
          w = Witness::subst(toks[6].text, toks[7].text);
          used = 8;
        } else {
          throw ParseError(lineno, toks[5].column, "unknown witness '" + mode + "'");
        }
      }
      line = {parse_quoted(toks[3], lineno), Justification::of_axiom(*kind, w)};
    } else if (what == "rule") {
      need(3);
      if (toks[2].text == "mp") {
        need(6);
        const std::size_t a = parse_index(toks[3], lineno);
        const std::size_t b = parse_index(toks[4], lineno);
        line = {parse_quoted(toks[5], lineno), Justification::mp(a, b)};
        used = 6;
      } else if (toks[2].text == "nec") {
        need(5);
        const std::size_t a = parse_index(toks[3], lineno);
        line = {parse_quoted(toks[4], lineno), Justification::nec(a)};
        used = 5;
      } else {
        throw ParseError(lineno, toks[2].column, "unknown rule '" + toks[2].text + "'");
      }
      const std::size_t ref = std::max(line.why.first, line.why.second);
      if (line.why.first == 0 || ref >= n)
        throw ParseError(lineno, toks[3].column, "rule must refer to earlier lines");
    } else {
      throw ParseError(lineno, toks[1].column, "expected axiom, rule or hyp");
    }
    if (toks.size() > used) throw ParseError(lineno, toks[used].column, "unexpected token");
    d.lines.push_back(std::move(line));
  }
  if (!have_system) throw ParseError(lineno + 1, 1, "missing 'system' line");
  return d;
}

Derivation load_derivation(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ProofError("cannot open derivation file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_derivation(buf.str());
}

std::string print_derivation(const Derivation& d) {
  std::ostringstream out;
  out << "system " << to_string(d.system) << '\n';
  for (std::size_t k = 1; k <= d.lines.size(); ++k) {
    const ProofLine& line = d.lines[k - 1];
    const Justification& j = line.why;
    const std::string f = '"' + print_formula(line.formula) + '"';
    out << k << ' ';
    switch (j.kind) {
      case Justification::Kind::hyp: out << "hyp " << f; break;
      case Justification::Kind::mp: out << "rule mp " << j.first << ' ' << j.second << ' ' << f; break;
      case Justification::Kind::nec: out << "rule nec " << j.first << ' ' << f; break;
      case Justification::Kind::axiom:
        out << "axiom " << to_string(j.axiom) << ' ' << f;
        switch (j.witness.kind) {
          case Witness::Kind::none: break;
          case Witness::Kind::self: out << " witness self"; break;
          case Witness::Kind::closed: out << " witness closed"; break;
          case Witness::Kind::bank: out << " witness bank"; break;
          case Witness::Kind::subst: out << " witness subst " << j.witness.variable << ' ' << j.witness.term; break;
        }
        break;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace morpho
