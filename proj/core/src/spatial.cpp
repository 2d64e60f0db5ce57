#include "morpho/spatial.hpp"

#include "morpho/error.hpp"
#include "morpho/semantics.hpp"

namespace morpho {

namespace {

void require_selem(const Model& m, std::string_view se) {
  if (!m.has_selem(se)) throw EvalError("model has no structuring element '" + std::string(se) + "'");
}

const StructuringElement& unit_selem(const Model& m, std::string_view name) {
  require_selem(m, name);
  const StructuringElement& se = m.selem(name);
  if (se.is_fuzzy()) throw DomainError("structuring element '" + std::string(name) + "' must be crisp");
  if (!se.is_reflexive() || !se.is_symmetric())
    throw DomainError("structuring element '" + std::string(name) + "' must be reflexive and symmetric");
  return se;
}

StateSet region(const Model& m, const Formula& f, const char* which) {
  StateSet s = sat(m, f);
  if (s.empty()) throw DomainError(std::string(which) + " region '" + print_formula(f) + "' is empty");
  return s;
}

Formula A(Formula f) { return Formula::somewhere(std::move(f)); }
Formula U(Formula f) { return Formula::everywhere(std::move(f)); }
Formula neg(Formula f) { return Formula::negation(std::move(f)); }
Formula conj(Formula a, Formula b) { return Formula::conjunction(std::move(a), std::move(b)); }
Formula imp(Formula a, Formula b) { return Formula::implication(std::move(a), std::move(b)); }

}  // namespace

Formula interior(const Model& m, const Formula& f, std::string_view se) {
  require_selem(m, se);
  return Formula::erosion(std::string(se), 1, f);
}

Formula closure(const Model& m, const Formula& f, std::string_view se) {
  require_selem(m, se);
  return Formula::dilation(std::string(se), 1, f);
}

Formula boundary(const Model& m, const Formula& f, std::string_view se) {
  return conj(f, neg(interior(m, f, se)));
}

std::string_view to_string(Rcc8Relation r) {
  switch (r) {
    case Rcc8Relation::DC: return "DC";
    case Rcc8Relation::EC: return "EC";
    case Rcc8Relation::PO: return "PO";
    case Rcc8Relation::TPP: return "TPP";
    case Rcc8Relation::TPPi: return "TPPi";
    case Rcc8Relation::NTPP: return "NTPP";
    case Rcc8Relation::NTPPi: return "NTPPi";
    case Rcc8Relation::EQ: return "EQ";
  }
  return "?";
}

std::optional<Rcc8Relation> parse_rcc8_relation(std::string_view text) {
  for (Rcc8Relation r : {Rcc8Relation::DC, Rcc8Relation::EC, Rcc8Relation::PO, Rcc8Relation::TPP, Rcc8Relation::TPPi,
                         Rcc8Relation::NTPP, Rcc8Relation::NTPPi, Rcc8Relation::EQ})
    if (to_string(r) == text) return r;
  return std::nullopt;
}

Rcc8Relation inverse(Rcc8Relation r) {
  switch (r) {
    case Rcc8Relation::TPP: return Rcc8Relation::TPPi;
    case Rcc8Relation::TPPi: return Rcc8Relation::TPP;
    case Rcc8Relation::NTPP: return Rcc8Relation::NTPPi;
    case Rcc8Relation::NTPPi: return Rcc8Relation::NTPP;
    default: return r;
  }
}

bool Rcc8Predicates::get(Rcc8Relation r) const {
  switch (r) {
    case Rcc8Relation::DC: return DC;
    case Rcc8Relation::EC: return EC;
    case Rcc8Relation::PO: return PO;
    case Rcc8Relation::TPP: return TPP;
    case Rcc8Relation::TPPi: return TPPi;
    case Rcc8Relation::NTPP: return NTPP;
    case Rcc8Relation::NTPPi: return NTPPi;
    case Rcc8Relation::EQ: return EQ;
  }
  return false;
}

Formula rcc8_connected_formula(const Formula& f, const Formula& g) { return A(conj(f, g)); }

Formula rcc8_raw_formula(Rcc8Relation r, const Formula& f, const Formula& g, std::string_view se) {
  const std::string name(se);
  auto D = [&](const Formula& x) { return Formula::dilation(name, 1, x); };
  auto E = [&](const Formula& x) { return Formula::erosion(name, 1, x); };
  switch (r) {
    case Rcc8Relation::DC:
      return U(Formula::disjunction(neg(f), neg(g)));
    case Rcc8Relation::EC:
      return conj(U(neg(conj(f, g))), conj(A(conj(D(f), g)), A(conj(f, D(g)))));
    case Rcc8Relation::PO:
      return conj(A(conj(f, g)), conj(A(conj(f, neg(g))), A(conj(neg(f), g))));
    case Rcc8Relation::TPP:
      return conj(U(imp(f, g)), A(conj(D(f), neg(g))));
    case Rcc8Relation::NTPP:
      return conj(U(imp(f, g)), U(imp(f, E(g))));
    case Rcc8Relation::EQ:
      return U(Formula::biconditional(f, g));
    case Rcc8Relation::TPPi:
      return rcc8_raw_formula(Rcc8Relation::TPP, g, f, se);
    case Rcc8Relation::NTPPi:
      return rcc8_raw_formula(Rcc8Relation::NTPP, g, f, se);
  }
  return Formula::bottom();
}

Rcc8Result rcc8_classify(const Model& m, const Formula& f, const Formula& g, std::string_view se) {
  unit_selem(m, se);
  region(m, f, "first");
  region(m, g, "second");
  // Sentences built from U/A are constant over states; evaluate at any state.
  auto truth = [&](const Formula& x) { return holds(m, 0, x); };
  auto raw = [&](Rcc8Relation r) { return truth(rcc8_raw_formula(r, f, g, se)); };

  Rcc8Result out;
  Rcc8Predicates& p = out.raw;
  p.C = truth(rcc8_connected_formula(f, g));
  p.DC = raw(Rcc8Relation::DC);
  p.EC = raw(Rcc8Relation::EC);
  p.PO = raw(Rcc8Relation::PO);
  p.TPP = raw(Rcc8Relation::TPP);
  p.TPPi = raw(Rcc8Relation::TPPi);
  p.NTPP = raw(Rcc8Relation::NTPP);
  p.NTPPi = raw(Rcc8Relation::NTPPi);
  p.EQ = raw(Rcc8Relation::EQ);

  Rcc8Predicates& s = out.strict;
  s.C = p.C;
  s.EQ = p.EQ;
  s.NTPP = p.NTPP && !p.EQ;
  s.NTPPi = p.NTPPi && !p.EQ;
  s.TPP = p.TPP && truth(A(conj(g, neg(f))));
  s.TPPi = p.TPPi && truth(A(conj(f, neg(g))));
  s.PO = p.PO;
  s.EC = p.EC;
  s.DC = p.DC && !p.EC;

  out.relation = Rcc8Relation::DC;
  for (Rcc8Relation r : {Rcc8Relation::EQ, Rcc8Relation::NTPP, Rcc8Relation::NTPPi, Rcc8Relation::TPP,
                         Rcc8Relation::TPPi, Rcc8Relation::PO, Rcc8Relation::EC, Rcc8Relation::DC}) {
    if (s.get(r)) {
      out.relation = r;
      break;
    }
  }
  return out;
}

std::string_view to_string(RegionPart p) {
  switch (p) {
    case RegionPart::boundary: return "boundary";
    case RegionPart::interior: return "interior";
    case RegionPart::exterior: return "exterior";
  }
  return "?";
}

NineIntersection nine_intersection(const Model& m, const Formula& f, const Formula& g, std::string_view se) {
  auto parts = [&](const Formula& x) {
    return std::array<StateSet, 3>{sat(m, boundary(m, x, se)), sat(m, interior(m, x, se)),
                                   sat(m, neg(closure(m, x, se)))};
  };
  const auto a = parts(f);
  const auto b = parts(g);
  NineIntersection out;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) out.cells[i][j] = a[i].intersects(b[j]);
  return out;
}

std::string Distance::str() const { return value_ ? std::to_string(*value_) : "inf"; }

Distance dist_point(const Model& m, StateId s, const Formula& f, std::string_view unit) {
  if (s >= m.state_count()) throw DomainError("state id out of range");
  const StructuringElement& se = m.transposed(unit_selem(m, unit).name());
  StateSet cur = region(m, f, "target");
  for (std::size_t n = 0; n <= m.state_count(); ++n) {
    if (cur.contains(s)) return Distance(n);
    cur = dilate_set(se, cur);
  }
  return Distance::infinite();
}

Distance d_min(const Model& m, const Formula& f, const Formula& g, std::string_view unit) {
  const StructuringElement& se = m.transposed(unit_selem(m, unit).name());
  StateSet cur = region(m, f, "first");
  const StateSet target = region(m, g, "second");
  for (std::size_t n = 0; n <= m.state_count(); ++n) {
    if (cur.intersects(target)) return Distance(n);
    cur = dilate_set(se, cur);
  }
  return Distance::infinite();
}

Distance d_hausdorff(const Model& m, const Formula& f, const Formula& g, std::string_view unit) {
  const StructuringElement& se = m.transposed(unit_selem(m, unit).name());
  const StateSet a = region(m, f, "first");
  const StateSet b = region(m, g, "second");
  StateSet da = a, db = b;
  for (std::size_t n = 0; n <= m.state_count(); ++n) {
    if (b.subset_of(da) && a.subset_of(db)) return Distance(n);
    da = dilate_set(se, da);
    db = dilate_set(se, db);
  }
  return Distance::infinite();
}

bool in_distance_interval(const Model& m, const Formula& g, const Formula& f, std::size_t n1, std::size_t n2,
                          std::string_view unit) {
  if (n1 > n2) throw DomainError("distance interval needs n1 <= n2");
  const StructuringElement& se = m.transposed(unit_selem(m, unit).name());
  auto iterate = [&](StateSet s, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) s = dilate_set(se, s);
    return s;
  };
  const StateSet base = region(m, f, "reference");
  const StateSet inner = iterate(base, n1);
  const StateSet outer = iterate(inner, n2 - n1);
  return sat(m, g).subset_of(outer - inner);
}

bool directional_check(const Model& m, const Formula& f2, const Formula& f, std::string_view dir) {
  require_selem(m, dir);
  const StructuringElement& se = m.selem(dir);
  if (se.is_fuzzy()) throw DomainError("structuring element '" + std::string(dir) + "' must be crisp");
  return sat(m, f2).subset_of(dilate_set(se, sat(m, f)));
}

}  // namespace morpho
