#include <gtest/gtest.h>

#include "generators.hpp"
#include "oracles.hpp"
#include "morpho/error.hpp"
#include "morpho/semantics.hpp"

using namespace morpho;
namespace mt = morpho::fixtures;

namespace {

Formula f(const char* text) { return parse_formula(text); }

Model grid_with_n4(int w, int h) {
  Model m = make_grid_model(w, h);
  m.add_selem(offset_selem("n4", *m.grid(), n4_offsets()));
  m.add_selem(offset_selem("main", *m.grid(), n4_offsets()));
  return m;
}

}  // namespace

TEST(SetMorphology, DilateSingletonBySymmetricCross) {
  const Model m = grid_with_n4(5, 5);
  const auto& g = *m.grid();
  const StateSet d = dilate_set(m.selem("n4"), StateSet(25, {g.id(2, 2)}));
  EXPECT_EQ(d, StateSet(25, {g.id(2, 2), g.id(1, 2), g.id(3, 2), g.id(2, 1), g.id(2, 3)}));
}

TEST(SetMorphology, ErodeOneDimensional) {
  const Model m = grid_with_n4(3, 1);
  EXPECT_EQ(erode_set(m.selem("n4"), StateSet(3, {0, 1})), StateSet(3, {0}));
}

TEST(SetMorphology, EmptyAndFull) {
  mt::Rng rng(3);
  for (int i = 0; i < 20; ++i) {
    const auto se = mt::to_selem("R", mt::random_relation(rng, 6, 0.4));
    EXPECT_TRUE(dilate_set(se, StateSet(6)).empty());
    EXPECT_TRUE(erode_set(se, StateSet::full(6)).is_full());
  }
}

TEST(SetMorphology, DilateIsImageAndErodeIsInclusion) {
  mt::Rng rng(4);
  for (int i = 0; i < 100; ++i) {
    const auto rel = mt::random_relation(rng, 8, 0.3);
    const auto se = mt::to_selem("R", rel);
    const auto x = mt::random_extent(rng, 8, 0.4);
    EXPECT_EQ(mt::to_extent(dilate_set(se, mt::to_state_set(x))), mt::oracle_image(rel, x));
    EXPECT_EQ(mt::to_extent(erode_set(se, mt::to_state_set(x))), mt::oracle_erode(rel, x));
  }
}

TEST(Sat, KripkeDiamondOnChain) {
  const Model m = make_kripke_model({"s0", "s1"}, {{0, 1}}, {{"p", StateSet(2, {1})}});
  EXPECT_EQ(sat(m, f("dia p")), StateSet(2, {0}));
  EXPECT_EQ(sat(m, f("box p")), StateSet(2, {0, 1}));
}

TEST(Sat, UniversalModality) {
  const Model all = make_kripke_model({"a", "b"}, {}, {{"p", StateSet(2, {0, 1})}});
  const Model some = make_kripke_model({"a", "b"}, {}, {{"p", StateSet(2, {1})}});
  EXPECT_TRUE(sat(all, f("U p")).is_full());
  EXPECT_TRUE(sat(some, f("U p")).empty());
  EXPECT_TRUE(sat(some, f("A p")).is_full());
}

TEST(Sat, QuantifiersOnValuationSpace) {
  Predicate eq{{"x", "y"}, {{0, 0}, {1, 1}}};
  const Model m = build_valuation_space({"x", "y"}, {"0", "1"}, {{"p", eq}});
  EXPECT_TRUE(sat(m, f("forall x. p")).empty());
  EXPECT_TRUE(sat(m, f("exists x. p")).is_full());
  EXPECT_TRUE(sat(m, f("forall y. exists x. p(x,y)")).is_full());
  EXPECT_TRUE(sat(m, f("exists x. forall y. p(x,y)")).empty());
}

TEST(Sat, Errors) {
  const Model m = make_kripke_model({"a"}, {}, {{"p", StateSet(1, {0})}});
  EXPECT_THROW(sat(m, f("q")), EvalError);
  EXPECT_THROW(sat(m, f("[nope] p")), EvalError);
  EXPECT_THROW(sat(m, f("forall x. p")), EvalError);
  EXPECT_THROW(sat(m, f("p(x)")), EvalError);
  const Model g = make_grid_model(2, 2);
  EXPECT_THROW(sat(g, f("box T")), EvalError);
}

TEST(Sat, FuzzyContentNeedsFuzzyLattice) {
  Model m = make_grid_model(2, 1);
  m.set_fuzzy_atom("p", {0.3, 0.9});
  EXPECT_THROW(sat(m, f("p")), EvalError);
  EXPECT_THROW(sat_fuzzy(m, f("p"), TruthLattice(LatticeKind::boolean)), EvalError);
  EXPECT_NO_THROW(sat_fuzzy(m, f("p"), TruthLattice(LatticeKind::goguen)));
}

TEST(Sat, AgreesWithOracleOnRandomFormulas) {
  mt::Rng rng(17);
  const std::vector<std::string> atoms{"p", "q", "r"};
  const std::vector<std::string> selems{"B", "B_t", "univ"};
  for (int i = 0; i < 200; ++i) {
    const mt::Scenario s = i % 2 ? mt::random_graph_scenario(rng, 1 + i % 8)
                                 : mt::random_grid_scenario(rng, 1 + i % 12, 1 + (i / 2) % 9);
    const Formula phi = mt::random_formula(rng, i % 7, atoms, selems, 3);
    EXPECT_EQ(mt::to_extent(sat(s.model, phi)), mt::oracle_sat(s, phi)) << print_formula(phi);
  }
}

TEST(SatFuzzy, IdentitySelemIsNeutral) {
  Model m = make_grid_model(4, 1);
  m.add_selem(StructuringElement::identity("id", 4));
  m.set_fuzzy_atom("p", {0.1, 0.5, 0.7, 1.0});
  for (auto kind : {LatticeKind::goguen, LatticeKind::lukasiewicz}) {
    const FuzzySet v = sat_fuzzy(m, f("<id> p"), TruthLattice(kind));
    const FuzzySet w = sat_fuzzy(m, f("[id] p"), TruthLattice(kind));
    for (std::size_t i = 0; i < 4; ++i) {
      EXPECT_NEAR(v[i], (*m.fuzzy_atom("p"))[i], kTruthTolerance);
      EXPECT_NEAR(w[i], (*m.fuzzy_atom("p"))[i], kTruthTolerance);
    }
  }
}

TEST(SatFuzzy, LukasiewiczDilationTerm) {
  // B_0 = {1 : 0.5}; p(1) = 0.8, p(0) = 0: dilation at 0 is 0.5 (x) 0.8 = 0.3.
  Model m(ModelKind::graph, {"a", "b"});
  m.add_selem(StructuringElement::fuzzy("S", {{{1, 0.5}}, {}}));
  m.set_fuzzy_atom("p", {0.0, 0.8});
  const FuzzySet v = sat_fuzzy(m, f("<S> p"), TruthLattice(LatticeKind::lukasiewicz));
  EXPECT_NEAR(v[0], 0.3, kTruthTolerance);
  EXPECT_NEAR(v[1], 0.0, kTruthTolerance);
}

TEST(SatFuzzy, GoguenErosionTerm) {
  Model m(ModelKind::graph, {"a", "b"});
  m.add_selem(StructuringElement::fuzzy("S", {{{1, 0.5}}, {}}));
  m.set_fuzzy_atom("p", {0.0, 0.4});
  const FuzzySet v = sat_fuzzy(m, f("[S] p"), TruthLattice(LatticeKind::goguen));
  EXPECT_NEAR(v[0], 0.8, kTruthTolerance);
  EXPECT_NEAR(v[1], 1.0, kTruthTolerance);
}

TEST(SatFuzzy, UniversalIsInfAndSup) {
  Model m = make_grid_model(3, 1);
  m.set_fuzzy_atom("p", {0.2, 0.9, 0.5});
  const TruthLattice l(LatticeKind::goguen);
  for (double v : sat_fuzzy(m, f("U p"), l)) EXPECT_NEAR(v, 0.2, kTruthTolerance);
  for (double v : sat_fuzzy(m, f("A p"), l)) EXPECT_NEAR(v, 0.9, kTruthTolerance);
}

TEST(SatFuzzy, CrispModelsAgreeWithCrispSemantics) {
  mt::Rng rng(23);
  const std::vector<std::string> atoms{"p", "q", "r"};
  const std::vector<std::string> selems{"B", "B_t", "univ"};
  for (int i = 0; i < 100; ++i) {
    const mt::Scenario s = mt::random_graph_scenario(rng, 1 + i % 8);
    const Formula phi = mt::random_formula(rng, i % 7, atoms, selems);
    const StateSet crisp = sat(s.model, phi);
    for (auto kind : {LatticeKind::goguen, LatticeKind::lukasiewicz}) {
      const FuzzySet v = sat_fuzzy(s.model, phi, TruthLattice(kind));
      for (StateId k = 0; k < v.size(); ++k) EXPECT_EQ(v[k], crisp.contains(k) ? 1.0 : 0.0);
    }
  }
}

TEST(Validity, Basics) {
  const Model m = make_kripke_model({"a", "b"}, {{0, 1}}, {{"p", StateSet(2, {1})}});
  EXPECT_TRUE(valid(m, f("T")));
  EXPECT_FALSE(valid(m, f("F")));
  EXPECT_TRUE(holds(m, 1, f("p")));
  EXPECT_FALSE(holds(m, 0, f("p")));
}

TEST(Validity, TAxiomOnReflexiveModels) {
  mt::Rng rng(31);
  for (int i = 0; i < 50; ++i) {
    auto rel = mt::random_relation(rng, 5, 0.4);
    for (std::size_t k = 0; k < 5; ++k) rel.r[k][k] = true;
    Model m(ModelKind::graph, {"a", "b", "c", "d", "e"});
    m.add_selem(mt::to_selem("main", rel));
    m.set_atom("p", mt::to_state_set(mt::random_extent(rng, 5, 0.5)));
    EXPECT_TRUE(valid(m, f("box p -> p")));
    EXPECT_TRUE(valid(m, f("p -> dia p")));
  }
}

TEST(Order, Examples) {
  mt::Rng rng(37);
  for (int i = 0; i < 50; ++i) {
    const mt::Scenario s = mt::random_grid_scenario(rng, 6, 5);
    Model m = s.model;
    m.add_selem(offset_selem("main", *m.grid(), n4_offsets()));
    EXPECT_TRUE(preceq(m, f("F"), f("p")));
    EXPECT_TRUE(preceq(m, f("p"), f("dia p")));
    EXPECT_TRUE(equiv(m, f("[B](p & q)"), f("[B]p & [B]q")));
    EXPECT_TRUE(equiv(m, f("<B>(p | q)"), f("<B>p | <B>q")));
  }
}

TEST(Order, FuzzyPointwise) {
  Model m = make_grid_model(3, 1);
  m.set_fuzzy_atom("p", {0.2, 0.9, 0.5});
  m.set_fuzzy_atom("q", {0.3, 0.9, 0.5});
  const TruthLattice l(LatticeKind::lukasiewicz);
  EXPECT_TRUE(preceq(m, f("p"), f("q"), l));
  EXPECT_FALSE(preceq(m, f("q"), f("p"), l));
  EXPECT_TRUE(equiv(m, f("~~p"), f("p"), l));
}

TEST(Entails, Examples) {
  std::vector<Model> bank;
  bank.push_back(make_kripke_model({"a", "b"}, {{0, 1}}, {{"p", StateSet(2, {0, 1})}, {"q", StateSet(2, {0})}}, true));
  bank.push_back(make_kripke_model({"a"}, {}, {{"p", StateSet(1, {0})}, {"q", StateSet(1)}}, true));
  const std::vector<Formula> p{f("p")};
  EXPECT_TRUE(entails(bank, p, f("p")));
  EXPECT_TRUE(entails(bank, {}, f("box p -> p")));
  EXPECT_FALSE(entails(bank, p, f("q")));
  EXPECT_THROW(entails({}, p, f("p")), DomainError);
}

TEST(Evaluate, PicksRepresentation) {
  Model m = make_grid_model(2, 1);
  m.set_atom("p", StateSet(2, {0}));
  EXPECT_TRUE(evaluate(m, f("p"), TruthLattice()).is_crisp());
  EXPECT_FALSE(evaluate(m, f("p"), TruthLattice(LatticeKind::goguen)).is_crisp());
}
