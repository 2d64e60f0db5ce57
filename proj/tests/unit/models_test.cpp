#include <gtest/gtest.h>

#include "generators.hpp"
#include "morpho/error.hpp"
#include "morpho/models.hpp"
#include "morpho/semantics.hpp"

using namespace morpho;

namespace {

StateSet cells(const Model& m, std::initializer_list<std::pair<int, int>> xy) {
  StateSet s(m.state_count());
  for (auto [x, y] : xy) s.insert(m.grid()->id(x, y));
  return s;
}

}  // namespace

TEST(LoadModel, GraphSelemIsSuccessors) {
  const Model m = parse_model(
      "kripke\n"
      "states s0 s1 s2\n"
      "edge s0 s1\nedge s0 s2\nedge s1 s2\n"
      "selem main edges\n"
      "label s1 p\n");
  EXPECT_EQ(m.kind(), ModelKind::graph);
  EXPECT_EQ(m.selem("main").support(0), StateSet(3, {1, 2}));
  EXPECT_EQ(*m.crisp_atom("p"), StateSet(3, {1}));
  EXPECT_FALSE(m.selem("main").is_reflexive());
}

TEST(LoadModel, ReflexiveKeyword) {
  const Model m = parse_model("kripke\nstates a b\nedge a b\nselem R edges reflexive\n");
  EXPECT_TRUE(m.selem("R").is_reflexive());
  EXPECT_EQ(m.selem("R").support(1), StateSet(2, {1}));
}

TEST(LoadModel, GridSelemIsClipped) {
  const Model m = parse_model("grid 5 5\nselem n4 offsets (0,0) (1,0) (-1,0) (0,1) (0,-1)\n");
  EXPECT_EQ(m.selem("n4").support(0), cells(m, {{0, 0}, {1, 0}, {0, 1}}));
  EXPECT_TRUE(m.selem("n4").is_symmetric());
  EXPECT_TRUE(m.selem("n4").is_reflexive());
  EXPECT_TRUE(erode_set(m.selem("n4"), m.all_states()).is_full());
}

TEST(LoadModel, GridRegions) {
  const Model m = parse_model(
      "grid 3 2\n"
      "% comment\n"
      "region p\n#..\n.##\n"
      "fuzzy region f\n0 0.5 1\n0.25 0 0\n");
  EXPECT_EQ(*m.crisp_atom("p"), cells(m, {{0, 0}, {1, 1}, {2, 1}}));
  EXPECT_DOUBLE_EQ((*m.fuzzy_atom("f"))[1], 0.5);
  EXPECT_DOUBLE_EQ((*m.fuzzy_atom("f"))[3], 0.25);
  EXPECT_TRUE(m.has_fuzzy_content());
  EXPECT_EQ(m.find_state("(2,1)"), m.grid()->id(2, 1));
  EXPECT_EQ(m.find_state("2,1"), m.grid()->id(2, 1));
}

TEST(LoadModel, FuzzySelem) {
  const Model m = parse_model("grid 3 1\nfuzzy selem s offsets (0,0)=1 (1,0)=0.5\n");
  const auto& se = m.selem("s");
  EXPECT_TRUE(se.is_fuzzy());
  EXPECT_DOUBLE_EQ(se.weight(0, 1), 0.5);
  EXPECT_DOUBLE_EQ(se.weight(1, 0), 0.0);
  EXPECT_DOUBLE_EQ(m.transposed("s").weight(1, 0), 0.5);
}

TEST(LoadModel, TopologyClosesGenerators) {
  const Model m = parse_model("topology\nstates a b c\nle a b\nle b c\nlabel a p\n");
  EXPECT_EQ(m.selem("main").support(0), StateSet(3, {0, 1, 2}));
  EXPECT_TRUE(m.selem("main").is_reflexive());
  EXPECT_TRUE(m.selem("main").is_transitive());
}

TEST(LoadModel, NonTransitiveTopologyIsRejected) {
  try {
    parse_model("topology\nstates a b c\nedge a a\nedge b b\nedge c c\nedge a b\nedge b c\n");
    FAIL() << "expected ModelError";
  } catch (const ModelError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("a"), std::string::npos);
    EXPECT_NE(msg.find("c"), std::string::npos);
  }
}

TEST(LoadModel, ParseErrorsCarryPositions) {
  const char* bad[] = {
      "grid 3\n",
      "grid 2 2\nregion p\n##\n",
      "grid 2 2\nregion p\n#x\n..\n",
      "kripke\nstates a\nedge a b\n",
      "kripke\nstates a\nfrob a\n",
      "fol\nvars x\ndomain 0 1\npred p(x): 2\n",
      "nonsense\n",
      "grid 2 2\nselem b offsets (0,0\n",
  };
  for (const char* text : bad) {
    try {
      parse_model(text);
      ADD_FAILURE() << "accepted: " << text;
    } catch (const ParseError& e) {
      EXPECT_GE(e.line(), 1u);
      EXPECT_GE(e.column(), 1u);
    }
  }
}

TEST(LoadModel, MissingFile) { EXPECT_THROW(load_model("/nonexistent/model.grid"), Error); }

TEST(ValuationSpace, SingleVariableIsTotal) {
  const Model m = build_valuation_space({"x"}, {"0", "1"}, {});
  EXPECT_EQ(m.state_count(), 2u);
  const auto& bx = m.selem("var:x");
  for (StateId s = 0; s < 2; ++s) EXPECT_TRUE(bx.support(s).is_full());
}

TEST(ValuationSpace, VariableSelemLinksAgreeingStates) {
  const Model m = build_valuation_space({"x", "y"}, {"0", "1", "2"}, {});
  EXPECT_EQ(m.state_count(), 9u);
  const auto& bx = m.selem("var:x");
  for (StateId s = 0; s < 9; ++s) {
    EXPECT_EQ(bx.support(s).count(), 3u);
    for (StateId t : bx.support(s).members()) EXPECT_EQ(m.assignment(s)[1], m.assignment(t)[1]);
  }
  EXPECT_TRUE(bx.is_reflexive());
  EXPECT_TRUE(bx.is_symmetric());
  EXPECT_TRUE(bx.is_transitive());
}

TEST(ValuationSpace, EmptyDomainIsAnError) { EXPECT_THROW(build_valuation_space({"x"}, {}, {}), Error); }

TEST(ValuationSpace, PredicateTable) {
  const Model m = parse_model("fol\nvars x y\ndomain 0 1\npred p(x,y): 0 0, 1 1\n");
  const StateId s01 = *m.find_state("x=0,y=1");
  const StateId s11 = *m.find_state("x=1,y=1");
  EXPECT_FALSE(m.predicate_holds("p", std::vector<std::string>{"x", "y"}, s01));
  EXPECT_TRUE(m.predicate_holds("p", std::vector<std::string>{"x", "y"}, s11));
  EXPECT_TRUE(m.predicate_holds("p", std::vector<std::string>{"y", "y"}, s01));
  EXPECT_TRUE(m.predicate_holds("p", std::vector<std::string>{"1", "y"}, s01));
}

TEST(Transpose, SymmetricIsFixed) {
  const Model m = make_grid_model(5, 5);
  const auto n4 = offset_selem("n4", *m.grid(), n4_offsets());
  EXPECT_EQ(n4.transpose(), n4);
}

TEST(Transpose, ChainIsReversed) {
  const auto chain = StructuringElement::crisp("R", {{1}, {2}, {}});
  const auto t = chain.transpose();
  EXPECT_EQ(t.support(0), StateSet(3));
  EXPECT_EQ(t.support(1), StateSet(3, {0}));
  EXPECT_EQ(t.support(2), StateSet(3, {1}));
}

TEST(Transpose, FuzzyWeights) {
  const auto se = StructuringElement::fuzzy("S", {{{1, 0.3}}, {{0, 0.7}, {1, 1.0}}});
  const auto t = se.transpose();
  for (StateId a = 0; a < 2; ++a)
    for (StateId b = 0; b < 2; ++b) EXPECT_DOUBLE_EQ(t.weight(a, b), se.weight(b, a));
}

TEST(Transpose, IsAnInvolution) {
  fixtures::Rng rng(5);
  for (int i = 0; i < 50; ++i) {
    const auto rel = fixtures::random_relation(rng, 7, 0.3);
    const auto se = fixtures::to_selem("R", rel);
    EXPECT_EQ(se.transpose().transpose(), se);
    EXPECT_EQ(se.transpose(), fixtures::to_selem("R", rel.transposed()));
  }
}

TEST(Selem, FlagsMatchDefinitions) {
  fixtures::Rng rng(8);
  for (int i = 0; i < 100; ++i) {
    auto rel = fixtures::random_relation(rng, 4, 0.5);
    if (i % 2) for (std::size_t k = 0; k < rel.n; ++k) rel.r[k][k] = true;
    const auto se = fixtures::to_selem("R", rel);
    EXPECT_EQ(se.is_reflexive(), rel.reflexive());
    EXPECT_EQ(se.is_symmetric(), rel.symmetric());
    EXPECT_EQ(se.is_transitive(), rel.transitive());
  }
}

TEST(Selem, UniversalIsCompactAndTotal) {
  const auto u = StructuringElement::universal("univ", 100000);
  EXPECT_TRUE(u.is_universal());
  EXPECT_EQ(u.neighbors(77).size(), 100000u);
  EXPECT_TRUE(u.is_reflexive());
  EXPECT_TRUE(u.is_symmetric());
}

TEST(ThresholdSelem, BallsByBreadthFirstLayers) {
  Model m = make_grid_model(7, 7);
  m.add_selem(offset_selem("n4", *m.grid(), n4_offsets()));
  const auto b0 = threshold_selem(m, "n4", 0, "b0");
  const auto b1 = threshold_selem(m, "n4", 1, "b1");
  const auto b2 = threshold_selem(m, "n4", 2, "b2");
  for (StateId s = 0; s < m.state_count(); ++s) EXPECT_EQ(b0.support(s), StateSet(m.state_count(), {s}));
  EXPECT_EQ(b1, m.selem("n4"));
  EXPECT_EQ(b2.support(m.grid()->id(3, 3)).count(), 13u);
}
