#include <gtest/gtest.h>

#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace {

std::string data(const std::string& name) { return std::string(MORPHO_TEST_DATA) + "/" + name; }

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = morpho::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, EvalTrueAndFalse) {
  const auto yes = run({"eval", "--model", data("chain.kripke"), "--formula", "dia p", "--at", "s0"});
  EXPECT_EQ(yes.code, 0);
  EXPECT_EQ(yes.out, "true\n");
  const auto no = run({"eval", "--model", data("chain.kripke"), "--formula", "dia p"});
  EXPECT_EQ(no.code, 1);
  EXPECT_NE(no.out.find("false"), std::string::npos);
  EXPECT_NE(no.out.find("counterexample: s1"), std::string::npos);
}

TEST(Cli, Sat) {
  const auto r = run({"sat", "--model", data("chain.kripke"), "--formula", "dia p"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "{s0}\n");
  const auto grid = run({"sat", "--model", data("squares.grid"), "--formula", "p"});
  EXPECT_EQ(grid.out, "......\n.##...\n.##...\n......\n");
}

TEST(Cli, Quantifiers) {
  EXPECT_EQ(run({"eval", "--model", data("eq.fol"), "--formula", "forall x. exists y. p(x,y)"}).code, 0);
  EXPECT_EQ(run({"eval", "--model", data("eq.fol"), "--formula", "exists x. forall y. p(x,y)"}).code, 1);
}

TEST(Cli, Fuzzy) {
  const auto r = run({"eval", "--model", data("fuzzy.grid"), "--formula", "<soft> p", "--fuzzy", "goguen", "--at", "(0,0)"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "0.400000000\n");
  const auto crisp = run({"eval", "--model", data("fuzzy.grid"), "--formula", "p"});
  EXPECT_EQ(crisp.code, 2);
}

TEST(Cli, Rcc8) {
  const auto r = run({"rcc8", "--model", data("squares.grid"), "--a", "p", "--b", "q", "--selem", "n4"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "EC\n");
  const auto raw = run({"rcc8", "--model", data("squares.grid"), "--a", "p", "--b", "q", "--selem", "n4", "--raw"});
  EXPECT_NE(raw.out.find("EC true"), std::string::npos);
  EXPECT_NE(raw.out.find("PO false"), std::string::npos);
  EXPECT_EQ(run({"rcc8", "--model", data("squares.grid"), "--a", "p", "--b", "q", "--selem", "n4", "--raw", "--strict"}).code, 2);
  EXPECT_EQ(run({"rcc8", "--model", data("squares.grid"), "--a", "p", "--b", "F", "--selem", "n4"}).code, 2);
  EXPECT_EQ(run({"rcc8", "--model", data("squares.grid"), "--a", "p", "--b", "q", "--selem", "east"}).code, 2);
}

TEST(Cli, Distances) {
  const auto min = run({"dist", "--model", data("squares.grid"), "--a", "p", "--b", "q", "--selem", "n4", "--kind", "min"});
  EXPECT_EQ(min.out, "1\n");
  const auto h = run({"dist", "--model", data("squares.grid"), "--a", "p", "--b", "q", "--selem", "n4", "--kind", "hausdorff"});
  EXPECT_EQ(h.out, "2\n");
  EXPECT_EQ(run({"dist", "--model", data("squares.grid"), "--a", "q", "--b", "p", "--selem", "east"}).code, 2);
}

TEST(Cli, Direction) {
  EXPECT_EQ(run({"dir", "--model", data("squares.grid"), "--a", "q", "--b", "p", "--selem", "east"}).code, 0);
  EXPECT_EQ(run({"dir", "--model", data("squares.grid"), "--a", "p", "--b", "q", "--selem", "east"}).code, 1);
}

TEST(Cli, Nine) {
  const auto r = run({"nine", "--model", data("squares.grid"), "--a", "p", "--b", "q"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_FALSE(r.out.empty());
}

TEST(Cli, Prove) {
  const auto ok = run({"prove", "--derivation", data("proofs/nec_mp.proof")});
  EXPECT_EQ(ok.code, 0);
  EXPECT_NE(ok.out.find("accepted: system T, 8 lines"), std::string::npos);
  const auto bad = run({"prove", "--derivation", data("proofs/s4_in_t.proof")});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.out.find("rejected at line 1"), std::string::npos);
  const auto audited = run({"prove", "--derivation", data("dual_t.proof"), "--bank", data("bank")});
  EXPECT_EQ(audited.code, 0) << audited.out << audited.err;
  EXPECT_NE(audited.out.find("audit: 2 models checked"), std::string::npos);
  const auto dangling = run({"prove", "--derivation", data("proofs/dangling.proof")});
  EXPECT_EQ(dangling.code, 2);
}

TEST(Cli, FmtAndErrors) {
  const auto r = run({"fmt", "--formula", "box(p->q)  &  ~ r"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "box (p -> q) & ~r\n");
  const auto err = run({"fmt", "--formula", "p & (q"});
  EXPECT_EQ(err.code, 2);
  EXPECT_NE(err.err.find("1:"), std::string::npos);
  EXPECT_EQ(run({"eval", "--model", data("missing.grid"), "--formula", "p"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"--version"}).code, 0);
}
