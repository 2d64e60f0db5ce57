#include <gtest/gtest.h>

#include <random>

#include "morpho/error.hpp"
#include "morpho/truth_lattice.hpp"

using namespace morpho;

namespace {

const TruthLattice kBool(LatticeKind::boolean);
const TruthLattice kGoguen(LatticeKind::goguen);
const TruthLattice kLuk(LatticeKind::lukasiewicz);

}  // namespace

TEST(TruthLattice, LukasiewiczProduct) { EXPECT_NEAR(kLuk.otimes(0.7, 0.5), 0.2, 1e-12); }

TEST(TruthLattice, GoguenResiduum) {
  EXPECT_NEAR(kGoguen.residuum(0.8, 0.4), 0.5, 1e-12);
  EXPECT_DOUBLE_EQ(kGoguen.residuum(0.4, 0.8), 1.0);
}

TEST(TruthLattice, BooleanImplication) {
  EXPECT_EQ(kBool.residuum(1, 0), 0.0);
  EXPECT_EQ(kBool.residuum(0, 0), 1.0);
  EXPECT_EQ(kBool.residuum(0, 1), 1.0);
  EXPECT_EQ(kBool.residuum(1, 1), 1.0);
}

TEST(TruthLattice, OneIsIdentity) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 200; ++i) {
    const double a = u(rng);
    EXPECT_NEAR(kGoguen.otimes(a, 1), a, 1e-12);
    EXPECT_NEAR(kLuk.otimes(a, 1), a, 1e-12);
    EXPECT_NEAR(kGoguen.otimes(1, a), a, 1e-12);
  }
  EXPECT_EQ(kBool.otimes(1, 0), 0.0);
  EXPECT_EQ(kBool.otimes(1, 1), 1.0);
}

TEST(TruthLattice, ComplementIsInvolutive) {
  for (const auto* l : {&kGoguen, &kLuk})
    for (double a = 0; a <= 1.0; a += 0.0625) EXPECT_NEAR(l->complement(l->complement(a)), a, kTruthTolerance);
  EXPECT_EQ(kBool.complement(0), 1.0);
}

TEST(TruthLattice, FuzzyKindsAgreeWithBooleanOnCrispValues) {
  for (double a : {0.0, 1.0})
    for (double b : {0.0, 1.0})
      for (const auto* l : {&kGoguen, &kLuk}) {
        EXPECT_EQ(l->otimes(a, b), kBool.otimes(a, b));
        EXPECT_EQ(l->residuum(a, b), kBool.residuum(a, b));
        EXPECT_EQ(l->meet(a, b), kBool.meet(a, b));
        EXPECT_EQ(l->join(a, b), kBool.join(a, b));
        EXPECT_EQ(l->complement(a), kBool.complement(a));
      }
}

TEST(TruthLattice, ProductIsCommutativeAssociativeIsotone) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0, 1);
  for (const auto* l : {&kGoguen, &kLuk}) {
    for (int i = 0; i < 1000; ++i) {
      const double a = u(rng), b = u(rng), c = u(rng);
      EXPECT_NEAR(l->otimes(a, b), l->otimes(b, a), 1e-12);
      EXPECT_NEAR(l->otimes(a, l->otimes(b, c)), l->otimes(l->otimes(a, b), c), 1e-12);
      const double lo = std::min(b, c), hi = std::max(b, c);
      EXPECT_TRUE(l->leq(l->otimes(a, lo), l->otimes(a, hi)));
      EXPECT_TRUE(l->leq(0, l->otimes(a, b)));
      EXPECT_TRUE(l->leq(l->otimes(a, b), 1));
    }
  }
}

TEST(TruthLattice, OutOfRangeValuesAreRejected) {
  EXPECT_THROW(kLuk.otimes(1.5, 0.2), DomainError);
  EXPECT_THROW(kGoguen.residuum(-0.1, 0.2), DomainError);
  EXPECT_THROW(kBool.meet(0.5, 1), DomainError);
  EXPECT_NO_THROW(kLuk.otimes(1 + 1e-12, 0.5));
  EXPECT_DOUBLE_EQ(kLuk.check(1 + 1e-12), 1.0);
}

TEST(TruthLattice, ParseKind) {
  EXPECT_EQ(parse_lattice_kind("goguen"), LatticeKind::goguen);
  EXPECT_EQ(parse_lattice_kind("lukasiewicz"), LatticeKind::lukasiewicz);
  EXPECT_EQ(parse_lattice_kind("boolean"), LatticeKind::boolean);
  EXPECT_THROW(parse_lattice_kind("godel"), DomainError);
  EXPECT_EQ(to_string(LatticeKind::goguen), "goguen");
}
