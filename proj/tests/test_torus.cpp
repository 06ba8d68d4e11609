#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "hypertoric/torus_model.hpp"
#include "oracles.hpp"
#include "random_specs.hpp"

using namespace hypertoric;
using testing_support::idx;

TEST(ValidateSpec, AcceptsExamples) {
  const auto v = validate_spec(IntMatrix{{1, 1, 0, 1, 0}, {1, 0, 1, 0, 1}});
  ASSERT_TRUE(v.valid());
  EXPECT_TRUE(v.diagnostics.empty());
  EXPECT_EQ(v.spec->quotient_rank(), 3u);
  EXPECT_TRUE(validate_spec(IntMatrix{{1, 1, 1}}).valid());
}

TEST(ValidateSpec, RejectsRankDeficientAndUnsaturated) {
  const auto deficient = validate_spec(IntMatrix{{1, 1, 0}, {2, 2, 0}});
  EXPECT_FALSE(deficient.valid());
  ASSERT_EQ(deficient.diagnostics.size(), 1u);
  EXPECT_EQ(deficient.diagnostics[0].kind, SpecDiagnostic::Kind::InvalidTorus);

  const auto unsat = validate_spec(IntMatrix{{2, 2, 2}});
  EXPECT_FALSE(unsat.valid());
  EXPECT_EQ(unsat.diagnostics[0].kind, SpecDiagnostic::Kind::UnsaturatedLattice);
  ASSERT_TRUE(unsat.saturation);
  EXPECT_EQ(*unsat.saturation, (IntMatrix{{1, 1, 1}}));
  EXPECT_THROW(TorusSpec::from_basis(IntMatrix{{2, 2, 2}}), PreconditionError);
}

TEST(ValidateSpec, FlagsZeroWeightsAndEmptyHyperplanes) {
  const auto split = validate_spec(IntMatrix{{1, 1, 0}});
  ASSERT_TRUE(split.valid());
  ASSERT_EQ(split.diagnostics.size(), 1u);
  EXPECT_EQ(split.diagnostics[0].kind, SpecDiagnostic::Kind::SplitFactor);
  EXPECT_EQ(split.diagnostics[0].indices, idx({3}));
  EXPECT_EQ(split.spec->without_zero_weights().ambient_rank(), 2u);

  // a_3 is the only weight with a nonzero second entry, so X_3 dies in t^n.
  const auto empty = validate_spec(IntMatrix{{1, 1, 0}, {0, 0, 1}});
  ASSERT_TRUE(empty.valid());
  ASSERT_EQ(empty.diagnostics.size(), 1u);
  EXPECT_EQ(empty.diagnostics[0].kind, SpecDiagnostic::Kind::EmptyHyperplane);
  EXPECT_EQ(empty.diagnostics[0].indices, idx({3}));
}

TEST(ValidateSpec, TrivialTorus) {
  const auto v = validate_spec(IntMatrix(0, 3));
  ASSERT_TRUE(v.valid());
  EXPECT_EQ(v.spec->rank(), 0u);
  EXPECT_EQ(v.spec->quotient_rank(), 3u);
  EXPECT_TRUE(enumerate_walls(*v.spec).empty());
}

TEST(Walls, Example2Circuits) {
  const auto walls = enumerate_walls(testing_support::example2());
  ASSERT_EQ(walls.size(), 3u);
  // Compared as (circuit, normal up to sign).
  std::map<std::vector<std::size_t>, IntVector> got;
  for (const auto& w : walls) got[w.circuit] = w.normal;
  auto same_line = [](const IntVector& a, const IntVector& b) {
    IntVector neg = b;
    for (auto& x : neg) x = -x;
    return a == b || a == neg;
  };
  ASSERT_TRUE(got.count(idx({1, 3, 5})));
  ASSERT_TRUE(got.count(idx({1, 2, 4})));
  ASSERT_TRUE(got.count(idx({2, 3, 4, 5})));
  EXPECT_TRUE(same_line(got[idx({1, 3, 5})], IntVector{0, 1}));
  EXPECT_TRUE(same_line(got[idx({1, 2, 4})], IntVector{1, 0}));
  EXPECT_TRUE(same_line(got[idx({2, 3, 4, 5})], IntVector{1, -1}));
}

TEST(Walls, CircuitIsComplementOfSpan) {
  std::mt19937_64 rng(testing_support::seed() + 10);
  for (int trial = 0; trial < 40; ++trial) {
    const TorusSpec spec = testing_support::random_spec(rng, {7, 3, 3, true});
    for (const auto& w : enumerate_walls(spec)) {
      std::vector<RatVector> span;
      for (auto i : w.span_set) span.push_back(to_rational(spec.weight(i)));
      EXPECT_EQ(oracle::rank(span), spec.rank() - 1);
      for (auto i : w.circuit) EXPECT_NE(dot(spec.weight(i), w.normal), 0);
      EXPECT_EQ(w.span_set.size() + w.circuit.size(), spec.nonzero_weights().size());
    }
  }
}

TEST(Regularity, WallMembership) {
  const TorusSpec spec = testing_support::example2();
  const auto walls = enumerate_walls(spec);
  Parameter p = Parameter::zero(2);
  p.alpha = {Rational(3), Rational(1)};
  EXPECT_TRUE(is_regular_value(walls, p).regular);
  p.alpha = {Rational(2), Rational(2)};
  const auto bad = is_regular_value(walls, p);
  EXPECT_FALSE(bad.regular);
  ASSERT_EQ(bad.violating.size(), 1u);
  EXPECT_EQ(walls[bad.violating[0]].circuit, idx({2, 3, 4, 5}));
  p.alpha = {Rational(0), Rational(0)};
  EXPECT_EQ(is_regular_value(walls, p).violating.size(), 3u);
  // β off every wall makes even α = 0 regular.
  p.beta_re = {Rational(2), Rational(-7, 3)};
  EXPECT_TRUE(is_regular_value(walls, p).regular);
}

TEST(Smoothness, SmallCases) {
  EXPECT_TRUE(is_smooth(TorusSpec::from_basis(IntMatrix{{1, 1}})).smooth);
  const auto orb = is_smooth(TorusSpec::from_basis(IntMatrix{{1, 2}}));
  EXPECT_FALSE(orb.smooth);
  ASSERT_TRUE(orb.witness);
  EXPECT_EQ(*orb.witness, idx({2}));
  EXPECT_EQ(oracle::smoothness_witness(IntMatrix{{1, 2}}), idx({2}));
  EXPECT_TRUE(is_smooth(testing_support::example2()).smooth);
}

TEST(Smoothness, MinorTestMatchesModuleOracle) {
  std::mt19937_64 rng(testing_support::seed() + 11);
  for (int trial = 0; trial < 150; ++trial) {
    const TorusSpec spec = testing_support::random_spec(rng, {8, 4, 3, true});
    const bool oracle_smooth = !oracle::smoothness_witness(spec.basis());
    EXPECT_EQ(is_smooth(spec).smooth, oracle_smooth);
  }
}
