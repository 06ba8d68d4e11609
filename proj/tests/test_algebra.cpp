#include <gtest/gtest.h>

#include <random>

#include "hypertoric/exact_linalg.hpp"
#include "hypertoric/exact_lp.hpp"
#include "oracles.hpp"
#include "random_specs.hpp"

using namespace hypertoric;

TEST(Rational, ParsesFractionsAndUnicodeMinus) {
  EXPECT_EQ(parse_rational("1/2"), Rational(1, 2));
  EXPECT_EQ(parse_rational("−3"), Rational(-3));
  EXPECT_EQ(parse_rational(" -4/6 "), Rational(-2, 3));
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_EQ(parse_rational("0.25"), Rational(1, 4));
  EXPECT_EQ(parse_rational("010/003"), Rational(10, 3));
  EXPECT_EQ(parse_rational("-0.5"), Rational(-1, 2));
  EXPECT_THROW(parse_rational("1.2.3"), ParseError);
  EXPECT_THROW(parse_rational("1/-2"), ParseError);
  EXPECT_THROW(parse_rational(""), ParseError);
  EXPECT_EQ(to_string(Rational(-2, 3)), "-2/3");
  EXPECT_EQ(to_string(Rational(5)), "5");
}

TEST(Smith, TwoByTwo) {
  const IntMatrix M{{2, 4}, {6, 8}};
  const auto snf = smith_normal_form(M);
  EXPECT_EQ(snf.invariant_factors(), (IntVector{2, 4}));
  EXPECT_EQ(snf.U * M * snf.V, snf.S);
  EXPECT_EQ(oracle::invariant_factors(M), (IntVector{2, 4}));
}

TEST(Smith, ZeroAndRectangular) {
  EXPECT_TRUE(smith_normal_form(IntMatrix(2, 3)).invariant_factors().empty());
  const IntMatrix M{{1, 2, 0}, {0, 2, 4}};
  EXPECT_EQ(smith_normal_form(M).invariant_factors(), oracle::invariant_factors(M));
}

TEST(Smith, MatchesDeterminantalDivisors) {
  std::mt19937_64 rng(testing_support::seed());
  std::uniform_int_distribution<int> entry(-6, 6), dim(1, 4);
  for (int trial = 0; trial < 150; ++trial) {
    IntMatrix M(dim(rng), dim(rng));
    for (std::size_t r = 0; r < M.rows(); ++r)
      for (std::size_t c = 0; c < M.cols(); ++c) M(r, c) = entry(rng);
    const auto snf = smith_normal_form(M);
    EXPECT_EQ(snf.U * M * snf.V, snf.S);
    EXPECT_EQ(abs(determinant(snf.U)), 1);
    EXPECT_EQ(abs(determinant(snf.V)), 1);
    EXPECT_EQ(snf.invariant_factors(), oracle::invariant_factors(M));
  }
}

TEST(Hermite, RowEchelonWithReducedColumns) {
  const IntMatrix H = hermite_normal_form(IntMatrix{{2, 3, 1}, {4, 1, 5}});
  ASSERT_EQ(H.rows(), 2u);
  EXPECT_GT(H(0, 0), 0);
  EXPECT_EQ(H(1, 0), 0);
  EXPECT_EQ(rank(H), 2u);
}

TEST(Kernel, GaleDualOfExample2) {
  const IntMatrix B{{1, 1, 0, 1, 0}, {1, 0, 1, 0, 1}};
  const IntMatrix A = gale_dual(B);
  EXPECT_EQ(A.rows(), 3u);
  EXPECT_TRUE((A * B.transpose()).is_zero());
  EXPECT_EQ(oracle::invariant_factors(A), (IntVector{1, 1, 1}));
}

TEST(Kernel, GaleDualRequiresSaturation) {
  EXPECT_THROW(gale_dual(IntMatrix{{2, 4}}), PreconditionError);
  EXPECT_FALSE(is_saturated(IntMatrix{{2, 4}}));
  EXPECT_TRUE(is_saturated(IntMatrix{{1, 2}}));
  EXPECT_EQ(saturate_rows(IntMatrix{{2, 4}}), (IntMatrix{{1, 2}}));
}

TEST(Kernel, RandomKernelsAreSaturated) {
  std::mt19937_64 rng(testing_support::seed() + 1);
  std::uniform_int_distribution<int> entry(-3, 3);
  for (int trial = 0; trial < 100; ++trial) {
    IntMatrix M(2, 5);
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t c = 0; c < 5; ++c) M(r, c) = entry(rng);
    const IntMatrix K = integer_kernel_matrix(M);
    EXPECT_EQ(K.rows() + rank(M), 5u);
    EXPECT_TRUE((K * M.transpose()).is_zero());
    if (K.rows() > 0) {
      const auto f = oracle::invariant_factors(K);
      EXPECT_TRUE(std::all_of(f.begin(), f.end(), [](const Integer& x) { return x == 1; }));
    }
  }
}

TEST(Determinant, MatchesOracle) {
  const IntMatrix M{{2, -1, 0}, {1, 3, 2}, {0, 5, -4}};
  EXPECT_EQ(determinant(M), oracle::integer_det(M, {0, 1, 2}, {0, 1, 2}));
  EXPECT_EQ(determinant(M), -48);
}

TEST(Solve, LeastNormSolution) {
  const IntMatrix B{{1, 1, 1}};
  const auto h = solve_rational(B, RatVector{Rational(1)});
  ASSERT_TRUE(h);
  EXPECT_EQ(*h, (RatVector{Rational(1, 3), Rational(1, 3), Rational(1, 3)}));
  EXPECT_FALSE(solve_rational(IntMatrix{{1, 1}, {2, 2}}, RatVector{Rational(1), Rational(3)}));
}

TEST(Simplex, OptimalBoundedProblem) {
  LinearProgram lp(2);
  lp.nonnegative = {true, true};
  lp.add({Rational(1), Rational(1)}, Relation::LessEqual, 4);
  lp.add({Rational(1), Rational(3)}, Relation::LessEqual, 6);
  lp.objective = {Rational(3), Rational(2)};
  const auto s = solve_lp(lp);
  ASSERT_EQ(s.status, LpStatus::Optimal);
  EXPECT_EQ(s.value, 12);
}

TEST(Simplex, DetectsInfeasibleAndUnbounded) {
  LinearProgram a(1);
  a.add({Rational(1)}, Relation::GreaterEqual, 2);
  a.add({Rational(1)}, Relation::LessEqual, 1);
  EXPECT_EQ(solve_lp(a).status, LpStatus::Infeasible);

  LinearProgram b(2);
  b.add({Rational(1), Rational(-1)}, Relation::Equal, 0);
  b.objective = {Rational(1), Rational(0)};
  EXPECT_EQ(solve_lp(b).status, LpStatus::Unbounded);
}

TEST(Simplex, DegenerateVertexTerminates) {
  // Many constraints tight at the origin.
  LinearProgram lp(3);
  lp.nonnegative = {true, true, true};
  lp.add({Rational(1), Rational(-1), Rational(0)}, Relation::LessEqual, 0);
  lp.add({Rational(-1), Rational(1), Rational(0)}, Relation::LessEqual, 0);
  lp.add({Rational(1), Rational(1), Rational(-2)}, Relation::LessEqual, 0);
  lp.add({Rational(0), Rational(0), Rational(1)}, Relation::LessEqual, 1);
  lp.objective = {Rational(1), Rational(1), Rational(1)};
  const auto s = solve_lp(lp);
  ASSERT_EQ(s.status, LpStatus::Optimal);
  EXPECT_EQ(s.value, 3);
}
