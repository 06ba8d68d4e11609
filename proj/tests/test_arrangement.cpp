#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "hypertoric/arrangement.hpp"
#include "hypertoric/topology.hpp"
#include "oracles.hpp"
#include "random_specs.hpp"

using namespace hypertoric;
using testing_support::idx;

namespace {

void expect_matches_oracle(const Arrangement& arr, const std::vector<Face>& faces) {
  IntMatrix A(arr.dimension, arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i)
    for (std::size_t r = 0; r < arr.dimension; ++r) A(r, i) = arr.hyperplanes[i].normal[r];
  auto expected = oracle::faces(A, arr.h);
  std::sort(expected.begin(), expected.end(), [](const auto& a, const auto& b) { return a.sign < b.sign; });
  ASSERT_EQ(faces.size(), expected.size());
  for (std::size_t k = 0; k < faces.size(); ++k) {
    EXPECT_EQ(faces[k].sign.entries(), expected[k].sign);
    EXPECT_EQ(faces[k].dim, expected[k].dim) << faces[k].sign.str();
    EXPECT_EQ(faces[k].bounded, expected[k].bounded) << faces[k].sign.str();
    for (const auto& H : arr.hyperplanes)
      EXPECT_EQ(sign(H.evaluate(faces[k].witness)), faces[k].sign[H.index]);
  }
}

}  // namespace

TEST(SignVector, RoundTrip) {
  const SignVector s = SignVector::parse("(+,0,−)");
  EXPECT_EQ(s.entries(), (std::vector<int>{1, 0, -1}));
  EXPECT_EQ(s.str(), "(+,0,-)");
  EXPECT_EQ(s.zeros(), idx({2}));
  EXPECT_FALSE(s.full_support());
  EXPECT_TRUE(s.face_of(SignVector::parse("(+,+,-)")));
  EXPECT_FALSE(s.face_of(SignVector::parse("(+,+,+)")));
  EXPECT_THROW(SignVector::parse("(+,x)"), ParseError);
}

TEST(Arrangement, Example1LineHasFiveFaces) {
  const TorusSpec spec = testing_support::example1(1);
  const Arrangement arr = build_arrangement(spec, {Rational(1)});
  const auto faces = enumerate_faces(arr);
  EXPECT_EQ(faces.size(), 5u);
  const auto complex = bounded_complex(faces, 1);
  EXPECT_EQ(complex.face_counts, (std::vector<std::size_t>{2, 1}));
  expect_matches_oracle(arr, faces);
}

TEST(Arrangement, Example1SimplexFaceCounts) {
  for (std::size_t n = 1; n <= 5; ++n) {
    const auto complex = analyze_core(testing_support::example1(n), {Rational(1)}).complex;
    ASSERT_EQ(complex.face_counts.size(), n + 1);
    for (std::size_t k = 0; k <= n; ++k)
      EXPECT_EQ(Integer(complex.face_counts[k]), detail::binomial(n + 1, k + 1)) << "n=" << n << " k=" << k;
  }
}

TEST(Arrangement, Example2AgreesWithExhaustiveOracle) {
  const TorusSpec spec = testing_support::example2();
  const Arrangement arr = build_arrangement(spec, {Rational(3), Rational(1)});
  const auto faces = enumerate_faces(arr);
  expect_matches_oracle(arr, faces);
  EXPECT_EQ(bounded_complex(faces, 3).face_counts, (std::vector<std::size_t>{8, 14, 9, 2}));
}

TEST(Arrangement, RegionCountsMatchZaslavsky) {
  std::mt19937_64 rng(testing_support::seed() + 20);
  for (int trial = 0; trial < 12; ++trial) {
    const TorusSpec spec = testing_support::random_spec(rng, {6, 3, 2, false});
    const auto walls = enumerate_walls(spec);
    const RatVector alpha = testing_support::random_regular_alpha(rng, spec, walls);
    const Arrangement arr = build_arrangement(spec, alpha);
    const auto faces = enumerate_faces(arr);
    std::size_t regions = 0, bounded = 0;
    for (const auto& f : faces)
      if (f.dim == arr.dimension) {
        ++regions;
        bounded += f.bounded;
      }
    const auto z = oracle::zaslavsky(spec.gale(), arr.h);
    EXPECT_EQ(Integer(regions), z.regions);
    EXPECT_EQ(Integer(bounded), z.bounded);
  }
}

TEST(Arrangement, RandomSpecsAgreeWithExhaustiveOracle) {
  std::mt19937_64 rng(testing_support::seed() + 21);
  for (int trial = 0; trial < 12; ++trial) {
    const TorusSpec spec = testing_support::random_spec(rng, {6, 3, 3, false});
    const auto walls = enumerate_walls(spec);
    const RatVector alpha = testing_support::random_regular_alpha(rng, spec, walls);
    const Arrangement arr = build_arrangement(spec, alpha);
    expect_matches_oracle(arr, enumerate_faces(arr));
  }
}

TEST(Arrangement, ThreadCountDoesNotChangeResult) {
  const Arrangement arr = build_arrangement(testing_support::example2(), {Rational(3), Rational(1)});
  const auto serial = enumerate_faces(arr, {1});
  const auto parallel = enumerate_faces(arr, {4});
  ASSERT_EQ(serial.size(), parallel.size());
  for (std::size_t k = 0; k < serial.size(); ++k) {
    EXPECT_EQ(serial[k].sign, parallel[k].sign);
    EXPECT_EQ(serial[k].witness, parallel[k].witness);
  }
}

TEST(Core, Example2Components) {
  const CoreData core = analyze_core(testing_support::example2(), {Rational(3), Rational(1)});
  const auto dec = core_components(core.reduced, core.complex, core.faces);
  ASSERT_EQ(dec.components.size(), 2u);
  std::vector<std::string> signs;
  for (const auto& c : dec.components) signs.push_back(c.sign.str());
  std::sort(signs.begin(), signs.end());
  EXPECT_EQ(signs, (std::vector<std::string>{"(+,+,+,+,+)", "(+,+,-,+,-)"}));
  for (const auto& c : dec.components) {
    // a triangular prism and a tetrahedron
    const std::size_t v = c.vertices.size();
    EXPECT_TRUE(v == 6 || v == 4);
    EXPECT_EQ(c.facets.size(), v == 6 ? 5u : 4u);
  }
  ASSERT_EQ(dec.intersections.size(), 1u);
  ASSERT_TRUE(dec.intersections[0].face);
  const Face& meet = core.complex.faces[*dec.intersections[0].face];
  EXPECT_EQ(meet.sign.str(), "(+,+,0,+,0)");
  EXPECT_EQ(meet.dim, 1u);
}

TEST(Core, SplitFactorRejected) {
  const TorusSpec spec = TorusSpec::from_basis(IntMatrix{{1, 1, 0}});
  const Arrangement arr = build_arrangement(spec, {Rational(1)});
  const auto faces = enumerate_faces(arr);
  EXPECT_THROW(core_components(spec, bounded_complex(faces, arr.dimension), faces), PreconditionError);
}
