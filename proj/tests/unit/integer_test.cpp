#include "polytope/error.hpp"
#include "polytope/integer.hpp"

#include "generators.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

namespace polytope {
namespace {

TEST(Determinant, MatchesLeibnizOnRandomMatrices) {
  testing::for_each_case(11, 300, [](std::mt19937_64& rng) {
    const auto n = static_cast<std::size_t>(testing::uniform(rng, 1, 5));
    const IntMatrix m = testing::random_matrix(n, n, -9, 9, rng);
    EXPECT_EQ(determinant(m), testing::leibniz_determinant(m));
  });
}

TEST(Determinant, HandlesZeroPivotsAndSingularity) {
  EXPECT_EQ(determinant(IntMatrix{{0, 1}, {1, 0}}), -1);
  EXPECT_EQ(determinant(IntMatrix{{1, 2}, {2, 4}}), 0);
  EXPECT_EQ(determinant(IntMatrix{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}}), -1);
  EXPECT_THROW((void)determinant(IntMatrix(2, 3)), ParameterError);
}

TEST(Determinant, StaysExactBeyondMachineWords) {
  IntMatrix m{{1, 0}, {0, 1}};
  m(0, 0) = Integer("123456789012345678901234567890");
  m(1, 1) = Integer("98765432109876543210");
  EXPECT_EQ(determinant(m), Integer("12193263113702179522496570642237463801111263526900"));
}

TEST(Rank, CountsIndependentRows) {
  EXPECT_EQ(rank(IntMatrix{{1, 2, 3}, {2, 4, 6}, {1, 0, 1}}), 2U);
  EXPECT_EQ(rank(IntMatrix::identity(4)), 4U);
  EXPECT_EQ(rank(IntMatrix(3, 3)), 0U);
}

TEST(SolveExact, RecoversRationalSolutionOfOverdeterminedSystem) {
  const IntMatrix a{{1, 1}, {1, -1}, {2, 0}};
  const IntMatrix b{{3}, {0}, {3}};
  const auto sol = solve_exact(a, b);
  ASSERT_EQ(sol.status, LinearSolution::Status::unique);
  EXPECT_EQ(sol.x[0][0], Rational(3, 2));
  EXPECT_EQ(sol.x[1][0], Rational(3, 2));
}

TEST(SolveExact, FlagsInconsistentAndUnderdetermined) {
  EXPECT_EQ(solve_exact(IntMatrix{{1, 1}, {1, 1}}, IntMatrix{{1}, {2}}).status,
            LinearSolution::Status::inconsistent);
  EXPECT_EQ(solve_exact(IntMatrix{{1, 1}}, IntMatrix{{1}}).status, LinearSolution::Status::underdetermined);
}

TEST(SolveExact, RandomSquareSystemsRoundTrip) {
  testing::for_each_case(12, 200, [](std::mt19937_64& rng) {
    const auto n = static_cast<std::size_t>(testing::uniform(rng, 1, 5));
    const IntMatrix a = testing::random_matrix(n, n, -5, 5, rng);
    const IntMatrix x = testing::random_matrix(n, 2, -20, 20, rng);
    const auto sol = solve_exact(a, multiply(a, x));
    if (determinant(a) == 0) {
      EXPECT_NE(sol.status, LinearSolution::Status::unique);
      return;
    }
    ASSERT_EQ(sol.status, LinearSolution::Status::unique);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < 2; ++c) EXPECT_EQ(sol.x[r][c], Rational(x(r, c)));
  });
}

TEST(MatrixOps, MultiplyTransposedAgreesWithExplicitTranspose) {
  testing::for_each_case(13, 50, [](std::mt19937_64& rng) {
    const IntMatrix a = testing::random_matrix(3, 4, -7, 7, rng);
    const IntMatrix b = testing::random_matrix(5, 4, -7, 7, rng);
    EXPECT_EQ(multiply_transposed(a, b), multiply(a, b.transpose()));
  });
}

TEST(MatrixOps, CombineRowsIsVectorMatrixProduct) {
  const IntMatrix m{{1, 2}, {3, 4}, {5, 6}};
  const IntVector c{1, -1, 2};
  EXPECT_EQ(combine_rows(m, c), (IntVector{8, 10}));
}

TEST(ToFixed, RoundsHalfAwayFromZero) {
  EXPECT_EQ(to_fixed(Rational(2, 3), 6), "0.666667");
  EXPECT_EQ(to_fixed(Rational(-2, 3), 6), "-0.666667");
  EXPECT_EQ(to_fixed(Rational(1, 8), 2), "0.13");
  EXPECT_EQ(to_fixed(Rational(-1, 8), 2), "-0.13");
  EXPECT_EQ(to_fixed(Rational(15), 3), "15.000");
  EXPECT_EQ(to_fixed(Rational(0), 0), "0");
}

}  // namespace
}  // namespace polytope
