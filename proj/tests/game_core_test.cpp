#include <random>

#include "doctest.h"
#include "test_support.hpp"
#include "veccost/errors.hpp"
#include "veccost/game_core.hpp"

using namespace veccost;
using namespace veccost::testing;
using Idx = std::vector<std::size_t>;

TEST_CASE("cost matrix construction and shape checks") {
  CHECK_THROWS_AS(CostMatrix::FromRows({{1, 2}, {3}}), DimensionError);
  CHECK_THROWS_AS(CostMatrix::FromRows({}), DimensionError);
  CHECK_THROWS_AS(CostMatrix::FromRows({{1, NAN}}), InputError);
  const CostMatrix a{{1, 2}, {3, 4}};
  CHECK(a.Transposed() == CostMatrix{{1, 3}, {2, 4}});
  CHECK(a.FrobeniusNormSquared() == 30.0);
  CHECK_THROWS_AS(a + CostMatrix(2, 3), DimensionError);
}

TEST_CASE("scalarize") {
  const CostMatrix c1 = Scalarize(ExampleA1(), ExampleB1(), ExampleWeights());
  CHECK(c1 == CostMatrix{{0, 3, 6}, {-1, 2, 5}, {-2, 1, 4}});
  CHECK(Scalarize(ExampleA1(), ExampleB1(), {1, 0}) == ExampleA1());
  CHECK(Scalarize(CostMatrix{{1}}, CostMatrix{{2}}, {-1, 3}) == CostMatrix{{5}});
  CHECK_THROWS_AS(Scalarize(CostMatrix(2, 2), CostMatrix(2, 3), {1, 1}),
                  DimensionError);
}

TEST_CASE("scalarize is linear in the weights") {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 50; ++k) {
    const CostMatrix a = RandomIntMatrix(rng, 4, 5, -9, 9);
    const CostMatrix b = RandomIntMatrix(rng, 4, 5, -9, 9);
    const Weights w{1.5, -2.0}, v{0.25, 3.0};
    CHECK(Scalarize(a, b, w) + Scalarize(a, b, v) ==
          Scalarize(a, b, {w.theta1 + v.theta1, w.theta2 + v.theta2}));
  }
}

TEST_CASE("security policies") {
  const VectorGame g =
      VectorGame::WithDefaults(ExampleA1(), ExampleB1(), ExampleWeights());
  const auto row = SecurityPolicyRow(g.C1());
  CHECK(row.policies == Idx{2});
  CHECK(row.value == 4.0);
  const auto col = SecurityPolicyCol(g.C2());
  CHECK(col.policies == Idx{2});
  CHECK(col.value == 4.0);
  CHECK(g.C2() == g.C1().Transposed());

  CHECK(SecurityPolicyRow(CostMatrix(3, 3)).policies == Idx{0, 1, 2});
  CHECK(SecurityPolicyCol(CostMatrix(3, 3)).policies == Idx{0, 1, 2});
  const auto r2 = SecurityPolicyRow({{0, 10}, {5, 5}});
  CHECK(r2.policies == Idx{1});
  CHECK(r2.value == 5.0);
  const auto c2 = SecurityPolicyCol({{0, 5}, {10, 5}});
  CHECK(c2.policies == Idx{1});
  CHECK(c2.value == 5.0);
}

TEST_CASE("security set is invariant under positive affine maps") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 100; ++k) {
    const CostMatrix c = RandomIntMatrix(rng, 5, 4, -3, 3);
    CostMatrix t = 4.0 * c;
    for (std::size_t i = 0; i < t.rows(); ++i)
      for (std::size_t j = 0; j < t.cols(); ++j) t(i, j) -= 7.0;
    CHECK(SecurityPolicyRow(t).policies == SecurityPolicyRow(c).policies);
    CHECK(SecurityPolicyCol(t).policies == SecurityPolicyCol(c).policies);
  }
}

TEST_CASE("pure nash") {
  const VectorGame g =
      VectorGame::WithDefaults(ExampleA1(), ExampleB1(), ExampleWeights());
  CHECK(PureNash(g.C1(), g.C2()) == std::vector<PolicyPair>{{2, 2}});
  const CostMatrix b{{0, 1}, {1, 2}};
  CHECK(PureNash(b, b) == std::vector<PolicyPair>{{0, 0}});
  CHECK(PureNash(CostMatrix(2, 2), CostMatrix(2, 2)).size() == 4);
  CHECK_THROWS_AS(PureNash(CostMatrix(2, 2), CostMatrix(3, 2)), DimensionError);
}

TEST_CASE("pure nash matches brute force with ties") {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 300; ++k) {
    const CostMatrix c1 = RandomIntMatrix(rng, 4, 4, 0, 3);
    const CostMatrix c2 = RandomIntMatrix(rng, 4, 4, 0, 3);
    CHECK(PureNash(c1, c2) == BruteNash(c1, c2));
  }
}

TEST_CASE("exact potential check") {
  const CostMatrix c2 = Scalarize(-ExampleA1(), ExampleB1(), ExampleWeights());
  const CostMatrix e{{0, 0, 0}, {-0.5, -0.5, -0.5}, {0.5, 0.5, 0.5}};
  const CostMatrix phi{{3.5, 2.5, 1.5}, {2, 1, 0}, {2, 1, 0}};
  const auto ok = IsExactPotential(ExampleA1() + e, c2, phi, 1e-6);
  CHECK(ok.ok);
  CHECK(ok.max_residual <= 1e-6);

  const CostMatrix b{{0, 1}, {1, 2}};
  CHECK(IsExactPotential(b, b, b, 0.0).ok);

  const auto bad = IsExactPotential({{0, 0}, {1, 0}}, CostMatrix(2, 2),
                                    CostMatrix(2, 2), 1e-9);
  CHECK_FALSE(bad.ok);
  CHECK(bad.max_residual == 1.0);
}

TEST_CASE("pairwise differences") {
  const auto d = PairwiseDiffs(CostMatrix{{3, 2, 1}});
  CHECK(d.col_diff.empty());
  REQUIRE(d.row_diff.size() == 1);
  CHECK(d.row_diff[0] == std::vector<double>{1, 2, 1});
  using P = std::pair<std::size_t, std::size_t>;
  CHECK(d.row_pairs == std::vector<P>{{0, 1}, {0, 2}, {1, 2}});

  const auto z = PairwiseDiffs(CostMatrix(3, 4, 2.5));
  for (const auto& r : z.col_diff)
    for (double v : r) CHECK(v == 0.0);
  for (const auto& r : z.row_diff)
    for (double v : r) CHECK(v == 0.0);
}

TEST_CASE("pairwise differences round trip") {
  std::mt19937_64 rng(5);
  const CostMatrix x = RandomIntMatrix(rng, 4, 5, -9, 9);
  const auto d = PairwiseDiffs(x);
  CHECK(d.col_diff.size() == 6);
  CHECK(d.row_diff.front().size() == 10);
  for (std::size_t k = 0; k < d.col_pairs.size(); ++k) {
    const auto [i, l] = d.col_pairs[k];
    for (std::size_t j = 0; j < x.cols(); ++j)
      CHECK(d.col_diff[k][j] == x(i, j) - x(l, j));
  }
  for (std::size_t k = 0; k < d.row_pairs.size(); ++k) {
    const auto [j, l] = d.row_pairs[k];
    for (std::size_t i = 0; i < x.rows(); ++i)
      CHECK(d.row_diff[i][k] == x(i, j) - x(i, l));
  }
}

TEST_CASE("outcomes and the pareto family on the worked example") {
  const CostMatrix a = ExampleA1(), b = ExampleB1();
  CHECK(EvaluateOutcome(a, b, {1, 1}) == std::pair<double, double>{0, 2});
  CHECK(EvaluateOutcome(a, b, {2, 2}) == std::pair<double, double>{0, 4});
  CHECK(EvaluateOutcome(CostMatrix(2, 2), CostMatrix(2, 2), {1, 0}) ==
        std::pair<double, double>{0, 0});
  CHECK_THROWS_AS(EvaluateOutcome(a, b, {3, 0}), IndexError);

  CHECK(ParetoSet(a, b, 2) == Idx{0, 1, 2});
  CHECK(ParetoSet(a, b, 1) == Idx{0, 1, 2});
  CHECK(WorstCaseSet(a, b, 2) == Idx{0, 2});
  CHECK(ModerateSet(a, b, 2) == Idx{1});
  CHECK_THROWS_AS(ParetoSet(a, b, 3), IndexError);
}

TEST_CASE("pareto family edge cases") {
  CHECK(ParetoSet({{0}, {1}}, {{0}, {1}}, 0) == Idx{0});
  CHECK(WorstCaseSet(CostMatrix(3, 1, 2.0), CostMatrix(3, 1, 5.0), 0) ==
        Idx{0, 1, 2});
  CHECK(WorstCaseSet({{0}, {9}}, {{9}, {0}}, 0) == Idx{0, 1});
  CHECK(ModerateSet({{4}}, {{1}}, 0).empty());
  CHECK(ModerateSet({{0}, {1}, {2}}, {{0}, {1}, {2}}, 0) == Idx{0});
}

TEST_CASE("pareto family matches brute force with ties") {
  std::mt19937_64 rng(9);
  for (int k = 0; k < 300; ++k) {
    const CostMatrix a = RandomIntMatrix(rng, 6, 6, 0, 4);
    const CostMatrix b = RandomIntMatrix(rng, 6, 6, 0, 4);
    for (std::size_t s = 0; s < 6; ++s) {
      CHECK(ParetoSet(a, b, s) == BrutePareto(a, b, s));
      CHECK(WorstCaseSet(a, b, s) == BruteWorst(a, b, s));
      CHECK(ModerateSet(a, b, s) == BruteModerate(a, b, s));
    }
  }
}

TEST_CASE("vector game validation") {
  VectorGame g = VectorGame::WithDefaults(ExampleA1(), ExampleB1(), {2, 1});
  CHECK_NOTHROW(g.Validate());
  CHECK((g.A1 + g.A2).MaxAbs() == 0.0);
  g.A2(0, 1) += 1.0;
  CHECK_THROWS_AS(g.Validate(), InputError);
  g = VectorGame::WithDefaults(ExampleA1(), CostMatrix(2, 3), {2, 1});
  CHECK_THROWS_AS(g.Validate(), DimensionError);
}
