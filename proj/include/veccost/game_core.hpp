#pragma once

// Pure-strategy primitives for two-player vector-cost bimatrix games.
//
// All indices in this API are 0-based; file formats and the CLI translate to
// the 1-based numbering used in reports. Set-valued results are complete and
// sorted ascending (lexicographically for pairs). Comparisons inside the set
// operations are exact on the input values.

#include <cstddef>
#include <utility>
#include <vector>

#include "veccost/cost_matrix.hpp"

namespace veccost {

struct Weights {
  double theta1 = 1.0;
  double theta2 = 0.0;
};

struct PolicyPair {
  std::size_t gamma = 0;  // player 1 action (row)
  std::size_t sigma = 0;  // player 2 action (column)
  friend auto operator<=>(const PolicyPair&, const PolicyPair&) = default;
};

// A1/A2 form the zero-sum competitive pair, B1/B2 the potential-game pair.
struct VectorGame {
  CostMatrix A1, B1, A2, B2;
  Weights weights;

  // Builds a game with A2 = -A1 and B2 = B1.
  static VectorGame WithDefaults(CostMatrix a1, CostMatrix b1, Weights w);

  // Throws DimensionError if the shapes differ and InputError if
  // A1 + A2 != 0 anywhere.
  void Validate() const;

  CostMatrix C1() const;
  CostMatrix C2() const;
};

struct SecurityResult {
  std::vector<std::size_t> policies;
  double value = 0.0;
};

// Pairwise differences along columns (f = n(n-1)/2 rows) and along rows
// (g = m(m-1)/2 columns). `col_pairs[k]` is the (i, k) row pair generating
// row k of `col_diff`; `row_pairs[k]` is the (j, k) column pair generating
// column k of `row_diff`.
struct PairwiseDiff {
  std::vector<std::vector<double>> col_diff;  // f x m
  std::vector<std::vector<double>> row_diff;  // n x g
  std::vector<std::pair<std::size_t, std::size_t>> col_pairs;
  std::vector<std::pair<std::size_t, std::size_t>> row_pairs;
};

struct PotentialCheck {
  bool ok = false;
  double max_residual = 0.0;
};

// theta1 * A + theta2 * B.
CostMatrix Scalarize(const CostMatrix& a, const CostMatrix& b,
                     const Weights& w);

// argmin over rows of the row maximum (player 1's minimax action).
SecurityResult SecurityPolicyRow(const CostMatrix& c);
// argmin over columns of the column maximum (player 2's minimax action).
SecurityResult SecurityPolicyCol(const CostMatrix& c);

std::vector<PolicyPair> PureNash(const CostMatrix& c1, const CostMatrix& c2);

// Checks that phi is an exact potential for (b1, b2): every unilateral
// row deviation of b1 and column deviation of b2 matches phi within tol.
PotentialCheck IsExactPotential(const CostMatrix& b1, const CostMatrix& b2,
                                const CostMatrix& phi, double tol);

PairwiseDiff PairwiseDiffs(const CostMatrix& x);

std::pair<double, double> EvaluateOutcome(const CostMatrix& a,
                                          const CostMatrix& b, PolicyPair p);

// Non-dominated rows of column sigma under the (A, B) outcome order.
std::vector<std::size_t> ParetoSet(const CostMatrix& a, const CostMatrix& b,
                                   std::size_t sigma);
// Union of the maximisers of A and of B in column sigma.
std::vector<std::size_t> WorstCaseSet(const CostMatrix& a,
                                      const CostMatrix& b, std::size_t sigma);
// ParetoSet minus WorstCaseSet. May be empty.
std::vector<std::size_t> ModerateSet(const CostMatrix& a, const CostMatrix& b,
                                     std::size_t sigma);

}  // namespace veccost
