#include "veccost/game_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "veccost/errors.hpp"

namespace veccost {
namespace {

void RequireColumn(const CostMatrix& a, std::size_t sigma) {
  if (sigma >= a.cols()) {
    throw IndexError("column index " + std::to_string(sigma + 1) +
                     " out of range 1.." + std::to_string(a.cols()));
  }
}

std::vector<std::size_t> Argmax(const std::vector<double>& v) {
  const double best = *std::max_element(v.begin(), v.end());
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] == best) out.push_back(i);
  return out;
}

}  // namespace

VectorGame VectorGame::WithDefaults(CostMatrix a1, CostMatrix b1, Weights w) {
  VectorGame g;
  g.A2 = -a1;
  g.B2 = b1;
  g.A1 = std::move(a1);
  g.B1 = std::move(b1);
  g.weights = w;
  return g;
}

void VectorGame::Validate() const {
  RequireSameShape(A1, B1, "game B1");
  RequireSameShape(A1, A2, "game A2");
  RequireSameShape(A1, B2, "game B2");
  if ((A1 + A2).MaxAbs() != 0.0) {
    throw InputError("A1 + A2 must be zero entrywise");
  }
  if (!std::isfinite(weights.theta1) || !std::isfinite(weights.theta2)) {
    throw InputError("weights must be finite");
  }
}

CostMatrix VectorGame::C1() const { return Scalarize(A1, B1, weights); }
CostMatrix VectorGame::C2() const { return Scalarize(A2, B2, weights); }

CostMatrix Scalarize(const CostMatrix& a, const CostMatrix& b,
                     const Weights& w) {
  RequireSameShape(a, b, "scalarize");
  CostMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      c(i, j) = w.theta1 * a(i, j) + w.theta2 * b(i, j);
  return c;
}

SecurityResult SecurityPolicyRow(const CostMatrix& c) {
  if (c.empty()) throw DimensionError("security policy of empty matrix");
  std::vector<double> worst(c.rows());
  for (std::size_t i = 0; i < c.rows(); ++i) {
    auto r = c.row(i);
    worst[i] = *std::max_element(r.begin(), r.end());
  }
  SecurityResult out;
  out.value = *std::min_element(worst.begin(), worst.end());
  for (std::size_t i = 0; i < worst.size(); ++i)
    if (worst[i] == out.value) out.policies.push_back(i);
  return out;
}

SecurityResult SecurityPolicyCol(const CostMatrix& c) {
  if (c.empty()) throw DimensionError("security policy of empty matrix");
  return SecurityPolicyRow(c.Transposed());
}

std::vector<PolicyPair> PureNash(const CostMatrix& c1, const CostMatrix& c2) {
  RequireSameShape(c1, c2, "pure_nash");
  const std::size_t n = c1.rows(), m = c1.cols();
  std::vector<double> col_min(m, std::numeric_limits<double>::infinity());
  std::vector<double> row_min(n, std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      col_min[j] = std::min(col_min[j], c1(i, j));
      row_min[i] = std::min(row_min[i], c2(i, j));
    }
  std::vector<PolicyPair> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (c1(i, j) <= col_min[j] && c2(i, j) <= row_min[i])
        out.push_back({i, j});
  return out;
}

PotentialCheck IsExactPotential(const CostMatrix& b1, const CostMatrix& b2,
                                const CostMatrix& phi, double tol) {
  RequireSameShape(b1, b2, "is_exact_potential");
  RequireSameShape(b1, phi, "is_exact_potential");
  if (!(tol >= 0.0)) throw DomainError("tolerance must be nonnegative");
  const std::size_t n = b1.rows(), m = b1.cols();
  double worst = 0.0;
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = i + 1; k < n; ++k) {
        const double res =
            (b1(i, j) - b1(k, j)) - (phi(i, j) - phi(k, j));
        worst = std::max(worst, std::abs(res));
      }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = j + 1; k < m; ++k) {
        const double res =
            (b2(i, j) - b2(i, k)) - (phi(i, j) - phi(i, k));
        worst = std::max(worst, std::abs(res));
      }
  return {worst <= tol, worst};
}

PairwiseDiff PairwiseDiffs(const CostMatrix& x) {
  const std::size_t n = x.rows(), m = x.cols();
  PairwiseDiff d;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = i + 1; k < n; ++k) d.col_pairs.emplace_back(i, k);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t k = j + 1; k < m; ++k) d.row_pairs.emplace_back(j, k);

  d.col_diff.assign(d.col_pairs.size(), std::vector<double>(m));
  for (std::size_t p = 0; p < d.col_pairs.size(); ++p) {
    const auto [i, k] = d.col_pairs[p];
    for (std::size_t j = 0; j < m; ++j) d.col_diff[p][j] = x(i, j) - x(k, j);
  }
  d.row_diff.assign(n, std::vector<double>(d.row_pairs.size()));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t p = 0; p < d.row_pairs.size(); ++p) {
      const auto [j, k] = d.row_pairs[p];
      d.row_diff[i][p] = x(i, j) - x(i, k);
    }
  return d;
}

std::pair<double, double> EvaluateOutcome(const CostMatrix& a,
                                          const CostMatrix& b, PolicyPair p) {
  RequireSameShape(a, b, "evaluate_outcome");
  if (p.gamma >= a.rows() || p.sigma >= a.cols()) {
    throw IndexError("policy pair (" + std::to_string(p.gamma + 1) + ", " +
                     std::to_string(p.sigma + 1) + ") out of range");
  }
  return {a(p.gamma, p.sigma), b(p.gamma, p.sigma)};
}

std::vector<std::size_t> ParetoSet(const CostMatrix& a, const CostMatrix& b,
                                   std::size_t sigma) {
  RequireSameShape(a, b, "pareto_set");
  RequireColumn(a, sigma);
  std::vector<std::size_t> out;
  for (std::size_t cand = 0; cand < a.rows(); ++cand) {
    const double ac = a(cand, sigma), bc = b(cand, sigma);
    bool dominated = false;
    for (std::size_t other = 0; other < a.rows() && !dominated; ++other) {
      const double ao = a(other, sigma), bo = b(other, sigma);
      dominated = ao <= ac && bo <= bc && (ao < ac || bo < bc);
    }
    if (!dominated) out.push_back(cand);
  }
  return out;
}

std::vector<std::size_t> WorstCaseSet(const CostMatrix& a,
                                      const CostMatrix& b,
                                      std::size_t sigma) {
  RequireSameShape(a, b, "worst_case_set");
  RequireColumn(a, sigma);
  auto wa = Argmax(a.col(sigma));
  auto wb = Argmax(b.col(sigma));
  std::vector<std::size_t> out;
  std::set_union(wa.begin(), wa.end(), wb.begin(), wb.end(),
                 std::back_inserter(out));
  return out;
}

std::vector<std::size_t> ModerateSet(const CostMatrix& a, const CostMatrix& b,
                                     std::size_t sigma) {
  const auto pareto = ParetoSet(a, b, sigma);
  const auto worst = WorstCaseSet(a, b, sigma);
  std::vector<std::size_t> out;
  std::set_difference(pareto.begin(), pareto.end(), worst.begin(),
                      worst.end(), std::back_inserter(out));
  return out;
}

}  // namespace veccost
