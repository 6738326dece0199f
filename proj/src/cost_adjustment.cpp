#include "veccost/cost_adjustment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "veccost/errors.hpp"

namespace veccost {
namespace {

void RequireTarget(const CostMatrix& c2, std::size_t r, std::size_t c) {
  if (r >= c2.rows() || c >= c2.cols()) {
    throw IndexError("target (" + std::to_string(r + 1) + ", " +
                     std::to_string(c + 1) + ") out of range for " +
                     std::to_string(c2.rows()) + "x" +
                     std::to_string(c2.cols()) + " matrix");
  }
}

void RequireEpsilon(double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw DomainError("epsilon must be positive and finite");
  }
}

// Row sums and column sums of M + t_i + s_j.
void ResidualSums(const ReducedProblem& q, const std::vector<double>& t,
                  const std::vector<double>& s, std::vector<double>& row_sum,
                  std::vector<double>& col_sum) {
  const auto& m = q.residual;
  row_sum.assign(m.rows(), 0.0);
  col_sum.assign(m.cols(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const double e = m(i, j) + t[i] + s[j];
      row_sum[i] += e;
      col_sum[j] += e;
    }
}

double KktViolation(const ReducedProblem& q, const std::vector<double>& t,
                    const std::vector<double>& s) {
  std::vector<double> row_sum, col_sum;
  ResidualSums(q, t, s, row_sum, col_sum);
  double worst = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i == q.fixed_row) continue;
    const double g = 2.0 * row_sum[i];
    // At the lower bound only a negative gradient (wanting to decrease
    // further) is allowed to remain.
    const bool at_bound = t[i] <= q.lower_bound[i];
    worst = std::max(worst, at_bound ? std::max(0.0, -g) : std::abs(g));
  }
  for (double cs : col_sum) worst = std::max(worst, std::abs(2.0 * cs));
  return worst;
}

}  // namespace

std::vector<std::size_t> ViolatingColumns(const CostMatrix& c2, std::size_t r,
                                          std::size_t c, double epsilon) {
  RequireTarget(c2, r, c);
  RequireEpsilon(epsilon);
  std::vector<std::size_t> bad;
  for (std::size_t j = 0; j < c2.cols(); ++j) {
    if (j != c && !(c2(r, j) - c2(r, c) >= epsilon)) bad.push_back(j);
  }
  return bad;
}

bool FeasibleMinimum(const CostMatrix& c2, std::size_t r, std::size_t c,
                     double epsilon) {
  return ViolatingColumns(c2, r, c, epsilon).empty();
}

ReducedProblem Reduce(const AdjustmentProblem& p) {
  RequireSameShape(p.A1, p.C2, "adjust_costs");
  auto bad = ViolatingColumns(p.C2, p.r, p.c, p.epsilon);
  if (!bad.empty()) {
    std::string cols;
    for (std::size_t j : bad) cols += (cols.empty() ? "" : ",") + std::to_string(j + 1);
    throw InfeasibleError("target (" + std::to_string(p.r + 1) + ", " +
                              std::to_string(p.c + 1) +
                              ") infeasible: row minimum of C2 violated at "
                              "columns " +
                              cols,
                          std::move(bad));
  }
  ReducedProblem q;
  q.residual = p.C2 - p.A1;
  q.fixed_row = p.r;
  q.fixed_offset = -p.C2(p.r, p.c);
  q.lower_bound.resize(p.C2.rows());
  for (std::size_t i = 0; i < p.C2.rows(); ++i) {
    auto row = p.C2.row(i);
    q.lower_bound[i] = p.epsilon - *std::min_element(row.begin(), row.end());
  }
  q.lower_bound[p.r] = q.fixed_offset;
  return q;
}

double ReducedObjective(const ReducedProblem& q, const std::vector<double>& t,
                        const std::vector<double>& s) {
  return ReconstructError(q.residual, t, s).FrobeniusNormSquared();
}

ReducedSolution SolveReduced(const ReducedProblem& q,
                             const SolverOptions& opts) {
  const auto& m = q.residual;
  const std::size_t n = m.rows(), cols = m.cols();
  if (q.lower_bound.size() != n || q.fixed_row >= n) {
    throw DimensionError("reduced problem: bounds do not match residual rows");
  }

  ReducedSolution sol;
  sol.t = q.lower_bound;
  sol.t[q.fixed_row] = q.fixed_offset;
  sol.s.assign(cols, 0.0);

  for (int sweep = 1; sweep <= opts.max_sweeps; ++sweep) {
    // Each 1-D subproblem is a quadratic whose minimiser is minus the mean
    // of the residuals it shifts; clamp t_i to its bound.
    for (std::size_t i = 0; i < n; ++i) {
      if (i == q.fixed_row) continue;
      double sum = 0.0;
      for (std::size_t j = 0; j < cols; ++j) sum += m(i, j) + sol.s[j];
      sol.t[i] = std::max(q.lower_bound[i], -sum / static_cast<double>(cols));
    }
    for (std::size_t j = 0; j < cols; ++j) {
      double sum = 0.0;
      for (std::size_t i = 0; i < n; ++i) sum += m(i, j) + sol.t[i];
      sol.s[j] = -sum / static_cast<double>(n);
    }
    sol.sweeps = sweep;
    sol.kkt_violation = KktViolation(q, sol.t, sol.s);
    if (sol.kkt_violation <= opts.tol) {
      sol.objective = ReducedObjective(q, sol.t, sol.s);
      return sol;
    }
  }
  sol.objective = ReducedObjective(q, sol.t, sol.s);
  throw ConvergenceError("coordinate descent did not converge in " +
                             std::to_string(opts.max_sweeps) +
                             " sweeps (objective " +
                             std::to_string(sol.objective) +
                             ", gradient " +
                             std::to_string(sol.kkt_violation) + ")",
                         sol.objective, sol.kkt_violation);
}

CostMatrix ReconstructError(const CostMatrix& residual,
                            const std::vector<double>& t,
                            const std::vector<double>& s) {
  if (t.size() != residual.rows() || s.size() != residual.cols()) {
    throw DimensionError("offset vectors do not match residual shape");
  }
  CostMatrix e(residual.rows(), residual.cols());
  for (std::size_t i = 0; i < e.rows(); ++i)
    for (std::size_t j = 0; j < e.cols(); ++j)
      e(i, j) = residual(i, j) + t[i] + s[j];
  return e;
}

CostMatrix ReconstructPotential(const CostMatrix& c2,
                                const std::vector<double>& t) {
  if (t.size() != c2.rows()) {
    throw DimensionError("row offsets do not match potential rows");
  }
  CostMatrix phi(c2.rows(), c2.cols());
  for (std::size_t i = 0; i < phi.rows(); ++i)
    for (std::size_t j = 0; j < phi.cols(); ++j) phi(i, j) = c2(i, j) + t[i];
  return phi;
}

AdjustmentResult AdjustCosts(const AdjustmentProblem& p,
                             const SolverOptions& opts) {
  RequireSameShape(p.A1, p.C2, "adjust_costs");
  AdjustmentResult result;
  result.target = {p.r, p.c};
  ReducedProblem q;
  try {
    q = Reduce(p);
  } catch (const InfeasibleError& e) {
    result.status = AdjustmentStatus::kInfeasible;
    result.violating_columns = e.violating_columns();
    return result;
  }
  const ReducedSolution sol = SolveReduced(q, opts);
  result.status = AdjustmentStatus::kSolved;
  result.E = ReconstructError(q.residual, sol.t, sol.s);
  result.phi = ReconstructPotential(p.C2, sol.t);
  result.phi(p.r, p.c) = 0.0;
  result.frob_norm_sq = result.E.FrobeniusNormSquared();
  return result;
}

AdjustmentDiagnostics Diagnose(const AdjustmentProblem& p,
                               const AdjustmentResult& result) {
  AdjustmentDiagnostics d;
  if (!result.solved()) return d;
  const CostMatrix adjusted = p.A1 + result.E;
  const auto pot = IsExactPotential(adjusted, p.C2, result.phi, 1e-6);
  d.potential_residual = pot.max_residual;
  d.potential_ok = pot.ok;

  d.min_location_ok = true;
  const double at_target = result.phi(p.r, p.c);
  for (std::size_t i = 0; i < result.phi.rows(); ++i)
    for (std::size_t j = 0; j < result.phi.cols(); ++j)
      if ((i != p.r || j != p.c) && !(result.phi(i, j) > at_target))
        d.min_location_ok = false;

  d.nash_ok = false;
  for (const auto& eq : PureNash(adjusted, p.C2))
    if (eq.gamma == p.r && eq.sigma == p.c) d.nash_ok = true;

  const auto sec = SecurityPolicyRow(adjusted);
  d.security_ok = std::find(sec.policies.begin(), sec.policies.end(), p.r) !=
                  sec.policies.end();
  return d;
}

SelectionResult SelectPolicy(const CostMatrix& a1, const CostMatrix& b1,
                             const CostMatrix& c2, const Weights& w,
                             double epsilon, const SolverOptions& opts) {
  RequireSameShape(a1, b1, "select_policy");
  RequireSameShape(a1, c2, "select_policy");
  RequireEpsilon(epsilon);

  SelectionResult out;
  out.sigma = SecurityPolicyCol(c2).policies.front();

  for (std::size_t r : ModerateSet(a1, b1, out.sigma)) {
    AdjustmentProblem p{a1, c2, r, out.sigma, epsilon};
    AdjustmentResult res = AdjustCosts(p, opts);
    out.candidates_tried.push_back(
        {r, res.status, res.solved() ? res.frob_norm_sq : 0.0});
    if (!res.solved()) continue;
    if (!out.best || res.frob_norm_sq < out.best->frob_norm_sq) {
      out.best = std::move(res);
    }
  }

  if (out.best) {
    out.method = SelectionMethod::kAdjusted;
    // The target row is the unique equilibrium row of (A1 + E, C2). It is
    // not always a minimax row of A1 + E; that case is reported through
    // diagnostics->security_ok rather than by switching rows.
    const std::size_t r = out.best->target.gamma;
    out.gamma = r;
    out.diagnostics =
        Diagnose(AdjustmentProblem{a1, c2, r, out.sigma, epsilon}, *out.best);
  } else {
    out.method = SelectionMethod::kScalarizedFallback;
    out.gamma = SecurityPolicyRow(Scalarize(a1, b1, w)).policies.front();
  }
  return out;
}

ErrorBounds ComputeErrorBounds(const CostMatrix& a1, const CostMatrix& b1,
                               const CostMatrix& c2, PolicyPair target,
                               double epsilon, const SolverOptions& opts) {
  RequireSameShape(a1, b1, "error_bounds");
  RequireSameShape(a1, c2, "error_bounds");
  const std::size_t r = target.gamma, c = target.sigma;
  // Reduce throws InfeasibleError for us.
  const auto ea = SolveReduced(Reduce({a1, c2, r, c, epsilon}), opts);
  const auto eb = SolveReduced(Reduce({b1, c2, r, c, epsilon}), opts);

  ErrorBounds out;
  out.norm_a = std::sqrt(ea.objective);
  out.norm_b = std::sqrt(eb.objective);
  const auto col_a = a1.col(c);
  const auto col_b = b1.col(c);
  out.deviation_a = col_a[r] - *std::min_element(col_a.begin(), col_a.end());
  out.deviation_b = col_b[r] - *std::min_element(col_b.begin(), col_b.end());
  return out;
}

}  // namespace veccost
