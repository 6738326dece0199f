#pragma once

// Minimal-Frobenius-norm adjustment of player 1's competitive costs.
//
// Given A1 and the opponent's fixed scalarized costs C2, find E and phi with
//
//   min ||E||_F^2  s.t.  D_col(A1 + E) = D_col(phi),  D_row(C2) = D_row(phi),
//                        phi(r, c) = 0,  phi >= epsilon elsewhere.
//
// The equality constraints force phi(i, j) = C2(i, j) + t_i and
// E(i, j) = (C2 - A1)(i, j) + t_i + s_j for row offsets t and column offsets
// s, so the program reduces to a bound-constrained least-squares problem in
// n + m - 1 variables (t_r is pinned by phi(r, c) = 0). The target is
// feasible exactly when column c is the strict minimum of row r of C2 with
// margin epsilon.

#include <cstddef>
#include <optional>
#include <vector>

#include "veccost/cost_matrix.hpp"
#include "veccost/game_core.hpp"

namespace veccost {

inline constexpr double kDefaultEpsilon = 1e-6;

struct AdjustmentProblem {
  CostMatrix A1;
  CostMatrix C2;
  std::size_t r = 0;
  std::size_t c = 0;
  double epsilon = kDefaultEpsilon;
};

struct ReducedProblem {
  CostMatrix residual;              // M = C2 - A1
  std::size_t fixed_row = 0;        // r
  double fixed_offset = 0.0;        // t_r = -C2(r, c)
  std::vector<double> lower_bound;  // t_i >= lower_bound[i] for i != r
};

struct SolverOptions {
  double tol = 1e-9;         // projected-gradient threshold
  int max_sweeps = 10000;
};

struct ReducedSolution {
  std::vector<double> t;
  std::vector<double> s;
  double objective = 0.0;
  double kkt_violation = 0.0;  // max projected-gradient magnitude
  int sweeps = 0;
};

enum class AdjustmentStatus { kSolved, kInfeasible };

struct AdjustmentResult {
  AdjustmentStatus status = AdjustmentStatus::kInfeasible;
  CostMatrix E;
  CostMatrix phi;
  double frob_norm_sq = 0.0;
  PolicyPair target;
  std::vector<std::size_t> violating_columns;  // set when infeasible

  bool solved() const { return status == AdjustmentStatus::kSolved; }
};

struct AdjustmentDiagnostics {
  double potential_residual = 0.0;
  bool potential_ok = false;     // residual <= 1e-6
  bool min_location_ok = false;  // argmin phi == {(r, c)}
  bool nash_ok = false;          // (r, c) is a pure NE of (A1 + E, C2)
  bool security_ok = false;      // r is a security policy of A1 + E
};

// Columns j != c of row r with C2(r, j) - C2(r, c) < epsilon.
std::vector<std::size_t> ViolatingColumns(const CostMatrix& c2, std::size_t r,
                                          std::size_t c, double epsilon);

bool FeasibleMinimum(const CostMatrix& c2, std::size_t r, std::size_t c,
                     double epsilon = kDefaultEpsilon);

// Throws InfeasibleError when the target cannot be realised.
ReducedProblem Reduce(const AdjustmentProblem& p);

// Cyclic coordinate descent with exact clamped 1-D minimisation, sweeping
// t ascending then s ascending. Throws ConvergenceError after max_sweeps.
ReducedSolution SolveReduced(const ReducedProblem& q,
                             const SolverOptions& opts = {});

double ReducedObjective(const ReducedProblem& q, const std::vector<double>& t,
                        const std::vector<double>& s);

// E(i, j) = M(i, j) + t_i + s_j.
CostMatrix ReconstructError(const CostMatrix& residual,
                            const std::vector<double>& t,
                            const std::vector<double>& s);
// phi(i, j) = C2(i, j) + t_i.
CostMatrix ReconstructPotential(const CostMatrix& c2,
                                const std::vector<double>& t);

AdjustmentResult AdjustCosts(const AdjustmentProblem& p,
                             const SolverOptions& opts = {});

AdjustmentDiagnostics Diagnose(const AdjustmentProblem& p,
                               const AdjustmentResult& result);

enum class SelectionMethod { kAdjusted, kScalarizedFallback };

struct CandidateAttempt {
  std::size_t row = 0;
  AdjustmentStatus status = AdjustmentStatus::kInfeasible;
  double frob_norm_sq = 0.0;  // meaningful only when solved
};

struct SelectionResult {
  std::size_t gamma = 0;
  std::size_t sigma = 0;
  SelectionMethod method = SelectionMethod::kScalarizedFallback;
  std::optional<AdjustmentResult> best;
  std::vector<CandidateAttempt> candidates_tried;
  // Set when method == kAdjusted.
  std::optional<AdjustmentDiagnostics> diagnostics;
};

// Player 1's policy choice against an opponent playing the security policy
// of C2: every moderate row in column sigma^s is tried as the potential
// minimum and the smallest adjustment wins. Falls back to the security
// policy of the scalarized costs when no candidate is feasible.
SelectionResult SelectPolicy(const CostMatrix& a1, const CostMatrix& b1,
                             const CostMatrix& c2, const Weights& w,
                             double epsilon = kDefaultEpsilon,
                             const SolverOptions& opts = {});

struct ErrorBounds {
  double norm_a = 0.0;  // ||E_A||_F from adjusting A1 against C2
  double norm_b = 0.0;  // ||E_B||_F from adjusting B1 against C2
  // Outcome loss of the target row relative to the best single-objective
  // response in the target column.
  double deviation_a = 0.0;
  double deviation_b = 0.0;
  bool holds() const { return deviation_a <= norm_a && deviation_b <= norm_b; }
};

// Throws InfeasibleError if the target is infeasible for C2.
ErrorBounds ComputeErrorBounds(const CostMatrix& a1, const CostMatrix& b1,
                               const CostMatrix& c2, PolicyPair target,
                               double epsilon = kDefaultEpsilon,
                               const SolverOptions& opts = {});

}  // namespace veccost
