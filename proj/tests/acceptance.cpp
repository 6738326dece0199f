// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "test_support.hpp"
#include "veccost/cost_adjustment.hpp"
#include "veccost/game_core.hpp"
#include "veccost/io.hpp"
#include "veccost/race_engine.hpp"

using namespace veccost;
using namespace veccost::testing;

namespace {

constexpr double kEps = 1e-6;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct SolvedCase {
  AdjustmentProblem problem;
  AdjustmentResult result;
};

std::vector<SolvedCase> g_solved;  // filled by criterion 2, read by 3

Outcome GoldenPipeline() {
  const Weights w = ExampleWeights();
  const VectorGame g = VectorGame::WithDefaults(ExampleA1(), ExampleB1(), w);
  bool ok = g.C1() == CostMatrix{{0, 3, 6}, {-1, 2, 5}, {-2, 1, 4}} &&
            g.C2() == CostMatrix{{0, -1, -2}, {3, 2, 1}, {6, 5, 4}};
  const auto row = SecurityPolicyRow(g.C1()), col = SecurityPolicyCol(g.C2());
  ok = ok && row.policies == std::vector<std::size_t>{2} &&
       col.policies == std::vector<std::size_t>{2};
  ok = ok && EvaluateOutcome(g.A1, g.B1, {2, 2}) == std::pair<double, double>{0, 4};
  ok = ok && ModerateSet(g.A1, g.B1, 2) == std::vector<std::size_t>{1};

  const AdjustmentResult adj = AdjustCosts({g.A1, g.C2(), 1, 2, kEps});
  const CostMatrix e{{0, 0, 0}, {-0.5, -0.5, -0.5}, {0.5, 0.5, 0.5}};
  ok = ok && adj.solved() && (adj.E - e).MaxAbs() <= 1e-3 &&
       std::abs(adj.frob_norm_sq - 1.5) <= 1e-3;

  const SelectionResult sel = SelectPolicy(g.A1, g.B1, g.C2(), w, kEps);
  ok = ok && sel.gamma == 1 && sel.sigma == 2 &&
       sel.method == SelectionMethod::kAdjusted;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "security (%zu,%zu), |E|^2 = %.6f, selection (%zu,%zu) %s",
                row.policies.front() + 1, col.policies.front() + 1,
                adj.frob_norm_sq, sel.gamma + 1, sel.sigma + 1,
                sel.method == SelectionMethod::kAdjusted ? "adjusted" : "fallback");
  return {ok, buf};
}

Outcome FeasibilityEquivalence() {
  std::mt19937_64 rng(2024);
  int agree = 0, total = 0;
  g_solved.clear();
  for (int k = 0; k < 500; ++k) {
    const CostMatrix a1 = RandomMatrix(rng, 5, 5);
    const CostMatrix b1 = RandomMatrix(rng, 5, 5);
    const CostMatrix c2 = Scalarize(-a1, b1, ExampleWeights());
    for (std::size_t r = 0; r < 5; ++r)
      for (std::size_t c = 0; c < 5; ++c) {
        const AdjustmentProblem p{a1, c2, r, c, kEps};
        const AdjustmentResult res = AdjustCosts(p);
        ++total;
        if (res.solved() == FeasibleMinimum(c2, r, c, kEps)) ++agree;
        if (res.solved()) g_solved.push_back({p, res});
      }
  }
  return {agree == total, std::to_string(agree) + "/" + std::to_string(total) +
                              " agree, " + std::to_string(g_solved.size()) +
                              " solved"};
}

Outcome AdjustedEquilibria() {
  int good = 0;
  double worst = 0.0;
  for (const auto& [p, res] : g_solved) {
    const CostMatrix adjusted = p.A1 + res.E;
    const auto pot = IsExactPotential(adjusted, p.C2, res.phi, 1e-6);
    worst = std::max(worst, pot.max_residual);
    const bool nash = IsNash(adjusted, p.C2, p.r, p.c);
    const bool unique = UniqueMinimumAt(res.phi, p.r, p.c, kEps * (1 - 1e-9));
    if (nash && pot.ok && unique) ++good;
  }
  const bool ok = !g_solved.empty() && good == static_cast<int>(g_solved.size());
  char buf[160];
  std::snprintf(buf, sizeof buf, "%d/%zu pass Nash, potential and unique-minimum checks, max residual %.2e",
                good, g_solved.size(), worst);
  return {ok, buf};
}

Outcome SolverOptimality() {
  std::mt19937_64 rng(77);
  int good = 0, total = 0;
  double worst = -1e300;
  while (total < 200) {
    const CostMatrix a1 = RandomMatrix(rng, 2, 2, -2, 2);
    const CostMatrix c2 = RandomMatrix(rng, 2, 2, -2, 2);
    const std::size_t r = rng() % 2, c = rng() % 2;
    if (!FeasibleMinimum(c2, r, c, kEps)) continue;
    const ReducedProblem q = Reduce({a1, c2, r, c, kEps});
    const double obj = SolveReduced(q).objective;
    const double oracle =
        GridOracle2x2(q.residual, r, q.fixed_offset, q.lower_bound[1 - r]);
    worst = std::max(worst, obj - oracle);
    if (obj <= oracle + 1e-6) ++good;
    ++total;
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "%d/%d at or below the grid oracle, worst excess %.2e",
                good, total, worst);
  return {good == total, buf};
}

Outcome SetOracles() {
  std::mt19937_64 rng(5150);
  int good = 0;
  for (int k = 0; k < 500; ++k) {
    // Small integer entries so ties and dominance chains are common.
    const CostMatrix a = RandomIntMatrix(rng, 6, 6, 0, 5);
    const CostMatrix b = RandomIntMatrix(rng, 6, 6, 0, 5);
    const CostMatrix c2 = RandomIntMatrix(rng, 6, 6, 0, 5);
    bool ok = PureNash(a, c2) == BruteNash(a, c2);
    for (std::size_t s = 0; s < 6; ++s) {
      ok = ok && ParetoSet(a, b, s) == BrutePareto(a, b, s) &&
           WorstCaseSet(a, b, s) == BruteWorst(a, b, s) &&
           ModerateSet(a, b, s) == BruteModerate(a, b, s);
    }
    if (ok) ++good;
  }
  return {good == 500, std::to_string(good) + "/500 games match brute force"};
}

Outcome ErrorBound() {
  std::mt19937_64 rng(606);
  int holds = 0, total = 0;
  double worst = 0.0;
  while (total < 200) {
    const CostMatrix a1 = RandomMatrix(rng, 4, 4);
    const CostMatrix b1 = RandomMatrix(rng, 4, 4);
    const CostMatrix b2 = RandomMatrix(rng, 4, 4);
    const Weights w = ExampleWeights();
    const CostMatrix c2 = Scalarize(-a1, b2, w);
    const SelectionResult sel = SelectPolicy(a1, b1, c2, w, kEps);
    if (sel.method != SelectionMethod::kAdjusted) continue;
    const ErrorBounds eb = ComputeErrorBounds(a1, b1, c2, sel.best->target, kEps);
    ++total;
    if (eb.holds()) ++holds;
    if (eb.norm_a > 0) worst = std::max(worst, eb.deviation_a / eb.norm_a);
    if (eb.norm_b > 0) worst = std::max(worst, eb.deviation_b / eb.norm_b);
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "%d/%d instances within the bound, worst ratio %.3f",
                holds, total, worst);
  return {holds == total, buf};
}

BatchResult Paired(Scenario sc) {
  RaceConfig cfg;
  cfg.scenario = sc;
  return RunBatch(cfg, 20);
}

Outcome RacingDirection() {
  const BatchResult one = Paired(Scenario::kI);
  const BatchResult two = Paired(Scenario::kII);
  const RaceStats& a = one.aggregate;
  const RaceStats& b = two.aggregate;
  const bool fewer = b.collisions < a.collisions;
  const bool laps = std::abs(b.attacker_laps - a.attacker_laps) <= 0.25 * a.attacker_laps;
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "collisions I=%d II=%d, attacker laps I=%.3f II=%.3f, feasibility II=%.3f",
                a.collisions, b.collisions, a.attacker_laps, b.attacker_laps,
                b.feasibility_rate);
  return {fewer && laps, buf};
}

std::string TraceBytes(const RaceConfig& cfg) {
  std::ostringstream os;
  io::WriteTraceCsv(os, RunRace(cfg).trace);
  return os.str();
}

Outcome Determinism() {
  RaceConfig cfg;
  int same = 0, total = 0;
  for (Scenario sc : {Scenario::kI, Scenario::kII}) {
    cfg.scenario = sc;
    for (int i = 0; i < 20; ++i) {
      cfg.seed = RaceConfig{}.seed + static_cast<std::uint64_t>(i);
      ++total;
      if (TraceBytes(cfg) == TraceBytes(cfg)) ++same;
    }
  }
  return {same == total, std::to_string(same) + "/" + std::to_string(total) +
                             " trace pairs byte-identical"};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
    double budget_s;
  };
  const Criterion criteria[] = {
      {1, "worked example pipeline", GoldenPipeline, 1},
      {2, "feasibility predicate matches solver", FeasibilityEquivalence, 30},
      {3, "adjusted games have the target equilibrium", AdjustedEquilibria, 30},
      {4, "reduced solver optimality", SolverOptimality, 10},
      {5, "set operations match brute force", SetOracles, 30},
      {6, "outcome deviation within error norm", ErrorBound, 30},
      {7, "vector-cost attacker collides less", RacingDirection, 120},
      {8, "race traces are deterministic", Determinism, 120},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs <= c.budget_s;
    const bool pass = o.pass && in_time;
    if (!pass) ++failed;
    std::printf("criterion %d %s: %s (%s; %.2fs of %.0fs)\n", c.id, c.name,
                pass ? "PASS" : "FAIL", o.detail.c_str(), secs, c.budget_s);
  }
  return failed == 0 ? 0 : 1;
}
