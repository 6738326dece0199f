// veccost: command-line front end for vector-cost bimatrix games and the
// racing experiments.
//
// Exit codes: 0 success, 2 input error, 3 infeasible target, 4 solver did not
// converge. All action indices on the command line and in outputs are
// 1-based.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "veccost/cost_adjustment.hpp"
#include "veccost/errors.hpp"
#include "veccost/game_core.hpp"
#include "veccost/io.hpp"
#include "veccost/race_engine.hpp"

namespace fs = std::filesystem;
using namespace veccost;
using io::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitConvergence = 4;

struct Options {
  std::string game;
  std::optional<std::size_t> sigma;
  std::size_t r = 0;
  std::size_t c = 0;
  double epsilon = kDefaultEpsilon;
  std::string config;
  std::string out;
  std::optional<std::string> scenario;
  std::optional<int> races;
  std::optional<std::uint64_t> seed;
};

std::size_t ZeroBased(std::size_t one_based, std::size_t limit,
                      const char* flag) {
  if (one_based < 1 || one_based > limit) {
    throw InputError(std::string(flag) + " must be in 1.." +
                     std::to_string(limit));
  }
  return one_based - 1;
}

void RequireEpsilon(double eps) {
  if (!(eps > 0.0)) throw InputError("--epsilon must be positive");
}

int CmdSolve(const Options& o) {
  const VectorGame g = io::LoadGame(o.game);
  const CostMatrix c1 = g.C1(), c2 = g.C2();
  const auto sec1 = SecurityPolicyRow(c1);
  const auto sec2 = SecurityPolicyCol(c2);
  json out;
  out["C1"] = io::ToJson(c1);
  out["C2"] = io::ToJson(c2);
  out["security"] = {{"gamma", io::ToOneBased(sec1.policies)},
                     {"gamma_value", sec1.value},
                     {"sigma", io::ToOneBased(sec2.policies)},
                     {"sigma_value", sec2.value}};
  out["security_pair"] = {sec1.policies.front() + 1, sec2.policies.front() + 1};
  json nash = json::array();
  for (const auto& p : PureNash(c1, c2)) nash.push_back({p.gamma + 1, p.sigma + 1});
  out["pure_nash"] = nash;
  if (o.sigma) {
    const std::size_t s = ZeroBased(*o.sigma, g.A1.cols(), "--sigma");
    out["sets"] = {{"sigma", *o.sigma},
                   {"pareto", io::ToOneBased(ParetoSet(g.A1, g.B1, s))},
                   {"worst_case", io::ToOneBased(WorstCaseSet(g.A1, g.B1, s))},
                   {"moderate", io::ToOneBased(ModerateSet(g.A1, g.B1, s))}};
  }
  std::cout << out.dump(2) << '\n';
  return kExitOk;
}

int CmdAdjust(const Options& o) {
  RequireEpsilon(o.epsilon);
  const VectorGame g = io::LoadGame(o.game);
  const AdjustmentProblem p{g.A1, g.C2(), ZeroBased(o.r, g.A1.rows(), "--r"),
                            ZeroBased(o.c, g.A1.cols(), "--c"), o.epsilon};
  const AdjustmentResult res = AdjustCosts(p);
  std::cout << io::AdjustmentReport(p, res).dump(2) << '\n';
  return res.solved() ? kExitOk : kExitInfeasible;
}

int CmdFeasible(const Options& o) {
  RequireEpsilon(o.epsilon);
  const VectorGame g = io::LoadGame(o.game);
  const CostMatrix c2 = g.C2();
  const std::size_t r = ZeroBased(o.r, c2.rows(), "--r");
  const std::size_t c = ZeroBased(o.c, c2.cols(), "--c");
  const auto bad = ViolatingColumns(c2, r, c, o.epsilon);
  json out = {{"r", o.r},
              {"c", o.c},
              {"epsilon", o.epsilon},
              {"feasible", bad.empty()},
              {"violating_columns", io::ToOneBased(bad)}};
  std::cout << out.dump(2) << '\n';
  return kExitOk;
}

RaceConfig LoadConfig(const Options& o) {
  json j = json::object();
  if (!o.config.empty()) {
    std::ifstream in(o.config);
    if (!in) throw InputError("cannot open " + o.config);
    try {
      j = json::parse(in);
    } catch (const json::parse_error& e) {
      throw InputError(o.config + ": " + e.what());
    }
  }
  if (o.scenario) j["scenario"] = *o.scenario;
  if (o.races) j["races"] = *o.races;
  if (o.seed) j["seed"] = *o.seed;
  return io::ParseRaceConfig(j);
}

std::string Summary(const RaceConfig& cfg, int races, const RaceStats& s) {
  return "scenario=" + std::string(ToString(cfg.scenario)) +
         " races=" + std::to_string(races) + " seed=" + std::to_string(cfg.seed) +
         " passes=" + std::to_string(s.passes) +
         " collisions=" + std::to_string(s.collisions) +
         " attacker_off_track=" + std::to_string(s.attacker_off_track) +
         " defender_off_track=" + std::to_string(s.defender_off_track) +
         " attacker_lead_time=" + io::FormatNumber(s.attacker_lead_time_fraction) +
         " attacker_laps=" + io::FormatNumber(s.attacker_laps) +
         " defender_laps=" + io::FormatNumber(s.defender_laps) +
         " feasibility_rate=" + io::FormatNumber(s.feasibility_rate);
}

// Writes every output through `write`; removes the files on failure.
template <typename Fn>
void WriteOutputs(const std::vector<fs::path>& files, Fn&& write) {
  try {
    write();
  } catch (...) {
    for (const auto& f : files) {
      std::error_code ec;
      fs::remove(f, ec);
    }
    throw;
  }
}

void WriteFile(const fs::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << body;
  if (!out) throw InputError("failed writing " + path.string());
}

int CmdRace(const Options& o) {
  const RaceConfig cfg = LoadConfig(o);
  const RaceResult res = RunRace(cfg);
  const fs::path dir(o.out);
  fs::create_directories(dir);
  const fs::path trace = dir / "trace.csv", stats = dir / "stats.json";
  WriteOutputs({trace, stats}, [&] {
    std::ostringstream csv;
    io::WriteTraceCsv(csv, res.trace);
    WriteFile(trace, csv.str());
    WriteFile(stats, io::StatsToJson(res.stats).dump(2) + "\n");
  });
  std::cout << Summary(cfg, 1, res.stats) << '\n';
  return kExitOk;
}

unsigned ThreadCap() {
  const char* env = std::getenv("VECCOST_THREADS");
  if (env == nullptr || *env == '\0') return 0;
  try {
    const long v = std::stol(env);
    return v > 0 ? static_cast<unsigned>(v) : 1u;
  } catch (const std::exception&) {
    throw InputError("VECCOST_THREADS must be a positive integer");
  }
}

int CmdBatch(const Options& o) {
  const RaceConfig cfg = LoadConfig(o);
  const BatchResult res = RunBatch(cfg, cfg.races, ThreadCap());
  const fs::path dir(o.out);
  fs::create_directories(dir);
  const fs::path table = dir / "batch.csv", agg = dir / "aggregate.json";
  WriteOutputs({table, agg}, [&] {
    std::ostringstream csv;
    io::WriteBatchCsv(csv, res);
    WriteFile(table, csv.str());
    WriteFile(agg, io::StatsToJson(res.aggregate).dump(2) + "\n");
  });
  std::cout << Summary(cfg, cfg.races, res.aggregate) << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Vector-cost bimatrix games and racing experiments"};
  app.require_subcommand(1);
  Options o;

  auto* solve = app.add_subcommand("solve", "Security, Nash and Pareto sets of a game file");
  solve->add_option("--game", o.game, "Game JSON file")->required();
  solve->add_option("--sigma", o.sigma, "Player 2 action (1-based) for the Pareto/worst/moderate sets");

  auto* adjust = app.add_subcommand("adjust", "Minimal cost adjustment for a target potential minimum");
  auto* feasible = app.add_subcommand("feasible", "Check whether a target minimum is realisable");
  for (auto* sub : {adjust, feasible}) {
    sub->add_option("--game", o.game, "Game JSON file")->required();
    sub->add_option("--r", o.r, "Target row (1-based)")->required();
    sub->add_option("--c", o.c, "Target column (1-based)")->required();
    sub->add_option("--epsilon", o.epsilon, "Strict-minimum margin");
  }

  auto* race = app.add_subcommand("race", "Run one race and write trace.csv and stats.json");
  auto* batch = app.add_subcommand("batch", "Run seeded races and write batch.csv and aggregate.json");
  for (auto* sub : {race, batch}) {
    sub->add_option("--config", o.config, "Race config JSON (all fields optional)");
    sub->add_option("--out", o.out, "Output directory")->required();
    sub->add_option("--scenario", o.scenario, "I, II or III");
    sub->add_option("--seed", o.seed, "Base RNG seed");
  }
  batch->add_option("--races", o.races, "Number of races");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*solve) return CmdSolve(o);
    if (*adjust) return CmdAdjust(o);
    if (*feasible) return CmdFeasible(o);
    if (*race) return CmdRace(o);
    if (*batch) return CmdBatch(o);
  } catch (const ConvergenceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConvergence;
  } catch (const InfeasibleError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
