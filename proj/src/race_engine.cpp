#include "veccost/race_engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <random>
#include <thread>

#include "veccost/errors.hpp"

namespace veccost {
namespace {

// Uniform double in [0, 1) from the top 53 bits; unlike
// std::uniform_real_distribution this is identical across standard
// libraries.
double Uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

int Sign(double v) { return (v > 0.0) - (v < 0.0); }

bool SameTrajectory(const Trajectory& a, const Trajectory& b) {
  return a.states == b.states;
}

// Indices of the first occurrence of each distinct rollout. Primitives that
// saturate a speed limit produce identical rollouts; keeping both would give
// C2 duplicate columns and no target could be a strict minimum.
std::vector<std::size_t> DistinctActions(const std::vector<Trajectory>& trajs) {
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < trajs.size(); ++i) {
    bool dup = false;
    for (std::size_t k : keep) dup = dup || SameTrajectory(trajs[i], trajs[k]);
    if (!dup) keep.push_back(i);
  }
  return keep;
}

struct Player {
  VehicleState state;
  double progress = 0.0;
  double start_progress = 0.0;
  bool was_off_track = false;
};

}  // namespace

const char* ToString(Scenario s) {
  switch (s) {
    case Scenario::kI: return "I";
    case Scenario::kII: return "II";
    case Scenario::kIII: return "III";
  }
  return "?";
}

Scenario ParseScenario(const std::string& s) {
  if (s == "I") return Scenario::kI;
  if (s == "II") return Scenario::kII;
  if (s == "III") return Scenario::kIII;
  throw InputError("unknown scenario '" + s + "' (expected I, II or III)");
}

void RaceConfig::Validate() const {
  vehicle.Validate();
  track.Validate();
  if (epochs < 0) throw InputError("epochs must be nonnegative");
  if (races < 1) throw InputError("races must be at least 1");
  if (!(epsilon > 0.0)) throw InputError("epsilon must be positive");
  if (!(defender_v_max > 0.0) || !(attacker_speed_ratio > 0.0)) {
    throw InputError("speed limits must be positive");
  }
  for (Role r : {Role::kAttacker, Role::kDefender}) {
    if (!(VMaxOf(r) >= vehicle.v_min)) {
      throw InputError("player v_max must be at least vehicle v_min");
    }
    const auto& th = ConfigOf(r).theta;
    if (!std::isfinite(th.theta1) || !std::isfinite(th.theta2)) {
      throw InputError("theta must be finite");
    }
  }
  for (double pen : {costs.off_track_per_point, costs.collision_one_time}) {
    if (!(pen >= 0.0) || !std::isfinite(pen)) {
      throw InputError("penalties must be finite and nonnegative");
    }
  }
  if (!(costs.collision_radius > 0.0)) {
    throw InputError("collision_radius must be positive");
  }
  if (!(spawn.min_gap >= 0.0) || !(spawn.max_gap >= spawn.min_gap) ||
      !(spawn.max_gap < track.circumference() / 2)) {
    throw InputError("spawn gap must satisfy 0 <= min_gap <= max_gap < half a lap");
  }
  if (!(spawn.initial_speed >= 0.0)) {
    throw InputError("initial_speed must be nonnegative");
  }
}

Role RaceConfig::RoleOf(int player) const {
  const bool p1_attacks = scenario != Scenario::kIII;
  return (player == 1) == p1_attacks ? Role::kAttacker : Role::kDefender;
}

PlayerMethod RaceConfig::MethodOf(int player) const {
  return player == 1 && scenario != Scenario::kI ? PlayerMethod::kVectorCost
                                                 : PlayerMethod::kScalarized;
}

double RaceConfig::VMaxOf(Role role) const {
  if (role == Role::kDefender) return defender.v_max.value_or(defender_v_max);
  return attacker.v_max.value_or(attacker_speed_ratio *
                                 defender.v_max.value_or(defender_v_max));
}

const PlayerConfig& RaceConfig::ConfigOf(Role role) const {
  return role == Role::kAttacker ? attacker : defender;
}

VehicleParams RaceConfig::VehicleFor(int player) const {
  VehicleParams p = vehicle;
  p.v_max = VMaxOf(RoleOf(player));
  return p;
}

CostMatrices BuildCostMatrices(const std::vector<Trajectory>& trajs1,
                               const std::vector<Trajectory>& trajs2,
                               const Track& track, const CostParams& costs,
                               double start_progress1,
                               double start_progress2) {
  if (trajs1.empty() || trajs2.empty()) {
    throw DimensionError("cost matrices need at least one trajectory per player");
  }
  const std::size_t n = trajs1.size(), m = trajs2.size();
  std::vector<double> prog1(n), prog2(m);
  std::vector<int> off1(n), off2(m);
  for (std::size_t i = 0; i < n; ++i) {
    prog1[i] = TerminalProgress(trajs1[i], track, start_progress1);
    off1[i] = OffTrackCount(trajs1[i], track);
  }
  for (std::size_t j = 0; j < m; ++j) {
    prog2[j] = TerminalProgress(trajs2[j], track, start_progress2);
    off2[j] = OffTrackCount(trajs2[j], track);
  }
  CostMatrices out{CostMatrix(n, m), CostMatrix(n, m), CostMatrix(n, m),
                   CostMatrix(n, m)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const double a = prog2[j] - prog1[i];
      const double hit = DetectCollision(trajs1[i], trajs2[j],
                                         costs.collision_radius)
                             ? costs.collision_one_time
                             : 0.0;
      out.A1(i, j) = a;
      out.A2(i, j) = -a;
      out.B1(i, j) = costs.off_track_per_point * off1[i] + hit;
      out.B2(i, j) = costs.off_track_per_point * off2[j] + hit;
    }
  return out;
}

RaceResult RunRace(const RaceConfig& cfg) {
  cfg.Validate();
  RaceResult result;
  RaceStats& stats = result.stats;
  stats.seed = cfg.seed;
  if (cfg.epochs == 0) return result;

  const Track& track = cfg.track;
  const std::array<VehicleParams, 2> params = {cfg.VehicleFor(1),
                                               cfg.VehicleFor(2)};
  const std::array<ActionSet, 2> actions = {MakeActionSet(params[0]),
                                            MakeActionSet(params[1])};

  std::mt19937_64 rng(cfg.seed);
  const double attacker_arc = Uniform01(rng) * track.circumference();
  const double gap =
      cfg.spawn.min_gap + Uniform01(rng) * (cfg.spawn.max_gap - cfg.spawn.min_gap);

  std::array<Player, 2> players;
  const int attacker = cfg.RoleOf(1) == Role::kAttacker ? 0 : 1;
  const int defender = 1 - attacker;
  players[attacker].progress = attacker_arc;
  players[defender].progress = attacker_arc + gap;
  for (auto& pl : players) {
    pl.state = track.PoseAt(pl.progress, cfg.spawn.initial_speed);
    pl.start_progress = pl.progress;
  }

  const Weights theta1 = cfg.ConfigOf(cfg.RoleOf(1)).theta;
  const Weights theta2 = cfg.ConfigOf(cfg.RoleOf(2)).theta;
  const bool p1_vector = cfg.MethodOf(1) == PlayerMethod::kVectorCost;

  int last_gap_sign =
      Sign(players[attacker].progress - players[defender].progress);
  bool was_colliding = false;

  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    std::array<std::vector<Trajectory>, 2> trajs;
    for (int p = 0; p < 2; ++p) {
      trajs[p].reserve(kNumActions);
      for (const auto& u : actions[p])
        trajs[p].push_back(Rollout(players[p].state, u, params[p]));
    }
    std::array<std::vector<std::size_t>, 2> keep;
    std::array<std::vector<Trajectory>, 2> distinct;
    for (int p = 0; p < 2; ++p) {
      keep[p] = DistinctActions(trajs[p]);
      for (std::size_t k : keep[p]) distinct[p].push_back(trajs[p][k]);
    }
    const CostMatrices costs =
        BuildCostMatrices(distinct[0], distinct[1], track, cfg.costs,
                          players[0].progress, players[1].progress);

    const CostMatrix c2 = Scalarize(costs.A2, costs.B2, theta2);
    const std::size_t sigma = SecurityPolicyCol(c2).policies.front();
    std::size_t gamma = 0;
    std::string p1_method = "scalarized";
    if (p1_vector) {
      const SelectionResult sel =
          SelectPolicy(costs.A1, costs.B1, c2, theta1, cfg.epsilon);
      gamma = sel.gamma;
      ++stats.vector_epochs;
      if (sel.method == SelectionMethod::kAdjusted) {
        ++stats.adjusted_epochs;
        p1_method = "adjusted";
      } else {
        p1_method = "scalarized-fallback";
      }
    } else {
      gamma = SecurityPolicyRow(Scalarize(costs.A1, costs.B1, theta1))
                  .policies.front();
    }

    gamma = keep[0][gamma];
    const std::size_t sigma_action = keep[1][sigma];
    const std::array<const Trajectory*, 2> chosen = {&trajs[0][gamma],
                                                     &trajs[1][sigma_action]};
    for (int k = 1; k <= params[0].horizon; ++k) {
      const auto& s1 = chosen[0]->states[static_cast<std::size_t>(k)];
      const auto& s2 = chosen[1]->states[static_cast<std::size_t>(k)];
      const bool colliding =
          std::hypot(s1.x - s2.x, s1.y - s2.y) < cfg.costs.collision_radius;
      if (colliding && !was_colliding) ++stats.collisions;
      was_colliding = colliding;

      for (int p = 0; p < 2; ++p) {
        Player& pl = players[p];
        pl.state = p == 0 ? s1 : s2;
        pl.progress = Progress(pl.state, track, pl.progress);
        const bool off = !track.OnTrack(pl.state);
        if (off && !pl.was_off_track) {
          ++(p == attacker ? stats.attacker_off_track
                           : stats.defender_off_track);
        }
        pl.was_off_track = off;
        result.trace.push_back({epoch, k, p + 1, pl.state, gamma + 1,
                                sigma_action + 1, p == 0 ? p1_method : "scalarized",
                                off, colliding});
      }
      ++stats.steps;
      if (players[attacker].progress > players[defender].progress)
        ++stats.lead_steps;
    }

    const int gap_sign =
        Sign(players[attacker].progress - players[defender].progress);
    if (gap_sign != 0) {
      if (last_gap_sign != 0 && gap_sign != last_gap_sign) ++stats.passes;
      last_gap_sign = gap_sign;
    }
  }

  const double lap = track.circumference();
  stats.attacker_laps =
      (players[attacker].progress - players[attacker].start_progress) / lap;
  stats.defender_laps =
      (players[defender].progress - players[defender].start_progress) / lap;
  stats.attacker_lead_time_fraction =
      stats.steps > 0 ? static_cast<double>(stats.lead_steps) / stats.steps : 0.0;
  stats.feasibility_rate =
      stats.vector_epochs > 0
          ? static_cast<double>(stats.adjusted_epochs) / stats.vector_epochs
          : 0.0;
  return result;
}

RaceStats Aggregate(const std::vector<RaceStats>& races) {
  RaceStats agg;
  if (races.empty()) return agg;
  agg.seed = races.front().seed;
  for (const auto& r : races) {
    agg.passes += r.passes;
    agg.collisions += r.collisions;
    agg.attacker_off_track += r.attacker_off_track;
    agg.defender_off_track += r.defender_off_track;
    agg.attacker_lead_time_fraction += r.attacker_lead_time_fraction;
    agg.attacker_laps += r.attacker_laps;
    agg.defender_laps += r.defender_laps;
    agg.vector_epochs += r.vector_epochs;
    agg.adjusted_epochs += r.adjusted_epochs;
    agg.steps += r.steps;
    agg.lead_steps += r.lead_steps;
  }
  const double n = static_cast<double>(races.size());
  agg.attacker_lead_time_fraction /= n;
  agg.attacker_laps /= n;
  agg.defender_laps /= n;
  agg.feasibility_rate =
      agg.vector_epochs > 0
          ? static_cast<double>(agg.adjusted_epochs) / agg.vector_epochs
          : 0.0;
  return agg;
}

BatchResult RunBatch(const RaceConfig& cfg, int n, unsigned max_threads) {
  if (n < 1) throw InputError("batch size must be at least 1");
  cfg.Validate();
  BatchResult out;
  out.races.resize(static_cast<std::size_t>(n));

  unsigned workers = max_threads != 0 ? max_threads
                                      : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(n));

  // Each race writes only its own slot, so the schedule cannot change the
  // result.
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
  auto work = [&] {
    for (int i = next++; i < n; i = next++) {
      RaceConfig c = cfg;
      c.seed = cfg.seed + static_cast<std::uint64_t>(i);
      try {
        out.races[static_cast<std::size_t>(i)] = RunRace(c).stats;
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  out.aggregate = Aggregate(out.races);
  return out;
}

}  // namespace veccost
