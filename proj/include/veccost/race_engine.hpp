#pragma once

// Closed-loop two-vehicle race on a ring track. Each decision epoch both
// players roll out the nine motion primitives, build competitive (A) and
// safety (B) cost matrices, pick an action pair, and execute it for one
// horizon. Player 1 is the row player; player 2 always plays the security
// policy of its scalarized costs.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "veccost/cost_adjustment.hpp"
#include "veccost/game_core.hpp"
#include "veccost/track.hpp"
#include "veccost/vehicle_dynamics.hpp"

namespace veccost {

// I: both scalarized, player 1 attacks. II: player 1 vector-cost attacker.
// III: player 1 vector-cost defender.
enum class Scenario { kI, kII, kIII };
enum class Role { kAttacker, kDefender };
enum class PlayerMethod { kScalarized, kVectorCost };

const char* ToString(Scenario s);
Scenario ParseScenario(const std::string& s);  // "I", "II", "III"

struct CostParams {
  double off_track_per_point = 2.0;
  double collision_one_time = 3.0;
  double collision_radius = 2.0;
};

struct SpawnParams {
  double min_gap = 2.0;  // m of arc, defender ahead of attacker
  double max_gap = 10.0;
  double initial_speed = 1.0;
};

struct PlayerConfig {
  Weights theta{2.0, 1.0};
  std::optional<double> v_max;  // unset: derived from defender_v_max
};

struct RaceConfig {
  Scenario scenario = Scenario::kI;
  PlayerConfig attacker;
  PlayerConfig defender;
  double defender_v_max = 6.0;
  double attacker_speed_ratio = 1.5;
  CostParams costs;
  int epochs = 25;
  std::uint64_t seed = 1;
  int races = 20;  // run_batch default
  double epsilon = kDefaultEpsilon;
  VehicleParams vehicle{.steer_mag = 1.4};
  Track track;
  SpawnParams spawn;

  // Throws InputError.
  void Validate() const;

  Role RoleOf(int player) const;           // player in {1, 2}
  PlayerMethod MethodOf(int player) const;
  double VMaxOf(Role role) const;
  const PlayerConfig& ConfigOf(Role role) const;
  VehicleParams VehicleFor(int player) const;
};

struct CostMatrices {
  CostMatrix A1, B1, A2, B2;
};

// A1(g, s) = progress(trajs2[s]) - progress(trajs1[g]); A2 = -A1.
// B_i = off-track points of player i's own trajectory times the per-point
// penalty, plus the one-time collision cost when the pair collides.
CostMatrices BuildCostMatrices(const std::vector<Trajectory>& trajs1,
                               const std::vector<Trajectory>& trajs2,
                               const Track& track, const CostParams& costs,
                               double start_progress1, double start_progress2);

struct TraceRecord {
  int epoch = 0;  // 1-based
  int step = 0;   // 1..horizon within the epoch
  int player = 0; // 1 or 2
  VehicleState state;
  std::size_t chosen_gamma = 0;  // 1-based
  std::size_t chosen_sigma = 0;  // 1-based
  std::string method;            // scalarized | adjusted | scalarized-fallback
  bool off_track = false;
  bool collided = false;
};

struct RaceStats {
  std::uint64_t seed = 0;
  int passes = 0;
  int collisions = 0;
  int attacker_off_track = 0;
  int defender_off_track = 0;
  double attacker_lead_time_fraction = 0.0;
  double attacker_laps = 0.0;
  double defender_laps = 0.0;
  double feasibility_rate = 0.0;
  // Denominators kept so batches aggregate exactly.
  int vector_epochs = 0;
  int adjusted_epochs = 0;
  int steps = 0;
  int lead_steps = 0;
};

struct RaceResult {
  std::vector<TraceRecord> trace;
  RaceStats stats;
};

RaceResult RunRace(const RaceConfig& cfg);

struct BatchResult {
  std::vector<RaceStats> races;
  RaceStats aggregate;  // counts summed, fractions and laps averaged
};

// Races seeds cfg.seed, cfg.seed + 1, ... n - 1. Uses up to max_threads
// workers (0 = hardware concurrency); results do not depend on scheduling.
BatchResult RunBatch(const RaceConfig& cfg, int n, unsigned max_threads = 0);

RaceStats Aggregate(const std::vector<RaceStats>& races);

}  // namespace veccost
