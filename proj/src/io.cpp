#include "veccost/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <set>

#include "veccost/errors.hpp"

namespace veccost::io {
namespace {

json ReadJsonFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

double Number(const json& j, const std::string& name) {
  if (!j.is_number()) throw InputError(name + " must be a number");
  return j.get<double>();
}

void RejectUnknown(const json& j, const std::string& where,
                   const std::set<std::string>& allowed) {
  if (!j.is_object()) throw InputError(where + " must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (!allowed.contains(key)) {
      throw InputError("unknown key '" + key + "' in " + where);
    }
  }
}

Weights ParseWeights(const json& j, const std::string& name) {
  if (!j.is_array() || j.size() != 2) {
    throw InputError(name + " must be an array [theta1, theta2]");
  }
  return {Number(j[0], name + "[0]"), Number(j[1], name + "[1]")};
}

template <typename T>
void Assign(const json& obj, const char* key, T& out, const std::string& where) {
  if (!obj.contains(key)) return;
  const json& v = obj.at(key);
  if constexpr (std::is_same_v<T, int>) {
    if (!v.is_number_integer()) throw InputError(where + "." + key + " must be an integer");
    out = v.get<int>();
  } else if constexpr (std::is_same_v<T, std::uint64_t>) {
    if (!v.is_number_unsigned()) {
      throw InputError(where + "." + key + " must be a nonnegative integer");
    }
    out = v.get<std::uint64_t>();
  } else {
    out = Number(v, where + "." + key);
  }
}

PlayerConfig ParsePlayer(const json& j, const std::string& where) {
  RejectUnknown(j, where, {"theta", "v_max"});
  PlayerConfig p;
  if (j.contains("theta")) p.theta = ParseWeights(j.at("theta"), where + ".theta");
  if (j.contains("v_max")) p.v_max = Number(j.at("v_max"), where + ".v_max");
  return p;
}

}  // namespace

std::string FormatNumber(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v == 0.0 ? 0.0 : v);
  return buf;
}

CostMatrix ParseMatrix(const json& j, const std::string& name) {
  if (!j.is_array() || j.empty()) {
    throw InputError(name + " must be a non-empty 2-D array");
  }
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const json& row = j[i];
    const std::string where = name + " row " + std::to_string(i + 1);
    if (!row.is_array()) throw InputError(where + " is not an array");
    if (i > 0 && row.size() != j[0].size()) {
      throw InputError(where + " has " + std::to_string(row.size()) +
                       " entries, expected " + std::to_string(j[0].size()) +
                       " (ragged array)");
    }
    std::vector<double> vals;
    for (std::size_t k = 0; k < row.size(); ++k)
      vals.push_back(Number(row[k], where + " entry " + std::to_string(k + 1)));
    rows.push_back(std::move(vals));
  }
  try {
    return CostMatrix::FromRows(rows);
  } catch (const DimensionError& e) {
    throw InputError(name + ": " + e.what());
  } catch (const InputError& e) {
    throw InputError(name + ": " + e.what());
  }
}

VectorGame ParseGame(const json& j) {
  RejectUnknown(j, "game", {"A1", "B1", "A2", "B2", "theta"});
  for (const char* key : {"A1", "B1", "theta"}) {
    if (!j.contains(key)) throw InputError(std::string("game is missing key ") + key);
  }
  VectorGame g = VectorGame::WithDefaults(ParseMatrix(j.at("A1"), "A1"),
                                          ParseMatrix(j.at("B1"), "B1"),
                                          ParseWeights(j.at("theta"), "theta"));
  if (j.contains("A2")) g.A2 = ParseMatrix(j.at("A2"), "A2");
  if (j.contains("B2")) g.B2 = ParseMatrix(j.at("B2"), "B2");
  try {
    g.Validate();
  } catch (const DimensionError& e) {
    throw InputError(e.what());
  }
  return g;
}

VectorGame LoadGame(const std::filesystem::path& path) {
  return ParseGame(ReadJsonFile(path));
}

json ToJson(const CostMatrix& m) { return m.ToRows(); }

std::vector<std::size_t> ToOneBased(std::vector<std::size_t> idx) {
  for (auto& i : idx) ++i;
  return idx;
}

json AdjustmentReport(const AdjustmentProblem& p, const AdjustmentResult& r) {
  json out;
  out["status"] = r.solved() ? "solved" : "infeasible";
  out["r"] = p.r + 1;
  out["c"] = p.c + 1;
  out["epsilon"] = p.epsilon;
  if (!r.solved()) {
    out["E"] = nullptr;
    out["phi"] = nullptr;
    out["frob_norm_sq"] = nullptr;
    out["violating_columns"] = ToOneBased(r.violating_columns);
    out["residuals"] = nullptr;
    return out;
  }
  const auto d = Diagnose(p, r);
  out["E"] = ToJson(r.E);
  out["phi"] = ToJson(r.phi);
  out["frob_norm_sq"] = r.frob_norm_sq;
  out["residuals"] = {{"potential_residual", d.potential_residual},
                      {"potential_ok", d.potential_ok},
                      {"min_location_ok", d.min_location_ok},
                      {"nash_ok", d.nash_ok},
                      {"security_ok", d.security_ok}};
  return out;
}

RaceConfig ParseRaceConfig(const json& j) {
  RejectUnknown(j, "config",
                {"scenario", "attacker", "defender", "defender_v_max",
                 "attacker_speed_ratio", "penalties", "collision_radius",
                 "epochs", "seed", "races", "epsilon", "vehicle", "track",
                 "spawn"});
  RaceConfig c;
  if (j.contains("scenario")) {
    if (!j.at("scenario").is_string()) throw InputError("scenario must be a string");
    c.scenario = ParseScenario(j.at("scenario").get<std::string>());
  }
  if (j.contains("attacker")) c.attacker = ParsePlayer(j.at("attacker"), "attacker");
  if (j.contains("defender")) c.defender = ParsePlayer(j.at("defender"), "defender");
  Assign(j, "defender_v_max", c.defender_v_max, "config");
  Assign(j, "attacker_speed_ratio", c.attacker_speed_ratio, "config");
  Assign(j, "collision_radius", c.costs.collision_radius, "config");
  Assign(j, "epochs", c.epochs, "config");
  Assign(j, "seed", c.seed, "config");
  Assign(j, "races", c.races, "config");
  Assign(j, "epsilon", c.epsilon, "config");
  if (j.contains("penalties")) {
    const json& p = j.at("penalties");
    RejectUnknown(p, "penalties", {"off_track_per_point", "collision_one_time"});
    Assign(p, "off_track_per_point", c.costs.off_track_per_point, "penalties");
    Assign(p, "collision_one_time", c.costs.collision_one_time, "penalties");
  }
  if (j.contains("vehicle")) {
    const json& v = j.at("vehicle");
    RejectUnknown(v, "vehicle",
                  {"l_r", "l_f", "dt", "v_min", "accel_mag", "steer_mag", "horizon"});
    Assign(v, "l_r", c.vehicle.l_r, "vehicle");
    Assign(v, "l_f", c.vehicle.l_f, "vehicle");
    Assign(v, "dt", c.vehicle.dt, "vehicle");
    Assign(v, "v_min", c.vehicle.v_min, "vehicle");
    Assign(v, "accel_mag", c.vehicle.accel_mag, "vehicle");
    Assign(v, "steer_mag", c.vehicle.steer_mag, "vehicle");
    Assign(v, "horizon", c.vehicle.horizon, "vehicle");
  }
  if (j.contains("track")) {
    const json& t = j.at("track");
    RejectUnknown(t, "track", {"radius", "half_width"});
    Assign(t, "radius", c.track.radius, "track");
    Assign(t, "half_width", c.track.half_width, "track");
  }
  if (j.contains("spawn")) {
    const json& s = j.at("spawn");
    RejectUnknown(s, "spawn", {"min_gap", "max_gap", "initial_speed"});
    Assign(s, "min_gap", c.spawn.min_gap, "spawn");
    Assign(s, "max_gap", c.spawn.max_gap, "spawn");
    Assign(s, "initial_speed", c.spawn.initial_speed, "spawn");
  }
  c.Validate();
  return c;
}

RaceConfig LoadRaceConfig(const std::filesystem::path& path) {
  try {
    return ParseRaceConfig(ReadJsonFile(path));
  } catch (const json::exception& e) {
    throw InputError(e.what());
  }
}

json StatsToJson(const RaceStats& s) {
  return {{"seed", s.seed},
          {"passes", s.passes},
          {"collisions", s.collisions},
          {"attacker_off_track", s.attacker_off_track},
          {"defender_off_track", s.defender_off_track},
          {"attacker_lead_time_fraction", s.attacker_lead_time_fraction},
          {"attacker_laps", s.attacker_laps},
          {"defender_laps", s.defender_laps},
          {"feasibility_rate", s.feasibility_rate},
          {"vector_epochs", s.vector_epochs},
          {"adjusted_epochs", s.adjusted_epochs}};
}

void WriteTraceCsv(std::ostream& os, const std::vector<TraceRecord>& trace) {
  os << "epoch,step,player,x,y,v,psi,beta,chosen_gamma,chosen_sigma,method,"
        "off_track,collided\n";
  for (const auto& r : trace) {
    os << r.epoch << ',' << r.step << ',' << r.player << ','
       << FormatNumber(r.state.x) << ',' << FormatNumber(r.state.y) << ','
       << FormatNumber(r.state.v) << ',' << FormatNumber(r.state.psi) << ','
       << FormatNumber(r.state.beta) << ',' << r.chosen_gamma << ','
       << r.chosen_sigma << ',' << r.method << ',' << (r.off_track ? 1 : 0)
       << ',' << (r.collided ? 1 : 0) << '\n';
  }
}

void WriteBatchCsv(std::ostream& os, const BatchResult& batch) {
  os << "race,seed,passes,collisions,attacker_off_track,defender_off_track,"
        "attacker_lead_time_fraction,attacker_laps,defender_laps,"
        "feasibility_rate\n";
  auto row = [&os](const std::string& label, const std::string& seed,
                   const RaceStats& s) {
    os << label << ',' << seed << ',' << s.passes << ',' << s.collisions << ','
       << s.attacker_off_track << ',' << s.defender_off_track << ','
       << FormatNumber(s.attacker_lead_time_fraction) << ','
       << FormatNumber(s.attacker_laps) << ',' << FormatNumber(s.defender_laps)
       << ',' << FormatNumber(s.feasibility_rate) << '\n';
  };
  for (std::size_t i = 0; i < batch.races.size(); ++i)
    row(std::to_string(i + 1), std::to_string(batch.races[i].seed), batch.races[i]);
  row("aggregate", "", batch.aggregate);
}

}  // namespace veccost::io
