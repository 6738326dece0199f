#include <sstream>

#include "doctest.h"
#include "veccost/errors.hpp"
#include "veccost/io.hpp"

using namespace veccost;
using io::json;

TEST_CASE("parse game") {
  const json j = json::parse(R"({"A1": [[0,1],[2,3]], "B1": [[1,1],[1,1]],
                                 "theta": [2, 1]})");
  const VectorGame g = io::ParseGame(j);
  CHECK(g.A2 == -g.A1);
  CHECK(g.B2 == g.B1);
  CHECK(g.weights.theta1 == 2.0);

  json explicit_b2 = j;
  explicit_b2["B2"] = {{0, 0}, {0, 5}};
  CHECK(io::ParseGame(explicit_b2).B2(1, 1) == 5.0);
}

TEST_CASE("parse game rejects bad input") {
  auto err = [](const char* text) -> std::string {
    try {
      io::ParseGame(json::parse(text));
    } catch (const InputError& e) {
      return e.what();
    }
    return "";
  };
  const std::string ragged =
      err(R"({"A1": [[0,1],[2]], "B1": [[0,0],[0,0]], "theta": [1,0]})");
  CHECK(ragged.find("row 2") != std::string::npos);
  CHECK(!err(R"({"A1": [[0]], "theta": [1,0]})").empty());
  CHECK(!err(R"({"A1": [[0]], "B1": [[0]], "theta": [1,0], "X": 1})").empty());
  CHECK(!err(R"({"A1": [[0]], "B1": [[0]], "theta": [1]})").empty());
  CHECK(!err(R"({"A1": [["a"]], "B1": [[0]], "theta": [1,0]})").empty());
  CHECK(!err(R"({"A1": [[0]], "B1": [[0]], "A2": [[1]], "theta": [1,0]})").empty());
  CHECK(!err(R"({"A1": [[0,1]], "B1": [[0]], "theta": [1,0]})").empty());
}

TEST_CASE("adjustment report") {
  const VectorGame g = io::ParseGame(json::parse(
      R"({"A1": [[0,1,2],[-1,0,1],[-2,-1,0]], "B1": [[0,1,2],[1,2,3],[2,3,4]],
          "theta": [2,1]})"));
  const AdjustmentProblem p{g.A1, g.C2(), 1, 2, 1e-6};
  const json ok = io::AdjustmentReport(p, AdjustCosts(p));
  CHECK(ok["status"] == "solved");
  CHECK(ok["r"] == 2);
  CHECK(ok["c"] == 3);
  CHECK(ok["frob_norm_sq"].get<double>() == doctest::Approx(1.5).epsilon(1e-5));
  CHECK(ok["residuals"]["nash_ok"] == true);

  const AdjustmentProblem q{g.A1, g.C2(), 0, 0, 1e-6};
  const json bad = io::AdjustmentReport(q, AdjustCosts(q));
  CHECK(bad["status"] == "infeasible");
  CHECK(bad["E"].is_null());
  CHECK(bad["violating_columns"] == json({2, 3}));
}

TEST_CASE("race config parsing") {
  const RaceConfig d = io::ParseRaceConfig(json::object());
  CHECK(d.epochs == RaceConfig{}.epochs);
  CHECK(d.vehicle.steer_mag == RaceConfig{}.vehicle.steer_mag);

  const RaceConfig c = io::ParseRaceConfig(json::parse(
      R"({"scenario": "III", "epochs": 3, "seed": 42,
          "attacker": {"theta": [3, 1], "v_max": 12},
          "vehicle": {"horizon": 5}, "track": {"radius": 30}})"));
  CHECK(c.scenario == Scenario::kIII);
  CHECK(c.epochs == 3);
  CHECK(c.seed == 42);
  CHECK(c.attacker.theta.theta1 == 3.0);
  CHECK(c.VMaxOf(Role::kAttacker) == 12.0);
  CHECK(c.vehicle.horizon == 5);
  CHECK(c.track.radius == 30.0);

  CHECK_THROWS_AS(io::ParseRaceConfig(json::parse(R"({"foo": 1})")), InputError);
  CHECK_THROWS_AS(io::ParseRaceConfig(json::parse(R"({"vehicle": {"mass": 1}})")),
                  InputError);
  CHECK_THROWS_AS(io::ParseRaceConfig(json::parse(R"({"epochs": 1.5})")), InputError);
  CHECK_THROWS_AS(io::ParseRaceConfig(json::parse(R"({"seed": -1})")), InputError);
  CHECK_THROWS_AS(io::ParseRaceConfig(json::parse(R"({"scenario": "V"})")),
                  InputError);
}

TEST_CASE("csv writers") {
  std::ostringstream empty;
  io::WriteTraceCsv(empty, {});
  CHECK(empty.str() ==
        "epoch,step,player,x,y,v,psi,beta,chosen_gamma,chosen_sigma,method,"
        "off_track,collided\n");

  TraceRecord t{2, 3, 1, {1.5, -0.25, 3, 0, 0}, 4, 9, "adjusted", true, false};
  std::ostringstream one;
  io::WriteTraceCsv(one, {t});
  CHECK(one.str().substr(empty.str().size()) ==
        "2,3,1,1.5,-0.25,3,0,0,4,9,adjusted,1,0\n");

  CHECK(io::FormatNumber(0.1) == "0.1");
  CHECK(io::FormatNumber(-0.0) == "0");
  CHECK(io::FormatNumber(1.0 / 3.0) == "0.3333333333");
}
