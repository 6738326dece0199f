#pragma once

// File formats. All action indices written or read here are 1-based.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "veccost/cost_adjustment.hpp"
#include "veccost/game_core.hpp"
#include "veccost/race_engine.hpp"

namespace veccost::io {

using nlohmann::json;

// {"A1": [[..]], "B1": [[..]], "A2"?: .., "B2"?: .., "theta": [t1, t2]}
// A2 defaults to -A1 and B2 to B1. Throws InputError / DimensionError.
VectorGame ParseGame(const json& j);
VectorGame LoadGame(const std::filesystem::path& path);

CostMatrix ParseMatrix(const json& j, const std::string& name);
json ToJson(const CostMatrix& m);
std::vector<std::size_t> ToOneBased(std::vector<std::size_t> idx);

json AdjustmentReport(const AdjustmentProblem& p, const AdjustmentResult& r);

// Every field is optional; unknown keys are rejected.
RaceConfig ParseRaceConfig(const json& j);
RaceConfig LoadRaceConfig(const std::filesystem::path& path);

json StatsToJson(const RaceStats& s);

void WriteTraceCsv(std::ostream& os, const std::vector<TraceRecord>& trace);
void WriteBatchCsv(std::ostream& os, const BatchResult& batch);

// Fixed "%.10g" formatting so output is byte-stable.
std::string FormatNumber(double v);

}  // namespace veccost::io
