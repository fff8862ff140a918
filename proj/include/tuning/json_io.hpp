#pragma once

#include "tuning/absorption.hpp"
#include "tuning/model.hpp"
#include "tuning/optimizer.hpp"
#include "tuning/simulator.hpp"
#include "tuning/stationary.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <span>

// File formats. Arrays are indexed by internal state, entry k is label k + 2.
//
//   model:    {"n_internal": N, "p00": [[..]], "p01": [[to0, to1], ..], "c": [..],
//              "d0": [..], "d1": [..]}
//   strategy: {"alpha0": [..], "alpha1": [..]}

namespace tuning::io {

using nlohmann::json;

/// Throws TuningError(InvalidModel) when the document is not shaped like a
/// model (missing keys, ragged rows, non-numbers). Semantic checks are left to
/// validate_chain.
ChainSpec chain_from_json(const json& doc);
Strategy strategy_from_json(const json& doc);

json to_json(const ChainSpec& spec);
json to_json(const Strategy& strategy);
json to_json(const ValidationReport& report);
json to_json(const AbsorptionAnalysis& analysis);
json to_json(const EmbeddedChain& chain);
json to_json(const OptimalControl& control); // without the tables
json to_json(const RefutationReport& report);
json to_json(const SimulationStats& stats);

/// Throws TuningError(Io) if the file cannot be read or is not JSON.
json load_json(const std::filesystem::path& path);

/// Table with a header row and column of labels: "m0\m1,2,3,..".
void write_table_csv(std::ostream& out, const Eigen::MatrixXd& table);
/// label,b0,b1,r
void write_analysis_csv(std::ostream& out, const AbsorptionAnalysis& analysis);
/// step,state,event_kind,income_delta
void write_trajectory_csv(std::ostream& out, std::span<const TrajectoryEvent> events);

} // namespace tuning::io
