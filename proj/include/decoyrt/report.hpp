#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "decoyrt/attacker.hpp"
#include "decoyrt/edo.hpp"
#include "decoyrt/instance.hpp"

namespace decoyrt {

/// "s1@1 -> Gr1@2 -> ..." with arrival times.
std::string format_path(const Instance& instance, const TemporalPath& path);

/// Comma-separated node names; every name must be blockable.
NodeSet parse_placement(const Instance& instance, std::string_view names);

std::string format_attack(const Instance& instance, const NodeSet& cut, const AttackReport& attack,
                          const FitnessReport& fitness);

nlohmann::json config_to_json(const OptimizerConfig& config);
/// Overlays the keys present in `doc` on `base`. Unknown keys throw.
OptimizerConfig config_from_json(const nlohmann::json& doc, OptimizerConfig base = {});

/// Deterministic result document: no wallclock values.
nlohmann::json result_to_json(const Instance& instance, const RunResult& result,
                              const OptimizerConfig& config);
std::string history_csv(const RunResult& result);

}  // namespace decoyrt
