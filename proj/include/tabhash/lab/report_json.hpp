#pragma once

// JSON forms of lab configurations and reports. Config parsers are strict:
// unknown fields and wrongly typed values raise ConfigError. Every report
// echoes its full resolved configuration.

#include <nlohmann/json.hpp>

#include "tabhash/lab/bias.hpp"
#include "tabhash/lab/concentration.hpp"
#include "tabhash/lab/groups.hpp"
#include "tabhash/lab/independence.hpp"

namespace tabhash::lab {

nlohmann::json to_json(const Interval& iv);

nlohmann::json to_json(const BiasExperimentConfig& config);
BiasExperimentConfig bias_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const BiasReport& report);

nlohmann::json to_json(const SweepConfig& config);
SweepConfig sweep_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const GroupStatsReport& report);
nlohmann::json to_json(const OccupancyReport& report);
nlohmann::json to_json(const GroupSweep& sweep);
nlohmann::json to_json(const OccupancySweep& sweep);

nlohmann::json to_json(const ConcentrationConfig& config);
ConcentrationConfig concentration_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ConcentrationReport& report);

nlohmann::json to_json(const IndependenceReport& report);

}  // namespace tabhash::lab
