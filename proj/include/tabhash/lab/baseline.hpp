#pragma once

// Calibrated constants for the lab's reference experiments.
//
//   {"format": "tabhash-baseline", "version": 1, "slack": 2.0,
//    "entries": {"<fingerprint hex>": {"name": "...", "config": {...},
//                "calibration_seed": 1, "constants": {"C": 0.13, ...}}}}
//
// The fingerprint is FNV-1a 64 over the canonical dump (sorted keys, no
// whitespace) of the experiment config without its seed, so recalibrating with
// another seed replaces the entry instead of adding one.

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tabhash/lab/bias.hpp"
#include "tabhash/lab/concentration.hpp"
#include "tabhash/lab/groups.hpp"

namespace tabhash::lab {

std::uint64_t fnv1a64(std::string_view bytes) noexcept;
std::uint64_t config_fingerprint(const nlohmann::json& config);

struct BaselineEntry {
  std::string name;
  nlohmann::json config;
  std::uint64_t calibration_seed = 0;
  std::map<std::string, double> constants;
};

struct Baseline {
  double slack = 2.0;
  std::map<std::string, BaselineEntry> entries;  // by fingerprint hex

  void put(BaselineEntry entry);
  // Throws ConfigError when the config has no recorded entry.
  const BaselineEntry& at(const nlohmann::json& config) const;
  double constant(const nlohmann::json& config, const std::string& name) const;
};

nlohmann::json to_json(const Baseline& baseline);
Baseline baseline_from_json(const nlohmann::json& j);
Baseline read_baseline(const std::string& path);
void write_baseline(const std::string& path, const Baseline& baseline);

struct RegressionCheck {
  std::string name;
  bool pass = false;
  double observed = 0;
  double bound = 0;
  std::string detail;
};

// A reference experiment: its seedless config, how to fit its constants from
// one run, and how to check a fresh run against recorded constants (scaled by
// the baseline slack).
struct ReferenceExperiment {
  std::string name;
  nlohmann::json config;
  std::function<std::map<std::string, double>(std::uint64_t seed, unsigned threads)> fit;
  std::function<RegressionCheck(const std::map<std::string, double>& constants, double slack,
                                std::uint64_t seed, unsigned threads)>
      check;
};

// minwise-kappa     twisted, u = 2^16, n = 8, fixed-tail cube, 10^6 trials:
//                   kappa = max |implied-bias CI end| / (log2(u)^2 / sigma).
// group-size        n = 2^12, sigma = 256, 10^3 seeds:
//                   C = max over seeds of max group / (1 + n / sigma^(1/2)).
// bin-occupancy     simple, n = 2^8 into m = 2^16 bins, 10^3 seeds:
//                   d = max load over seeds (lemma_d recorded alongside).
// concentration     twisted, sigma = 2^16, n = 2^10, mu = 16, delta = 1,
//                   10^5 trials: slack = Wilson upper end of Pr[V >= 2 mu]
//                   over the binomial tail.
// flatness          twisted, u = 2^16, fixed-tail cube, n in {4, 16, 64, 256},
//                   10^6 trials: slack = max(0, spread - sum of the two
//                   extreme cells' CI half-widths).
const std::vector<ReferenceExperiment>& reference_experiments();
const ReferenceExperiment& reference_experiment(const std::string& name);

Baseline calibrate_all(std::uint64_t seed, unsigned threads = 1);
RegressionCheck check_reference(const ReferenceExperiment& ref, const Baseline& baseline,
                                std::uint64_t seed, unsigned threads = 1);

// Spread of the implied-bias point estimates across cells and the sum of the
// CI half-widths of the largest and smallest cell.
struct Flatness {
  double spread = 0;
  double half_width_sum = 0;
  std::size_t argmin = 0;
  std::size_t argmax = 0;
};
Flatness flatness_of(const std::vector<BiasReport>& cells);

// Reference configurations at a given seed.
BiasExperimentConfig minwise_reference(std::uint64_t seed);
SweepConfig group_reference(std::uint64_t seed);
SweepConfig occupancy_reference(std::uint64_t seed);
ConcentrationConfig concentration_reference(std::uint64_t seed);
std::vector<BiasExperimentConfig> flatness_reference(std::uint64_t seed);

std::vector<BiasReport> run_cells(const std::vector<BiasExperimentConfig>& cells, unsigned threads = 1);

}  // namespace tabhash::lab
