#include "tabhash/lab/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "tabhash/error.hpp"
#include "tabhash/json_fields.hpp"
#include "tabhash/lab/report_json.hpp"
#include "tabhash/sketch_io.hpp"

namespace tabhash::lab {

using nlohmann::json;

namespace {

constexpr const char* kFormat = "tabhash-baseline";
constexpr int kVersion = 1;
constexpr double kSeedFraction = 0.999;

json without_seed(json j) {
  j.erase("base_seed");
  return j;
}

json reference_config(const std::string& name, json body) {
  return {{"experiment", name}, {"config", std::move(body)}};
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

double constant_of(const std::map<std::string, double>& constants, const std::string& name) {
  auto it = constants.find(name);
  if (it == constants.end()) throw ConfigError("baseline entry lacks constant '" + name + "'");
  return it->second;
}

std::vector<ReferenceExperiment> build_references() {
  std::vector<ReferenceExperiment> refs;

  refs.push_back({"minwise-kappa", reference_config("minwise-kappa", without_seed(to_json(minwise_reference(0)))),
                  [](std::uint64_t seed, unsigned threads) {
                    const BiasReport r = estimate_min_probability(minwise_reference(seed), threads);
                    const double end = std::max(std::abs(r.implied_bias_interval.lo),
                                                std::abs(r.implied_bias_interval.hi));
                    return std::map<std::string, double>{{"kappa", end / r.scale_log2_squared}};
                  },
                  [](const std::map<std::string, double>& k, double slack, std::uint64_t seed,
                     unsigned threads) {
                    const BiasReport r = estimate_min_probability(minwise_reference(seed), threads);
                    RegressionCheck c;
                    c.observed = std::abs(r.implied_bias);
                    c.bound = slack * constant_of(k, "kappa") * r.scale_log2_squared;
                    c.pass = c.observed <= c.bound;
                    c.detail = "|(n+1) p_hat - 1| = " + fmt(c.observed) + " vs slack * kappa * log2(u)^2/sigma = " +
                               fmt(c.bound);
                    return c;
                  }});

  refs.push_back({"group-size", reference_config("group-size", without_seed(to_json(group_reference(0)))),
                  [](std::uint64_t seed, unsigned) {
                    const GroupSweep s = group_size_sweep(group_reference(seed));
                    return std::map<std::string, double>{{"C", s.max_ratio}};
                  },
                  [](const std::map<std::string, double>& k, double slack, std::uint64_t seed, unsigned) {
                    const GroupSweep s = group_size_sweep(group_reference(seed));
                    const double limit = slack * constant_of(k, "C") * s.reference_scale;
                    RegressionCheck c;
                    c.observed = s.fraction_within(limit);
                    c.bound = kSeedFraction;
                    c.pass = c.observed >= c.bound;
                    c.detail = "fraction of seeds with max group <= " + fmt(limit) + " (slack * C * (1 + n/sigma^(1/2))) is " +
                               fmt(c.observed) + ", largest " + std::to_string(s.overall_max);
                    return c;
                  }});

  refs.push_back({"bin-occupancy", reference_config("bin-occupancy", without_seed(to_json(occupancy_reference(0)))),
                  [](std::uint64_t seed, unsigned) {
                    const OccupancySweep s = occupancy_sweep(occupancy_reference(seed));
                    return std::map<std::string, double>{{"d", static_cast<double>(s.overall_max)},
                                                         {"lemma_d", s.lemma_d}};
                  },
                  [](const std::map<std::string, double>& k, double slack, std::uint64_t seed, unsigned) {
                    const OccupancySweep s = occupancy_sweep(occupancy_reference(seed));
                    const double limit = slack * constant_of(k, "d");
                    RegressionCheck c;
                    c.observed = s.fraction_within(limit);
                    c.bound = kSeedFraction;
                    c.pass = c.observed >= c.bound;
                    c.detail = "fraction of seeds with max load <= " + fmt(limit) + " (slack * d) is " +
                               fmt(c.observed) + ", largest " + std::to_string(s.overall_max) +
                               ", lemma d " + fmt(s.lemma_d);
                    return c;
                  }});

  refs.push_back({"concentration", reference_config("concentration", without_seed(to_json(concentration_reference(0)))),
                  [](std::uint64_t seed, unsigned) {
                    const ConcentrationReport r = concentration_spot_check(concentration_reference(seed));
                    const TailPoint& t = r.upper.front();
                    const double hi = wilson_interval(t.exceed_count, r.config.trials, 0.99).hi;
                    return std::map<std::string, double>{{"tail_slack", hi / t.binomial}};
                  },
                  [](const std::map<std::string, double>& k, double slack, std::uint64_t seed, unsigned) {
                    const ConcentrationReport r = concentration_spot_check(concentration_reference(seed));
                    const TailPoint& t = r.upper.front();
                    RegressionCheck c;
                    c.observed = t.empirical;
                    c.bound = slack * constant_of(k, "tail_slack") * t.binomial;
                    c.pass = c.observed <= c.bound;
                    c.detail = "Pr[V >= " + std::to_string(t.bound) + "] = " + fmt(c.observed) +
                               " vs slack * tail_slack * binomial tail " + fmt(t.binomial) + " = " + fmt(c.bound);
                    return c;
                  }});

  json cells = json::array();
  for (const auto& cfg : flatness_reference(0)) cells.push_back(without_seed(to_json(cfg)));
  refs.push_back({"flatness", reference_config("flatness", cells),
                  [](std::uint64_t seed, unsigned threads) {
                    const Flatness f = flatness_of(run_cells(flatness_reference(seed), threads));
                    return std::map<std::string, double>{{"flatness_slack", std::max(0.0, f.spread - f.half_width_sum)}};
                  },
                  [](const std::map<std::string, double>& k, double slack, std::uint64_t seed,
                     unsigned threads) {
                    const Flatness f = flatness_of(run_cells(flatness_reference(seed), threads));
                    RegressionCheck c;
                    c.observed = f.spread;
                    c.bound = f.half_width_sum + slack * constant_of(k, "flatness_slack");
                    c.pass = c.observed < c.bound;
                    c.detail = "spread of implied bias " + fmt(c.observed) + " vs CI half-widths " +
                               fmt(f.half_width_sum) + " + slack * flatness_slack = " + fmt(c.bound);
                    return c;
                  }});

  return refs;
}

}  // namespace

std::uint64_t fnv1a64(std::string_view bytes) noexcept {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 0x100000001B3ULL;
  }
  return h;
}

std::uint64_t config_fingerprint(const json& config) { return fnv1a64(without_seed(config).dump()); }

void Baseline::put(BaselineEntry entry) {
  entry.config = without_seed(entry.config);
  entries[hex64(config_fingerprint(entry.config))] = std::move(entry);
}

const BaselineEntry& Baseline::at(const json& config) const {
  const std::string key = hex64(config_fingerprint(config));
  auto it = entries.find(key);
  if (it == entries.end())
    throw ConfigError("baseline has no entry for config fingerprint " + key + "; run calibrate");
  return it->second;
}

double Baseline::constant(const json& config, const std::string& name) const {
  return constant_of(at(config).constants, name);
}

json to_json(const Baseline& b) {
  json entries = json::object();
  for (const auto& [key, e] : b.entries)
    entries[key] = {{"name", e.name},
                    {"config", e.config},
                    {"calibration_seed", e.calibration_seed},
                    {"constants", e.constants}};
  return {{"format", kFormat}, {"version", kVersion}, {"slack", b.slack}, {"entries", entries}};
}

Baseline baseline_from_json(const json& j) {
  using json_fields::required;
  json_fields::reject_unknown(j, {"format", "version", "slack", "entries"}, "baseline");
  if (required<std::string>(j, "format") != kFormat) throw ConfigError("not a tabhash baseline file");
  if (required<int>(j, "version") != kVersion) throw ConfigError("unsupported baseline version");
  Baseline b;
  b.slack = required<double>(j, "slack");
  if (!(b.slack >= 1)) throw ConfigError("baseline slack must be at least 1");
  const json& entries = j.at("entries");
  if (!entries.is_object()) throw ConfigError("'entries' must be an object");
  for (const auto& [key, e] : entries.items()) {
    json_fields::reject_unknown(e, {"name", "config", "calibration_seed", "constants"}, "baseline entry");
    BaselineEntry entry;
    entry.name = required<std::string>(e, "name");
    entry.config = e.at("config");
    entry.calibration_seed = required<std::uint64_t>(e, "calibration_seed");
    const json& constants = e.at("constants");
    if (!constants.is_object()) throw ConfigError("'constants' must be an object");
    for (const auto& [name, v] : constants.items()) entry.constants[name] = json_fields::as<double>(v, name);
    if (hex64(config_fingerprint(entry.config)) != key)
      throw ConfigError("baseline entry '" + entry.name + "' does not match its fingerprint " + key);
    b.entries[key] = std::move(entry);
  }
  return b;
}

Baseline read_baseline(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open baseline file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("baseline file " + path + ": " + e.what());
  }
  return baseline_from_json(j);
}

void write_baseline(const std::string& path, const Baseline& baseline) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write baseline file " + path);
  out << to_json(baseline).dump(2) << '\n';
}

const std::vector<ReferenceExperiment>& reference_experiments() {
  static const std::vector<ReferenceExperiment> refs = build_references();
  return refs;
}

const ReferenceExperiment& reference_experiment(const std::string& name) {
  for (const auto& r : reference_experiments())
    if (r.name == name) return r;
  throw ConfigError("unknown reference experiment '" + name + "'");
}

Baseline calibrate_all(std::uint64_t seed, unsigned threads) {
  Baseline b;
  for (const auto& ref : reference_experiments())
    b.put({ref.name, ref.config, seed, ref.fit(seed, threads)});
  return b;
}

RegressionCheck check_reference(const ReferenceExperiment& ref, const Baseline& baseline,
                                std::uint64_t seed, unsigned threads) {
  RegressionCheck c = ref.check(baseline.at(ref.config).constants, baseline.slack, seed, threads);
  c.name = ref.name;
  return c;
}

Flatness flatness_of(const std::vector<BiasReport>& cells) {
  if (cells.empty()) throw ConfigError("flatness needs at least one cell");
  Flatness f;
  for (std::size_t i = 1; i < cells.size(); ++i) {
    if (cells[i].implied_bias < cells[f.argmin].implied_bias) f.argmin = i;
    if (cells[i].implied_bias > cells[f.argmax].implied_bias) f.argmax = i;
  }
  f.spread = cells[f.argmax].implied_bias - cells[f.argmin].implied_bias;
  f.half_width_sum = cells[f.argmax].implied_bias_interval.half_width() +
                     cells[f.argmin].implied_bias_interval.half_width();
  return f;
}

BiasExperimentConfig minwise_reference(std::uint64_t seed) {
  BiasExperimentConfig c;
  c.spec = UniverseSpec::make(8, 2);
  c.family = FamilySpec{Family::kTwisted};
  c.n = 8;
  c.generator = SetGenerator::kFixedTailCube;
  c.trials = 1000000;
  c.base_seed = seed;
  return c;
}

SweepConfig group_reference(std::uint64_t seed) {
  SweepConfig c;
  c.spec = UniverseSpec::make(8, 2);
  c.family = FamilySpec{Family::kTwisted};
  c.n = 4096;
  c.generator = SetGenerator::kRandomDistinct;
  c.seeds = 1000;
  c.base_seed = seed;
  return c;
}

SweepConfig occupancy_reference(std::uint64_t seed) {
  SweepConfig c;
  c.spec = UniverseSpec::make(8, 2);
  c.family = FamilySpec{Family::kSimple};
  c.n = 256;
  c.generator = SetGenerator::kRandomDistinct;
  c.seeds = 1000;
  c.bins = std::uint64_t{1} << 16;
  c.base_seed = seed;
  return c;
}

ConcentrationConfig concentration_reference(std::uint64_t seed) {
  ConcentrationConfig c;
  c.spec = UniverseSpec::make(16, 2);
  c.family = FamilySpec{Family::kTwisted};
  c.n = 1024;
  c.threshold = threshold_for_mu(c.spec, c.n, 16.0);
  c.trials = 100000;
  c.base_seed = seed;
  c.deltas = {1.0};
  return c;
}

std::vector<BiasExperimentConfig> flatness_reference(std::uint64_t seed) {
  std::vector<BiasExperimentConfig> cells;
  for (std::size_t n : {4, 16, 64, 256}) {
    BiasExperimentConfig c = minwise_reference(seed);
    c.n = n;
    cells.push_back(c);
  }
  return cells;
}

std::vector<BiasReport> run_cells(const std::vector<BiasExperimentConfig>& cells, unsigned threads) {
  std::vector<BiasReport> out;
  out.reserve(cells.size());
  for (const auto& c : cells) out.push_back(estimate_min_probability(c, threads));
  return out;
}

}  // namespace tabhash::lab
