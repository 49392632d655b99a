#include "tabhash/lab/report_json.hpp"

#include "tabhash/json_fields.hpp"
#include "tabhash/sketch_io.hpp"

namespace tabhash::lab {

using nlohmann::json;
using json_fields::optional;
using json_fields::reject_unknown;
using json_fields::required;

namespace {

json histogram_to_json(const std::map<std::uint64_t, std::uint64_t>& h) {
  json arr = json::array();
  for (const auto& [value, count] : h) arr.push_back({value, count});
  return arr;
}

json tail_to_json(const TailPoint& t) {
  return {{"delta", t.delta},         {"bound", t.bound},       {"count", t.exceed_count},
          {"empirical", t.empirical}, {"binomial", t.binomial}, {"chernoff", t.chernoff}};
}

}  // namespace

json to_json(const Interval& iv) { return json::array({iv.lo, iv.hi}); }

json to_json(const BiasExperimentConfig& c) {
  return {{"spec", spec_to_json(c.spec)},
          {"family", c.family.name()},
          {"n", c.n},
          {"generator", generator_name(c.generator)},
          {"trials", c.trials},
          {"base_seed", c.base_seed},
          {"confidence", c.confidence}};
}

BiasExperimentConfig bias_config_from_json(const json& j) {
  reject_unknown(j, {"spec", "family", "n", "generator", "trials", "base_seed", "confidence"},
                 "bias experiment");
  BiasExperimentConfig c;
  c.spec = spec_from_json(j.at("spec"));
  c.family = FamilySpec::parse(required<std::string>(j, "family"));
  c.n = required<std::size_t>(j, "n");
  c.generator = parse_generator(optional<std::string>(j, "generator", "random-distinct"));
  c.trials = required<std::uint64_t>(j, "trials");
  c.base_seed = optional<std::uint64_t>(j, "base_seed", c.base_seed);
  c.confidence = optional<double>(j, "confidence", c.confidence);
  c.validate();
  return c;
}

json to_json(const BiasReport& r) {
  return {{"family", r.family.name()},
          {"spec", spec_to_json(r.spec)},
          {"n", r.n},
          {"trials", r.trials},
          {"confidence", r.confidence},
          {"hit_count", r.hit_count},
          {"strict_count", r.strict_count},
          {"nonstrict_count", r.nonstrict_count},
          {"tie_count", r.tie_count},
          {"p_hat", r.p_hat},
          {"ci", to_json(r.ci)},
          {"implied_bias", r.implied_bias},
          {"implied_bias_interval", to_json(r.implied_bias_interval)},
          {"scale_log2u_squared_over_sigma", r.scale_log2_squared},
          {"scale_log2u_over_sigma", r.scale_log},
          {"underpowered", r.underpowered},
          {"warnings", r.warnings}};
}

json to_json(const SweepConfig& c) {
  return {{"spec", spec_to_json(c.spec)}, {"family", c.family.name()},
          {"n", c.n},                     {"generator", generator_name(c.generator)},
          {"seeds", c.seeds},             {"base_seed", c.base_seed},
          {"bins", c.bins},               {"per_group", c.per_group}};
}

SweepConfig sweep_config_from_json(const json& j) {
  reject_unknown(j, {"spec", "family", "n", "generator", "seeds", "base_seed", "bins", "per_group"},
                 "sweep");
  SweepConfig c;
  c.spec = spec_from_json(j.at("spec"));
  c.family = FamilySpec::parse(optional<std::string>(j, "family", "twisted"));
  c.n = required<std::size_t>(j, "n");
  c.generator = parse_generator(optional<std::string>(j, "generator", "random-distinct"));
  c.seeds = optional<std::uint64_t>(j, "seeds", c.seeds);
  c.base_seed = optional<std::uint64_t>(j, "base_seed", c.base_seed);
  c.bins = optional<std::uint64_t>(j, "bins", 0);
  c.per_group = optional<bool>(j, "per_group", false);
  c.validate();
  return c;
}

json to_json(const GroupStatsReport& r) {
  return {{"spec", spec_to_json(r.spec)},
          {"n", r.n},
          {"sigma", r.sigma},
          {"group_sizes", r.group_sizes},
          {"size_histogram", histogram_to_json(r.size_histogram)},
          {"max_group_size", r.max_group_size},
          {"reference_scale", r.reference_scale}};
}

json to_json(const OccupancyReport& r) {
  json j{{"bins", r.bins},
         {"n", r.n},
         {"max_load", r.max_load},
         {"load_histogram", histogram_to_json(r.load_histogram)},
         {"per_group", r.per_group}};
  if (r.per_group) j["groups"] = r.groups;
  return j;
}

json to_json(const GroupSweep& s) {
  return {{"config", to_json(s.config)},       {"epsilon", kLemmaEpsilon},
          {"reference_scale", s.reference_scale}, {"max_sizes", s.max_sizes},
          {"overall_max", s.overall_max},      {"max_ratio", s.max_ratio}};
}

json to_json(const OccupancySweep& s) {
  return {{"config", to_json(s.config)},
          {"epsilon", kLemmaEpsilon},
          {"lemma_d", s.lemma_d},
          {"max_loads", s.max_loads},
          {"overall_max", s.overall_max}};
}

json to_json(const ConcentrationConfig& c) {
  return {{"spec", spec_to_json(c.spec)},
          {"family", c.family.name()},
          {"n", c.n},
          {"generator", generator_name(c.generator)},
          {"threshold", c.threshold},
          {"trials", c.trials},
          {"base_seed", c.base_seed},
          {"deltas", c.deltas}};
}

ConcentrationConfig concentration_config_from_json(const json& j) {
  reject_unknown(j,
                 {"spec", "family", "n", "generator", "threshold", "mu", "trials", "base_seed", "deltas"},
                 "concentration");
  ConcentrationConfig c;
  c.spec = spec_from_json(j.at("spec"));
  c.family = FamilySpec::parse(optional<std::string>(j, "family", "twisted"));
  c.n = required<std::size_t>(j, "n");
  c.generator = parse_generator(optional<std::string>(j, "generator", "random-distinct"));
  if (j.contains("threshold") == j.contains("mu"))
    throw ConfigError("concentration needs exactly one of 'threshold' and 'mu'");
  c.threshold = j.contains("threshold") ? required<std::uint64_t>(j, "threshold")
                                        : threshold_for_mu(c.spec, c.n, required<double>(j, "mu"));
  c.trials = optional<std::uint64_t>(j, "trials", c.trials);
  c.base_seed = optional<std::uint64_t>(j, "base_seed", c.base_seed);
  if (j.contains("deltas")) {
    if (!j.at("deltas").is_array()) throw ConfigError("'deltas' must be an array");
    c.deltas.clear();
    for (const auto& d : j.at("deltas")) c.deltas.push_back(json_fields::as<double>(d, "deltas"));
  }
  c.validate();
  return c;
}

json to_json(const ConcentrationReport& r) {
  json up = json::array();
  json lo = json::array();
  for (const auto& t : r.upper) up.push_back(tail_to_json(t));
  for (const auto& t : r.lower) lo.push_back(tail_to_json(t));
  return {{"config", to_json(r.config)},
          {"mu", r.mu},
          {"mean", r.mean},
          {"histogram", r.histogram},
          {"upper_tail", up},
          {"lower_tail", lo},
          {"outside_regime", r.outside_regime},
          {"warnings", r.warnings}};
}

json to_json(const IndependenceReport& r) {
  json j{{"family", r.family.name()},
         {"spec", spec_to_json(r.spec)},
         {"k", r.k},
         {"fills", r.fills},
         {"range", r.range},
         {"tuples_checked", r.tuples_checked},
         {"uniform", r.uniform}};
  if (r.family.family == Family::kPoly) j["prime"] = r.prime;
  if (r.witness) {
    const auto& w = *r.witness;
    j["witness"] = {{"keys", w.keys},
                    {"expected_count", w.expected_count},
                    {"min_count", w.min_count},
                    {"max_count", w.max_count},
                    {"distinct_tuples", w.distinct_tuples},
                    {"xor_constant", w.xor_constant},
                    {"xor_value", w.xor_value}};
  }
  return j;
}

}  // namespace tabhash::lab
