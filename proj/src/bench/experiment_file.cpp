#include "tabhash/bench/experiment_file.hpp"

#include <filesystem>
#include <fstream>

#include "tabhash/error.hpp"
#include "tabhash/json_fields.hpp"
#include "tabhash/sketch_io.hpp"

namespace tabhash::bench {

using nlohmann::json;
using json_fields::as;
using json_fields::optional;
using json_fields::reject_unknown;
using json_fields::required;

namespace {

// Prefixes ConfigErrors raised while parsing a section with its name.
template <class F>
auto in_section(const char* name, F&& parse) -> decltype(parse()) {
  try {
    return parse();
  } catch (const ConfigError& e) {
    throw ConfigError(std::string(name) + ": " + e.what());
  } catch (const RangeError& e) {
    throw ConfigError(std::string(name) + ": " + e.what());
  }
}

template <class T>
std::vector<T> list_of(const json& j, const std::string& name) {
  if (!j.contains(name)) throw ConfigError("missing field '" + name + "'");
  const json& arr = j.at(name);
  if (!arr.is_array() || arr.empty()) throw ConfigError("'" + name + "' must be a non-empty array");
  std::vector<T> out;
  for (const auto& v : arr) out.push_back(as<T>(v, name));
  return out;
}

std::string resolve(const std::string& base_dir, const std::string& path) {
  if (base_dir.empty() || std::filesystem::path(path).is_absolute()) return path;
  return (std::filesystem::path(base_dir) / path).lexically_normal().string();
}

std::optional<std::string> optional_path(const json& j, const char* name, const std::string& base_dir) {
  if (!j.contains(name)) return std::nullopt;
  return resolve(base_dir, as<std::string>(j.at(name), name));
}

BiasSection parse_bias(const json& j, const std::string& base_dir) {
  reject_unknown(j, {"spec", "families", "generators", "n", "trials", "base_seed", "confidence", "out"},
                 "section");
  BiasSection s;
  s.spec = spec_from_json(j.at("spec"));
  for (const auto& f : list_of<std::string>(j, "families")) s.families.push_back(FamilySpec::parse(f));
  if (j.contains("generators")) {
    s.generators.clear();
    for (const auto& g : list_of<std::string>(j, "generators")) s.generators.push_back(lab::parse_generator(g));
  }
  s.n_values = list_of<std::size_t>(j, "n");
  s.trials = optional<std::uint64_t>(j, "trials", s.trials);
  s.base_seed = optional<std::uint64_t>(j, "base_seed", s.base_seed);
  s.confidence = optional<double>(j, "confidence", s.confidence);
  s.out = optional_path(j, "out", base_dir);
  if (s.trials == 0) throw ConfigError("trials must be at least 1");
  if (!(s.confidence > 0 && s.confidence < 1)) throw ConfigError("confidence must be in (0, 1)");
  for (std::size_t n : s.n_values)
    if (n == 0) throw ConfigError("n values must be at least 1");
  return s;
}

SimilaritySection parse_similarity(const json& j, const std::string& base_dir) {
  reject_unknown(j, {"corpus", "spec", "family", "shingle", "sketches", "q", "base_seed", "out"}, "section");
  SimilaritySection s;
  s.corpus = resolve(base_dir, required<std::string>(j, "corpus"));
  if (j.contains("spec")) s.spec = spec_from_json(j.at("spec"));
  s.family = FamilySpec::parse(optional<std::string>(j, "family", s.family.name()));
  if (j.contains("shingle")) {
    const json& sh = j.at("shingle");
    reject_unknown(sh, {"w", "lowercase", "collapse_whitespace"}, "shingle");
    s.shingle.w = optional<std::size_t>(sh, "w", s.shingle.w);
    s.shingle.lowercase = optional<bool>(sh, "lowercase", s.shingle.lowercase);
    s.shingle.collapse_whitespace = optional<bool>(sh, "collapse_whitespace", s.shingle.collapse_whitespace);
  }
  if (j.contains("sketches")) s.sketches = list_of<std::string>(j, "sketches");
  for (const auto& k : s.sketches)
    if (k != "kx-minwise" && k != "bottom-q")
      throw ConfigError("unknown sketch kind '" + k + "' (expected kx-minwise, bottom-q)");
  s.q = optional<std::size_t>(j, "q", s.q);
  s.base_seed = optional<std::uint64_t>(j, "base_seed", s.base_seed);
  s.out = optional_path(j, "out", base_dir);
  if (s.q == 0) throw ConfigError("q must be at least 1");
  if (s.shingle.w == 0) throw ConfigError("shingle length w must be at least 1");
  if (s.family.family == Family::kTwisted && s.spec.chars < 2)
    throw ConfigError("twisted tabulation needs c >= 2");
  if (s.family.family == Family::kPoly && s.spec.key_bits() > 61)
    throw ConfigError("poly family needs keys below 2^61 - 1");
  return s;
}

GroupsSection parse_groups(const json& j, const std::string& base_dir) {
  reject_unknown(j,
                 {"spec", "n", "generator", "base_seed", "seeds", "bins", "occupancy_family", "baseline", "out"},
                 "section");
  GroupsSection s;
  s.spec = spec_from_json(j.at("spec"));
  s.n = required<std::size_t>(j, "n");
  s.generator = lab::parse_generator(optional<std::string>(j, "generator", "random-distinct"));
  s.base_seed = optional<std::uint64_t>(j, "base_seed", s.base_seed);
  s.seeds = optional<std::uint64_t>(j, "seeds", s.seeds);
  s.bins = optional<std::uint64_t>(j, "bins", s.bins);
  s.occupancy_family = FamilySpec::parse(optional<std::string>(j, "occupancy_family", "simple"));
  s.baseline = optional_path(j, "baseline", base_dir);
  s.out = optional_path(j, "out", base_dir);
  if (s.n == 0) throw ConfigError("n must be at least 1");
  if (s.spec.chars < 2) throw ConfigError("twisted groups need c >= 2");
  return s;
}

IndependenceSection parse_independence(const json& j, const std::string& base_dir) {
  reject_unknown(j, {"spec", "family", "k", "prime", "keys", "expect_uniform", "out"}, "section");
  IndependenceSection s;
  s.spec = spec_from_json(j.at("spec"));
  s.family = FamilySpec::parse(optional<std::string>(j, "family", "simple"));
  s.k = optional<unsigned>(j, "k", s.k);
  s.prime = optional<std::uint64_t>(j, "prime", 0);
  if (j.contains("keys")) s.keys = list_of<std::uint64_t>(j, "keys");
  if (j.contains("expect_uniform")) s.expect_uniform = as<bool>(j.at("expect_uniform"), "expect_uniform");
  s.out = optional_path(j, "out", base_dir);
  if (s.family.family == Family::kPoly && s.prime == 0)
    throw ConfigError("poly family needs a toy 'prime' for exhaustive enumeration");
  if (!s.keys.empty() && s.keys.size() != s.k)
    throw ConfigError("'keys' must list exactly k keys");
  return s;
}

}  // namespace

ExperimentFile parse_experiment_file(const json& j, const std::string& base_dir) {
  reject_unknown(j, {"bias", "similarity", "groups", "independence", "verify_vectors"}, "experiment file");
  ExperimentFile f;
  if (j.contains("bias")) f.bias = in_section("bias", [&] { return parse_bias(j.at("bias"), base_dir); });
  if (j.contains("similarity"))
    f.similarity = in_section("similarity", [&] { return parse_similarity(j.at("similarity"), base_dir); });
  if (j.contains("groups")) f.groups = in_section("groups", [&] { return parse_groups(j.at("groups"), base_dir); });
  if (j.contains("independence"))
    f.independence = in_section("independence", [&] { return parse_independence(j.at("independence"), base_dir); });
  if (j.contains("verify_vectors"))
    f.verify_vectors = in_section("verify_vectors", [&] {
      const json& v = j.at("verify_vectors");
      reject_unknown(v, {"file"}, "section");
      return VerifySection{resolve(base_dir, required<std::string>(v, "file"))};
    });
  return f;
}

ExperimentFile read_experiment_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config file " + path + ": " + e.what());
  }
  return parse_experiment_file(j, std::filesystem::path(path).parent_path().string());
}

json to_json(const BiasSection& s) {
  json families = json::array();
  for (const auto& f : s.families) families.push_back(f.name());
  json generators = json::array();
  for (auto g : s.generators) generators.push_back(lab::generator_name(g));
  return {{"spec", spec_to_json(s.spec)}, {"families", families},   {"generators", generators},
          {"n", s.n_values},              {"trials", s.trials},       {"base_seed", s.base_seed},
          {"confidence", s.confidence}};
}

json to_json(const SimilaritySection& s) {
  return {{"corpus", s.corpus},
          {"spec", spec_to_json(s.spec)},
          {"family", s.family.name()},
          {"shingle",
           {{"w", s.shingle.w}, {"lowercase", s.shingle.lowercase}, {"collapse_whitespace", s.shingle.collapse_whitespace}}},
          {"sketches", s.sketches},
          {"q", s.q},
          {"base_seed", s.base_seed}};
}

json to_json(const GroupsSection& s) {
  json j{{"spec", spec_to_json(s.spec)},
         {"n", s.n},
         {"generator", lab::generator_name(s.generator)},
         {"base_seed", s.base_seed},
         {"seeds", s.seeds},
         {"bins", s.bins},
         {"occupancy_family", s.occupancy_family.name()}};
  if (s.baseline) j["baseline"] = *s.baseline;
  return j;
}

json to_json(const IndependenceSection& s) {
  json j{{"spec", spec_to_json(s.spec)}, {"family", s.family.name()}, {"k", s.k}};
  if (s.prime != 0) j["prime"] = s.prime;
  if (!s.keys.empty()) j["keys"] = s.keys;
  if (s.expect_uniform) j["expect_uniform"] = *s.expect_uniform;
  return j;
}

}  // namespace tabhash::bench
