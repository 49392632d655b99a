#pragma once

// Experiment file: one JSON document with an optional section per command.
//
// {
//   "bias": {"spec": {"char_bits": 8, "c": 2, "out_bits": 16},
//            "families": ["simple", "twisted"], "generators": ["fixed-tail-cube"],
//            "n": [4, 16, 64, 256], "trials": 1000000, "base_seed": 1,
//            "confidence": 0.99, "out": "bias.csv"},
//   "similarity": {"corpus": "docs/", "spec": {...}, "family": "twisted",
//                  "shingle": {"w": 5, "lowercase": true, "collapse_whitespace": true},
//                  "sketches": ["kx-minwise", "bottom-q"], "q": 256, "base_seed": 1},
//   "groups": {"spec": {...}, "n": 4096, "generator": "random-distinct",
//              "base_seed": 1, "seeds": 1000, "bins": 65536,
//              "occupancy_family": "simple", "baseline": "baseline.json"},
//   "independence": {"spec": {"char_bits": 1, "c": 2, "out_bits": 1},
//                    "family": "simple", "k": 3, "prime": 31, "keys": [0, 1, 2, 3],
//                    "expect_uniform": true},
//   "verify_vectors": {"file": "vectors.txt"}
// }
//
// Every field except the section's required ones has the default shown by
// to_json of the parsed section; unknown fields anywhere are rejected.
// Relative paths are resolved against the directory of the experiment file.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tabhash/bench/shingle.hpp"
#include "tabhash/hash_function.hpp"
#include "tabhash/lab/sets.hpp"

namespace tabhash::bench {

struct BiasSection {
  UniverseSpec spec;
  std::vector<FamilySpec> families;
  std::vector<lab::SetGenerator> generators{lab::SetGenerator::kRandomDistinct};
  std::vector<std::size_t> n_values;
  std::uint64_t trials = 100000;
  std::uint64_t base_seed = 1;
  double confidence = 0.99;
  std::optional<std::string> out;
};

struct SimilaritySection {
  std::string corpus;
  UniverseSpec spec = UniverseSpec::make(8, 4);
  FamilySpec family{Family::kTwisted};
  ShingleConfig shingle;
  std::vector<std::string> sketches{"kx-minwise"};
  std::size_t q = 256;
  std::uint64_t base_seed = 1;
  std::optional<std::string> out;
};

struct GroupsSection {
  UniverseSpec spec;
  std::size_t n = 0;
  lab::SetGenerator generator = lab::SetGenerator::kRandomDistinct;
  std::uint64_t base_seed = 1;
  std::uint64_t seeds = 0;  // 0: a single instance only
  std::uint64_t bins = 0;   // 0: no occupancy
  FamilySpec occupancy_family{Family::kSimple};
  std::optional<std::string> baseline;
  std::optional<std::string> out;
};

struct IndependenceSection {
  UniverseSpec spec;
  FamilySpec family{Family::kSimple};
  unsigned k = 3;
  std::uint64_t prime = 0;
  std::vector<std::uint64_t> keys;  // empty: all k-subsets
  std::optional<bool> expect_uniform;
  std::optional<std::string> out;
};

struct VerifySection {
  std::string file;
};

struct ExperimentFile {
  std::optional<BiasSection> bias;
  std::optional<SimilaritySection> similarity;
  std::optional<GroupsSection> groups;
  std::optional<IndependenceSection> independence;
  std::optional<VerifySection> verify_vectors;
};

// Throws ConfigError with a field path on any schema violation. `base_dir`
// prefixes relative paths.
ExperimentFile parse_experiment_file(const nlohmann::json& j, const std::string& base_dir = "");
ExperimentFile read_experiment_file(const std::string& path);

nlohmann::json to_json(const BiasSection& s);
nlohmann::json to_json(const SimilaritySection& s);
nlohmann::json to_json(const GroupsSection& s);
nlohmann::json to_json(const IndependenceSection& s);

}  // namespace tabhash::bench
