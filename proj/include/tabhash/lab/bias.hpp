#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tabhash/hash_function.hpp"
#include "tabhash/lab/sets.hpp"
#include "tabhash/lab/stats.hpp"

namespace tabhash::lab {

struct BiasExperimentConfig {
  UniverseSpec spec;
  FamilySpec family;
  std::size_t n = 16;
  SetGenerator generator = SetGenerator::kRandomDistinct;
  std::uint64_t trials = 100000;
  std::uint64_t base_seed = 1;
  double confidence = 0.99;

  // Throws ConfigError (n + 1 > u, trials == 0, confidence outside (0, 1), ...).
  void validate() const;
};

// The set is drawn with seed set_seed(base_seed); trial t uses the hash
// function seeded trial_seed(base_seed, t).
std::uint64_t set_seed(std::uint64_t base_seed) noexcept;
std::uint64_t trial_seed(std::uint64_t base_seed, std::uint64_t trial) noexcept;

struct BiasReport {
  FamilySpec family;
  UniverseSpec spec;
  std::size_t n = 0;
  std::uint64_t trials = 0;
  double confidence = 0.99;

  // (h(q), q) < min over S of (h(x), x): the query is the selected element.
  std::uint64_t hit_count = 0;
  // h(q) < min h(S) and h(q) <= min h(S) on hash values alone.
  std::uint64_t strict_count = 0;
  std::uint64_t nonstrict_count = 0;
  std::uint64_t tie_count = 0;  // nonstrict - strict

  double p_hat = 0;
  Interval ci;                     // Wilson interval for Pr[hit]
  double implied_bias = 0;         // (n + 1) p_hat - 1
  Interval implied_bias_interval;  // ((n + 1) lo - 1, (n + 1) hi - 1)

  // Reference scales log2(u)^2 / sigma and log2(u) / sigma.
  double scale_log2_squared = 0;
  double scale_log = 0;

  // Set when the implied-bias half-width is not below scale_log.
  bool underpowered = false;
  std::vector<std::string> warnings;
};

// Pr[q is selected] for the fixed (S, q) over `trials` independently seeded
// functions of the family. Throws ConfigError if q is in S or S is empty.
// Trials are split over `threads` workers; the counts do not depend on the
// split.
BiasReport estimate_min_probability(const FamilySpec& family, const UniverseSpec& spec,
                                    std::uint64_t query, std::span<const std::uint64_t> set,
                                    std::uint64_t trials, std::uint64_t base_seed,
                                    double confidence = 0.99, unsigned threads = 1);

BiasReport estimate_min_probability(const BiasExperimentConfig& config, unsigned threads = 1);

// Counts for the trial indices in [first, last) only; used to check that the
// aggregation is order independent.
struct TrialCounts {
  std::uint64_t hits = 0;
  std::uint64_t strict = 0;
  std::uint64_t nonstrict = 0;

  TrialCounts& operator+=(const TrialCounts& o) noexcept {
    hits += o.hits;
    strict += o.strict;
    nonstrict += o.nonstrict;
    return *this;
  }
  bool operator==(const TrialCounts&) const = default;
};

TrialCounts count_trials(const FamilySpec& family, const UniverseSpec& spec, std::uint64_t query,
                         std::span<const std::uint64_t> set, std::uint64_t base_seed,
                         std::uint64_t first, std::uint64_t last);

}  // namespace tabhash::lab
