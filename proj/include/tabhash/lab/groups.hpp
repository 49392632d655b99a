#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "tabhash/hash_function.hpp"
#include "tabhash/lab/sets.hpp"

namespace tabhash::lab {

// The lab's fixed choice of the free exponent in sigma^(1 - eps).
inline constexpr double kLemmaEpsilon = 0.5;

struct GroupStatsReport {
  UniverseSpec spec;
  std::size_t n = 0;
  std::uint64_t sigma = 0;
  std::vector<std::uint64_t> group_sizes;            // indexed by twisted head; sums to n
  std::map<std::uint64_t, std::uint64_t> size_histogram;  // group size -> number of groups
  std::uint64_t max_group_size = 0;
  double reference_scale = 0;  // 1 + n / sigma^(1 - eps)
};

double group_reference_scale(std::size_t n, std::uint64_t sigma, double eps = kLemmaEpsilon);

GroupStatsReport twisted_group_stats(const TwistedTables& tables, std::span<const std::uint64_t> keys);
GroupStatsReport twisted_group_stats(const SeededTwisted& fn, std::span<const std::uint64_t> keys);

struct OccupancyReport {
  std::uint64_t bins = 0;
  std::size_t n = 0;
  std::uint64_t max_load = 0;
  std::map<std::uint64_t, std::uint64_t> load_histogram;  // load -> number of bins, loads >= 1
  // Per-group variant only: the largest load of any (group, bin) cell and the
  // number of non-empty groups.
  bool per_group = false;
  std::uint64_t groups = 0;
};

// Loads of the m bins given by the top log2(m) bits of h(x). Throws
// ConfigError unless m is a power of two with log2(m) <= out_bits.
OccupancyReport bin_occupancy(const HashFunction& fn, std::span<const std::uint64_t> keys,
                              std::uint64_t bins);

// Twisted case: within each twisted group, bins of the internal hashing
// h_in(x) (before the final shift).
OccupancyReport bin_occupancy_per_group(const TwistedTables& tables,
                                        std::span<const std::uint64_t> keys, std::uint64_t bins);
OccupancyReport bin_occupancy_per_group(const SeededTwisted& fn, std::span<const std::uint64_t> keys,
                                        std::uint64_t bins);

// min(((1 + gamma) / eps)^c, 2^((1 + gamma) / eps)).
double lemma_bin_bound(double gamma, double eps, unsigned chars);

struct SweepConfig {
  UniverseSpec spec;
  FamilySpec family;  // occupancy sweeps only; group sweeps are twisted
  std::size_t n = 4096;
  SetGenerator generator = SetGenerator::kRandomDistinct;
  std::uint64_t seeds = 1000;
  std::uint64_t base_seed = 1;
  std::uint64_t bins = 0;   // occupancy sweeps
  bool per_group = false;   // occupancy sweeps, twisted family

  void validate() const;
};

// One fixed set (seed set_seed(base_seed)), one function per seed index
// (trial_seed(base_seed, i)); per-seed maxima in seed order.
struct GroupSweep {
  SweepConfig config;
  double reference_scale = 0;
  std::vector<std::uint64_t> max_sizes;
  std::uint64_t overall_max = 0;
  double max_ratio = 0;  // overall_max / reference_scale

  // Fraction of seeds whose max group size is <= bound.
  double fraction_within(double bound) const;
};

struct OccupancySweep {
  SweepConfig config;
  double lemma_d = 0;  // lemma_bin_bound(1, eps, c)
  std::vector<std::uint64_t> max_loads;
  std::uint64_t overall_max = 0;

  double fraction_within(double bound) const;
};

GroupSweep group_size_sweep(const SweepConfig& config);
OccupancySweep occupancy_sweep(const SweepConfig& config);

}  // namespace tabhash::lab
