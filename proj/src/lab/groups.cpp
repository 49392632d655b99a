#include "tabhash/lab/groups.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <unordered_map>

#include "tabhash/error.hpp"
#include "tabhash/lab/bias.hpp"

namespace tabhash::lab {

namespace {

constexpr unsigned kMaxGroupCharBits = 24;

template <class Fn>
GroupStatsReport group_stats(const Fn& fn, const UniverseSpec& spec,
                             std::span<const std::uint64_t> keys) {
  if (spec.char_bits > kMaxGroupCharBits)
    throw ConfigError("group statistics need char_bits <= " + std::to_string(kMaxGroupCharBits));
  GroupStatsReport r;
  r.spec = spec;
  r.n = keys.size();
  r.sigma = spec.sigma();
  r.group_sizes.assign(r.sigma, 0);
  for (std::uint64_t x : keys) {
    spec.check_key(x);
    ++r.group_sizes[fn.twisted_head_unchecked(x)];
  }
  for (std::uint64_t s : r.group_sizes) {
    ++r.size_histogram[s];
    r.max_group_size = std::max(r.max_group_size, s);
  }
  r.reference_scale = group_reference_scale(r.n, r.sigma);
  return r;
}

unsigned bin_bits(std::uint64_t bins, unsigned out_bits) {
  if (bins == 0 || !std::has_single_bit(bins))
    throw ConfigError("number of bins must be a power of two, got " + std::to_string(bins));
  const auto b = static_cast<unsigned>(std::countr_zero(bins));
  if (b > out_bits)
    throw ConfigError("2^" + std::to_string(b) + " bins need more than the " +
                      std::to_string(out_bits) + " hash bits");
  return b;
}

std::uint64_t bin_of(std::uint64_t hash, unsigned out_bits, unsigned b) {
  return b == 0 ? 0 : hash >> (out_bits - b);
}

template <class Hash>
std::uint64_t max_bin_load(const Hash& hash, std::span<const std::uint64_t> keys, unsigned out_bits,
                           unsigned b, std::vector<std::uint32_t>& loads) {
  std::uint32_t best = 0;
  for (std::uint64_t x : keys) best = std::max(best, ++loads[bin_of(hash(x), out_bits, b)]);
  for (std::uint64_t x : keys) loads[bin_of(hash(x), out_bits, b)] = 0;
  return best;
}

// Largest (group, bin) load with the internal hashing.
template <class Fn>
std::uint64_t max_group_bin_load(const Fn& fn, std::span<const std::uint64_t> keys,
                                 unsigned out_bits, unsigned b,
                                 std::unordered_map<std::uint64_t, std::uint32_t>& cells) {
  cells.clear();
  std::uint32_t best = 0;
  for (std::uint64_t x : keys) {
    const std::uint64_t cell =
        (fn.twisted_head_unchecked(x) << b) | bin_of(fn.internal_unchecked(x), out_bits, b);
    best = std::max(best, ++cells[cell]);
  }
  return best;
}

template <class Fn>
OccupancyReport per_group_occupancy(const Fn& fn, const UniverseSpec& spec,
                                    std::span<const std::uint64_t> keys, std::uint64_t bins) {
  const unsigned b = bin_bits(bins, spec.out_bits);
  if (spec.char_bits + b > 64) throw ConfigError("group and bin ids do not fit in 64 bits");
  OccupancyReport r;
  r.bins = bins;
  r.n = keys.size();
  r.per_group = true;
  std::unordered_map<std::uint64_t, std::uint32_t> cells;
  std::unordered_map<std::uint64_t, bool> groups;
  for (std::uint64_t x : keys) {
    spec.check_key(x);
    const std::uint64_t g = fn.twisted_head_unchecked(x);
    groups[g] = true;
    ++cells[(g << b) | bin_of(fn.internal_unchecked(x), spec.out_bits, b)];
  }
  r.groups = groups.size();
  for (const auto& [cell, v] : cells) {
    ++r.load_histogram[v];
    r.max_load = std::max<std::uint64_t>(r.max_load, v);
  }
  return r;
}

double fraction_le(const std::vector<std::uint64_t>& values, double bound) {
  if (values.empty()) return 1.0;
  const auto within = std::count_if(values.begin(), values.end(),
                                    [bound](std::uint64_t v) { return static_cast<double>(v) <= bound; });
  return static_cast<double>(within) / static_cast<double>(values.size());
}

}  // namespace

double group_reference_scale(std::size_t n, std::uint64_t sigma, double eps) {
  return 1.0 + static_cast<double>(n) / std::pow(static_cast<double>(sigma), 1.0 - eps);
}

GroupStatsReport twisted_group_stats(const TwistedTables& tables, std::span<const std::uint64_t> keys) {
  return group_stats(tables, tables.spec(), keys);
}

GroupStatsReport twisted_group_stats(const SeededTwisted& fn, std::span<const std::uint64_t> keys) {
  return group_stats(fn, fn.spec(), keys);
}

OccupancyReport bin_occupancy(const HashFunction& fn, std::span<const std::uint64_t> keys,
                              std::uint64_t bins) {
  const unsigned out_bits = fn.spec().out_bits;
  const unsigned b = bin_bits(bins, out_bits);
  OccupancyReport r;
  r.bins = bins;
  r.n = keys.size();
  std::unordered_map<std::uint64_t, std::uint32_t> loads;
  for (std::uint64_t x : keys) ++loads[bin_of(fn(x), out_bits, b)];
  for (const auto& [bin, v] : loads) {
    ++r.load_histogram[v];
    r.max_load = std::max<std::uint64_t>(r.max_load, v);
  }
  return r;
}

OccupancyReport bin_occupancy_per_group(const TwistedTables& tables,
                                        std::span<const std::uint64_t> keys, std::uint64_t bins) {
  return per_group_occupancy(tables, tables.spec(), keys, bins);
}

OccupancyReport bin_occupancy_per_group(const SeededTwisted& fn, std::span<const std::uint64_t> keys,
                                        std::uint64_t bins) {
  return per_group_occupancy(fn, fn.spec(), keys, bins);
}

double lemma_bin_bound(double gamma, double eps, unsigned chars) {
  if (!(eps > 0)) throw ConfigError("eps must be positive");
  const double a = (1 + gamma) / eps;
  return std::min(std::pow(a, static_cast<double>(chars)), std::exp2(a));
}

void SweepConfig::validate() const {
  spec.validate();
  if (n == 0) throw ConfigError("n must be at least 1");
  if (seeds == 0) throw ConfigError("seeds must be at least 1");
  if (bins != 0 && (!std::has_single_bit(bins) || std::countr_zero(bins) > static_cast<int>(spec.out_bits)))
    throw ConfigError("bins must be a power of two no larger than 2^out_bits");
}

double GroupSweep::fraction_within(double bound) const { return fraction_le(max_sizes, bound); }

double OccupancySweep::fraction_within(double bound) const { return fraction_le(max_loads, bound); }

GroupSweep group_size_sweep(const SweepConfig& config) {
  config.validate();
  if (config.spec.chars < 2) throw ConfigError("twisted groups need c >= 2");
  if (config.spec.char_bits > kMaxGroupCharBits)
    throw ConfigError("group statistics need char_bits <= " + std::to_string(kMaxGroupCharBits));
  const QuerySet qs = generate_set(config.generator, config.spec, config.n, set_seed(config.base_seed));
  GroupSweep out;
  out.config = config;
  out.config.family = FamilySpec{Family::kTwisted};
  out.reference_scale = group_reference_scale(config.n, config.spec.sigma());
  out.max_sizes.reserve(config.seeds);
  std::vector<std::uint32_t> sizes(config.spec.sigma(), 0);
  for (std::uint64_t s = 0; s < config.seeds; ++s) {
    const SeededTwisted fn(config.spec, trial_seed(config.base_seed, s));
    std::uint32_t best = 0;
    for (std::uint64_t x : qs.members) best = std::max(best, ++sizes[fn.twisted_head_unchecked(x)]);
    std::fill(sizes.begin(), sizes.end(), 0);
    out.max_sizes.push_back(best);
    out.overall_max = std::max<std::uint64_t>(out.overall_max, best);
  }
  out.max_ratio = static_cast<double>(out.overall_max) / out.reference_scale;
  return out;
}

OccupancySweep occupancy_sweep(const SweepConfig& config) {
  config.validate();
  const unsigned out_bits = config.spec.out_bits;
  const unsigned b = bin_bits(config.bins, out_bits);
  if (config.per_group && config.family.family != Family::kTwisted)
    throw ConfigError("per-group occupancy needs the twisted family");
  const QuerySet qs = generate_set(config.generator, config.spec, config.n, set_seed(config.base_seed));
  OccupancySweep out;
  out.config = config;
  out.lemma_d = lemma_bin_bound(1.0, kLemmaEpsilon, config.spec.chars);
  out.max_loads.reserve(config.seeds);
  const std::span<const std::uint64_t> keys(qs.members);
  std::vector<std::uint32_t> loads;
  std::unordered_map<std::uint64_t, std::uint32_t> cells;
  const bool dense = config.bins <= (std::uint64_t{1} << 24);
  if (dense) loads.assign(config.bins, 0);
  for (std::uint64_t s = 0; s < config.seeds; ++s) {
    const std::uint64_t seed = trial_seed(config.base_seed, s);
    std::uint64_t best = 0;
    if (config.per_group) {
      best = max_group_bin_load(SeededTwisted(config.spec, seed), keys, out_bits, b, cells);
    } else {
      const HashFunction fn = HashFunction::make_for(config.family, config.spec, seed, keys.size());
      auto hash = [&fn](std::uint64_t x) { return fn.hash_unchecked(x); };
      if (dense) {
        best = max_bin_load(hash, keys, out_bits, b, loads);
      } else {
        cells.clear();
        for (std::uint64_t x : keys) best = std::max<std::uint64_t>(best, ++cells[bin_of(hash(x), out_bits, b)]);
      }
    }
    out.max_loads.push_back(best);
    out.overall_max = std::max(out.overall_max, best);
  }
  return out;
}

}  // namespace tabhash::lab
