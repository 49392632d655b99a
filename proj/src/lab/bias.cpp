#include "tabhash/lab/bias.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "tabhash/error.hpp"
#include "tabhash/generator.hpp"

namespace tabhash::lab {

namespace {

struct PolyFn {
  PolyHashParams params;
  std::uint64_t hash_unchecked(std::uint64_t key) const noexcept {
    return poly_hash_unchecked(params, key);
  }
};

template <class Make>
TrialCounts run_trials(const Make& make, std::uint64_t query, std::span<const std::uint64_t> set,
                       std::uint64_t base_seed, std::uint64_t first, std::uint64_t last) {
  TrialCounts counts;
  for (std::uint64_t t = first; t < last; ++t) {
    const auto h = make(trial_seed(base_seed, t));
    const std::uint64_t hq = h.hash_unchecked(query);
    bool tie = false;
    bool loses_tie = false;
    bool beaten = false;
    for (std::uint64_t x : set) {
      const std::uint64_t v = h.hash_unchecked(x);
      if (v < hq) {
        beaten = true;
        break;
      }
      if (v == hq) {
        tie = true;
        loses_tie |= x < query;
      }
    }
    if (beaten) continue;
    ++counts.nonstrict;
    counts.strict += !tie;
    counts.hits += !loses_tie;
  }
  return counts;
}

void check_query_set(const FamilySpec& family, const UniverseSpec& spec, std::uint64_t query,
                     std::span<const std::uint64_t> set) {
  if (set.empty()) throw ConfigError("bias estimation needs a non-empty set");
  const HashFunction probe = HashFunction::make(family, spec, 0, Storage::kSeeded);
  (void)probe(query);
  for (std::uint64_t x : set) {
    (void)probe(x);
    if (x == query) throw ConfigError("query key is a member of the set");
  }
}

}  // namespace

void BiasExperimentConfig::validate() const {
  spec.validate();
  if (n == 0) throw ConfigError("n must be at least 1");
  if (spec.key_bits() < 64 && n + 1 > (std::uint64_t{1} << spec.key_bits()))
    throw ConfigError("n + 1 exceeds the universe size");
  if (trials == 0) throw ConfigError("trials must be at least 1");
  if (!(confidence > 0 && confidence < 1)) throw ConfigError("confidence must be in (0, 1)");
  if (family.family == Family::kTwisted && spec.chars < 2)
    throw ConfigError("twisted tabulation needs c >= 2");
  if (family.family == Family::kPoly && spec.key_bits() > 61)
    throw ConfigError("poly family needs keys below 2^61 - 1");
}

std::uint64_t set_seed(std::uint64_t base_seed) noexcept {
  return gen::mix64(base_seed ^ static_cast<std::uint64_t>(gen::Stream::kSet));
}

std::uint64_t trial_seed(std::uint64_t base_seed, std::uint64_t trial) noexcept {
  return gen::derive_seed(base_seed, trial);
}

TrialCounts count_trials(const FamilySpec& family, const UniverseSpec& spec, std::uint64_t query,
                         std::span<const std::uint64_t> set, std::uint64_t base_seed,
                         std::uint64_t first, std::uint64_t last) {
  const bool seeded = set.size() + 1 < spec.sigma() || spec.char_bits > 20;
  switch (family.family) {
    case Family::kSimple:
      if (seeded)
        return run_trials([&](std::uint64_t s) { return SeededSimple(spec, s); }, query, set,
                          base_seed, first, last);
      return run_trials([&](std::uint64_t s) { return SimpleTables::fill(spec, s); }, query, set,
                        base_seed, first, last);
    case Family::kTwisted:
      if (seeded)
        return run_trials([&](std::uint64_t s) { return SeededTwisted(spec, s); }, query, set,
                          base_seed, first, last);
      return run_trials([&](std::uint64_t s) { return TwistedTables::fill(spec, s); }, query, set,
                        base_seed, first, last);
    case Family::kPoly:
      return run_trials(
          [&](std::uint64_t s) { return PolyFn{PolyHashParams::make(family.poly_k, spec.out_bits, s)}; },
          query, set, base_seed, first, last);
    case Family::kFullyRandom:
      return run_trials([&](std::uint64_t s) { return FullyRandom(spec, s); }, query, set,
                        base_seed, first, last);
  }
  throw ConfigError("unknown family");
}

BiasReport estimate_min_probability(const FamilySpec& family, const UniverseSpec& spec,
                                    std::uint64_t query, std::span<const std::uint64_t> set,
                                    std::uint64_t trials, std::uint64_t base_seed,
                                    double confidence, unsigned threads) {
  spec.validate();
  check_query_set(family, spec, query, set);
  if (trials == 0) throw ConfigError("trials must be at least 1");

  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::min<std::uint64_t>(trials, 256))));
  std::vector<TrialCounts> partial(threads);
  if (threads == 1) {
    partial[0] = count_trials(family, spec, query, set, base_seed, 0, trials);
  } else {
    std::vector<std::thread> workers;
    for (unsigned w = 0; w < threads; ++w) {
      const std::uint64_t first = trials * w / threads;
      const std::uint64_t last = trials * (w + 1) / threads;
      workers.emplace_back([&, w, first, last] {
        partial[w] = count_trials(family, spec, query, set, base_seed, first, last);
      });
    }
    for (auto& t : workers) t.join();
  }
  TrialCounts total;
  for (const auto& p : partial) total += p;

  BiasReport r;
  r.family = family;
  r.spec = spec;
  r.n = set.size();
  r.trials = trials;
  r.confidence = confidence;
  r.hit_count = total.hits;
  r.strict_count = total.strict;
  r.nonstrict_count = total.nonstrict;
  r.tie_count = total.nonstrict - total.strict;
  r.p_hat = static_cast<double>(total.hits) / static_cast<double>(trials);
  r.ci = wilson_interval(total.hits, trials, confidence);
  const double scale = static_cast<double>(r.n + 1);
  r.implied_bias = scale * r.p_hat - 1;
  r.implied_bias_interval = {scale * r.ci.lo - 1, scale * r.ci.hi - 1};
  const double log_u = static_cast<double>(spec.key_bits());
  const double sigma = static_cast<double>(spec.sigma());
  r.scale_log2_squared = log_u * log_u / sigma;
  r.scale_log = log_u / sigma;
  if (r.implied_bias_interval.half_width() >= r.scale_log) {
    r.underpowered = true;
    r.warnings.push_back("implied-bias half-width " + std::to_string(r.implied_bias_interval.half_width()) +
                         " is not below log2(u)/sigma = " + std::to_string(r.scale_log) +
                         "; increase trials before drawing conclusions");
  }
  return r;
}

BiasReport estimate_min_probability(const BiasExperimentConfig& config, unsigned threads) {
  config.validate();
  const QuerySet qs = generate_set(config.generator, config.spec, config.n, set_seed(config.base_seed));
  return estimate_min_probability(config.family, config.spec, qs.query, qs.members, config.trials,
                                  config.base_seed, config.confidence, threads);
}

}  // namespace tabhash::lab
