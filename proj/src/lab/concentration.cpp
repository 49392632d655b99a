#include "tabhash/lab/concentration.hpp"

#include <cmath>

#include "tabhash/error.hpp"
#include "tabhash/lab/bias.hpp"
#include "tabhash/lab/groups.hpp"
#include "tabhash/lab/stats.hpp"

namespace tabhash::lab {

void ConcentrationConfig::validate() const {
  spec.validate();
  if (spec.out_bits >= 64) throw ConfigError("concentration check needs out_bits < 64");
  if (n == 0) throw ConfigError("n must be at least 1");
  if (trials == 0) throw ConfigError("trials must be at least 1");
  if (threshold > (std::uint64_t{1} << spec.out_bits))
    throw ConfigError("threshold exceeds 2^out_bits");
  for (double d : deltas)
    if (!(d > 0)) throw ConfigError("deltas must be positive");
}

std::uint64_t threshold_for_mu(const UniverseSpec& spec, std::size_t n, double mu) {
  spec.validate();
  if (spec.out_bits >= 64) throw ConfigError("concentration check needs out_bits < 64");
  if (n == 0 || mu < 0 || mu > static_cast<double>(n)) throw ConfigError("mu must be in [0, n]");
  return static_cast<std::uint64_t>(
      std::llround(mu / static_cast<double>(n) * std::ldexp(1.0, static_cast<int>(spec.out_bits))));
}

ConcentrationReport concentration_spot_check(const ConcentrationConfig& config) {
  config.validate();
  const QuerySet qs = generate_set(config.generator, config.spec, config.n, set_seed(config.base_seed));
  const double p = static_cast<double>(config.threshold) /
                   std::ldexp(1.0, static_cast<int>(config.spec.out_bits));

  ConcentrationReport r;
  r.config = config;
  r.mu = static_cast<double>(config.n) * p;
  r.histogram.assign(config.n + 1, 0);
  const double regime = std::pow(static_cast<double>(config.spec.sigma()), 1.0 - kLemmaEpsilon);
  if (r.mu >= regime) {
    r.outside_regime = true;
    r.warnings.push_back("mu = " + std::to_string(r.mu) + " is not below sigma^(1/2) = " +
                         std::to_string(regime) + "; outside the tail-bound regime");
  }

  double sum = 0;
  for (std::uint64_t t = 0; t < config.trials; ++t) {
    const HashFunction fn =
        HashFunction::make_for(config.family, config.spec, trial_seed(config.base_seed, t), qs.members.size());
    std::uint64_t v = 0;
    for (std::uint64_t x : qs.members) v += fn.hash_unchecked(x) < config.threshold;
    ++r.histogram[v];
    sum += static_cast<double>(v);
  }
  r.mean = sum / static_cast<double>(config.trials);

  const auto count_from = [&](std::uint64_t lo, std::uint64_t hi) {
    std::uint64_t c = 0;
    for (std::uint64_t v = lo; v <= hi && v <= config.n; ++v) c += r.histogram[v];
    return c;
  };
  const double trials = static_cast<double>(config.trials);
  for (double d : config.deltas) {
    TailPoint up;
    up.delta = d;
    up.bound = static_cast<std::uint64_t>(std::ceil((1 + d) * r.mu));
    up.exceed_count = count_from(up.bound, config.n);
    up.empirical = static_cast<double>(up.exceed_count) / trials;
    up.binomial = binomial_upper_tail(config.n, p, up.bound);
    up.chernoff = chernoff_upper(r.mu, d);
    r.upper.push_back(up);
    if (d < 1) {
      TailPoint lo;
      lo.delta = d;
      lo.bound = static_cast<std::uint64_t>(std::floor((1 - d) * r.mu));
      lo.exceed_count = count_from(0, lo.bound);
      lo.empirical = static_cast<double>(lo.exceed_count) / trials;
      lo.binomial = binomial_lower_tail(config.n, p, lo.bound);
      lo.chernoff = chernoff_lower(r.mu, d);
      r.lower.push_back(lo);
    }
  }
  return r;
}

}  // namespace tabhash::lab
