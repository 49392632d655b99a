#include "tabhash/lab/stats.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/normal.hpp>

#include "tabhash/error.hpp"

namespace tabhash::lab {

double normal_critical(double confidence) {
  if (!(confidence > 0 && confidence < 1)) throw ConfigError("confidence must be in (0, 1)");
  return boost::math::quantile(boost::math::normal_distribution<double>(), 0.5 + confidence / 2);
}

Interval wilson_interval(std::uint64_t hits, std::uint64_t trials, double confidence) {
  if (trials == 0) throw ConfigError("Wilson interval needs at least one trial");
  if (hits > trials) throw ConfigError("more hits than trials");
  const double z = normal_critical(confidence);
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(hits) / n;
  const double z2 = z * z;
  const double denom = 1 + z2 / n;
  const double center = (p + z2 / (2 * n)) / denom;
  const double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / denom;
  Interval out{center - half, center + half};
  // Exact endpoints at the boundary counts.
  if (hits == 0) out.lo = 0;
  if (hits == trials) out.hi = 1;
  out.lo = std::max(0.0, out.lo);
  out.hi = std::min(1.0, out.hi);
  return out;
}

double binomial_upper_tail(std::uint64_t n, double p, std::uint64_t k) {
  if (k == 0) return 1;
  if (k > n) return 0;
  const boost::math::binomial_distribution<double> dist(static_cast<double>(n), p);
  return boost::math::cdf(boost::math::complement(dist, static_cast<double>(k - 1)));
}

double binomial_lower_tail(std::uint64_t n, double p, std::uint64_t k) {
  if (k >= n) return 1;
  const boost::math::binomial_distribution<double> dist(static_cast<double>(n), p);
  return boost::math::cdf(dist, static_cast<double>(k));
}

double chernoff_upper(double mu, double delta) {
  return std::exp(mu * (delta - (1 + delta) * std::log1p(delta)));
}

double chernoff_lower(double mu, double delta) {
  if (delta > 1) return 0;  // level below zero
  if (delta == 1) return std::exp(-mu);
  return std::exp(mu * (-delta - (1 - delta) * std::log1p(-delta)));
}

}  // namespace tabhash::lab
