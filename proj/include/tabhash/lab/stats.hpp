#pragma once

#include <cstdint>

namespace tabhash::lab {

struct Interval {
  double lo = 0;
  double hi = 0;

  double half_width() const noexcept { return (hi - lo) / 2; }
  bool contains(double x) const noexcept { return lo <= x && x <= hi; }
};

// Two-sided standard normal critical value for the given confidence.
double normal_critical(double confidence);

// Wilson score interval for a binomial proportion. Throws ConfigError if
// trials == 0, hits > trials or confidence is outside (0, 1).
Interval wilson_interval(std::uint64_t hits, std::uint64_t trials, double confidence);

// Pr[X >= k] and Pr[X <= k] for X ~ Binomial(n, p).
double binomial_upper_tail(std::uint64_t n, double p, std::uint64_t k);
double binomial_lower_tail(std::uint64_t n, double p, std::uint64_t k);

// Chernoff reference curves with the hidden constant set to 1:
//   upper: (e^d / (1+d)^(1+d))^mu      lower: (e^-d / (1-d)^(1-d))^mu  (d <= 1)
double chernoff_upper(double mu, double delta);
double chernoff_lower(double mu, double delta);

}  // namespace tabhash::lab
