#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tabhash/hash_function.hpp"
#include "tabhash/lab/sets.hpp"

namespace tabhash::lab {

// V = #{x in S : h(x) < T} over independently seeded functions, i.e. the sum
// of the interval indicators v_x(y) = [y < T]. mu = n T / 2^r.
struct ConcentrationConfig {
  UniverseSpec spec;
  FamilySpec family;
  std::size_t n = 256;
  SetGenerator generator = SetGenerator::kRandomDistinct;
  std::uint64_t threshold = 0;  // T, 0 <= T <= 2^r
  std::uint64_t trials = 100000;
  std::uint64_t base_seed = 1;
  std::vector<double> deltas{0.5, 1.0};

  // Throws ConfigError; out_bits = 64 is rejected since T = 2^r must be
  // representable.
  void validate() const;
};

// T with n T / 2^r as close to mu as possible.
std::uint64_t threshold_for_mu(const UniverseSpec& spec, std::size_t n, double mu);

struct TailPoint {
  double delta = 0;
  std::uint64_t bound = 0;       // ceil((1+d) mu) or floor((1-d) mu)
  std::uint64_t exceed_count = 0;
  double empirical = 0;          // exceed_count / trials
  double binomial = 0;           // same event for V ~ Binomial(n, T / 2^r)
  double chernoff = 0;           // reference curve with the hidden constant 1
};

struct ConcentrationReport {
  ConcentrationConfig config;
  double mu = 0;
  double mean = 0;
  std::vector<std::uint64_t> histogram;  // histogram[v] = trials with V = v; sums to trials
  std::vector<TailPoint> upper;          // Pr[V >= (1 + d) mu]
  std::vector<TailPoint> lower;          // Pr[V <= (1 - d) mu], d < 1 only
  bool outside_regime = false;           // mu >= sigma^(1/2)
  std::vector<std::string> warnings;
};

ConcentrationReport concentration_spot_check(const ConcentrationConfig& config);

}  // namespace tabhash::lab
