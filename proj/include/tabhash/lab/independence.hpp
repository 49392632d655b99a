#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tabhash/hash_function.hpp"

namespace tabhash::lab {

// Exact k-independence check by enumerating every member of a tiny family.
//
// Tabulation families enumerate all bit patterns of their tables (simple:
// c * sigma * r bits; twisted: (c-1) * sigma * char_bits twister bits plus
// c * sigma * r shift bits). The polynomial family enumerates all coefficient
// vectors in [p]^k over keys [p] with values in [p]. The family is
// k-independent iff for every set of k distinct keys every tuple of values
// occurs exactly fills / |range|^k times.
struct IndependenceWitness {
  std::vector<std::uint64_t> keys;
  std::uint64_t expected_count = 0;  // 0 when fills / |range|^k is not integral
  std::uint64_t min_count = 0;       // over all |range|^k tuples
  std::uint64_t max_count = 0;
  std::uint64_t distinct_tuples = 0;
  // XOR of the k hash values is the same in every fill.
  bool xor_constant = false;
  std::uint64_t xor_value = 0;
};

struct IndependenceReport {
  FamilySpec family;
  UniverseSpec spec;
  std::uint64_t prime = 0;  // poly only
  unsigned k = 0;
  std::uint64_t fills = 0;
  std::uint64_t range = 0;
  std::uint64_t tuples_checked = 0;
  bool uniform = true;
  std::optional<IndependenceWitness> witness;  // first non-uniform key tuple
};

inline constexpr std::uint64_t kMaxExhaustiveFills = std::uint64_t{1} << 24;

// Throws ConfigError when the family is not enumerable within
// kMaxExhaustiveFills fills (there is no sampling fallback) or k exceeds the
// universe. For poly, `prime` gives the toy modulus and spec.out_bits must
// cover it.
IndependenceReport exhaustive_independence_check(const FamilySpec& family, const UniverseSpec& spec,
                                                 unsigned k, std::uint64_t prime = 0);

// Same enumeration restricted to one tuple of keys.
IndependenceReport exhaustive_tuple_check(const FamilySpec& family, const UniverseSpec& spec,
                                          const std::vector<std::uint64_t>& keys,
                                          std::uint64_t prime = 0);

}  // namespace tabhash::lab
