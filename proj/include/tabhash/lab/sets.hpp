#pragma once

// Key-set generators for bias experiments. Each produces a set S of n
// distinct keys and a query key q outside S, deterministically from a seed.
//
//   random-distinct  n + 1 distinct uniform keys; q is the first drawn.
//   fixed-tail-cube  product set: w heads x ceil(n / w) tails, filled tail by
//                    tail, w = 2^ceil(log2(n) / 2) heads (the head being the
//                    most significant character). Each tail is shared by w
//                    keys; n <= 2 gives a single fixed tail. Head and tail
//                    values are distinct random picks; q takes an unused head
//                    and an unused tail.
//   dense-interval   S = {b, ..., b + n - 1}, q = b + n for a random b.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "tabhash/universe.hpp"

namespace tabhash::lab {

enum class SetGenerator { kRandomDistinct, kFixedTailCube, kDenseInterval };

SetGenerator parse_generator(std::string_view name);
std::string generator_name(SetGenerator g);

struct QuerySet {
  std::uint64_t query = 0;
  std::vector<std::uint64_t> members;
};

// Throws ConfigError if the universe cannot hold the set (n + 1 > u, or the
// cube needs more heads/tails than the alphabet has).
QuerySet generate_set(SetGenerator generator, const UniverseSpec& spec, std::size_t n,
                      std::uint64_t seed);

}  // namespace tabhash::lab
