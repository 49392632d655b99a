#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "tabhash/universe.hpp"

namespace tabhash::bench {

// Published seed of the shingle folding function ("SHINGLES").
inline constexpr std::uint64_t kShingleSeed = 0x5348494E474C4553ULL;

struct ShingleConfig {
  std::size_t w = 5;  // shingle length in bytes
  bool lowercase = true;
  bool collapse_whitespace = true;
};

// ASCII lowercasing; runs of whitespace become one space and leading or
// trailing whitespace is dropped.
std::string normalize(std::string_view text, const ShingleConfig& config);

// Folds a byte string into the universe with simple tabulation over 64-bit
// words (tables SimpleTables::fill({8, 8, 64}, kShingleSeed)):
//   acc = T(length); acc = T(acc ^ block_i) for each little-endian 8-byte
//   block (zero padded); key = acc & key_mask.
std::uint64_t fold_shingle(std::string_view bytes, const UniverseSpec& spec);

// Sorted distinct keys of all w-byte shingles of the normalized text. A text
// shorter than w is a single shingle; an empty text gives no keys.
std::vector<std::uint64_t> shingle_keys(std::string_view text, const ShingleConfig& config,
                                        const UniverseSpec& spec);

}  // namespace tabhash::bench
