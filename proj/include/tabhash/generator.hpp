#pragma once

// Table-fill generator.
//
// Every random word used by the library is a pure function of
// (seed, stream, table, index):
//
//   counter = (table << 32) | index                      (index < 2^32)
//   word    = mix64((seed ^ stream) + (counter + 1) * 0x9E3779B97F4A7C15)
//
// where mix64 is the splitmix64 finalizer:
//
//   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//   z =  z ^ (z >> 31)
//
// All arithmetic is modulo 2^64. Fills are therefore independent of the order
// in which entries are generated, and identical on every platform. The
// stream constants below are ASCII tags; each table kind draws from its own
// stream so that, e.g., the twister and the shift tables of a twisted
// tabulation function are independent.

#include <cstdint>

namespace tabhash::gen {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

enum class Stream : std::uint64_t {
  kSimple = 0x53494D504C455442ULL,   // "SIMPLETB"
  kTwister = 0x5457495354455220ULL,  // "TWISTER "
  kShift = 0x5348494654544142ULL,    // "SHIFTTAB"
  kPoly = 0x504F4C59434F4546ULL,     // "POLYCOEF"
  kRandom = 0x46554C4C52414E44ULL,   // "FULLRAND"
  kTrial = 0x545249414C534545ULL,    // "TRIALSEE"
  kSet = 0x5345544B45595321ULL,      // "SETKEYS!"
};

constexpr std::uint64_t table_word(std::uint64_t seed, Stream stream, std::uint32_t table,
                                   std::uint32_t index) noexcept {
  const std::uint64_t counter = (static_cast<std::uint64_t>(table) << 32) | index;
  return mix64((seed ^ static_cast<std::uint64_t>(stream)) + (counter + 1) * kGoldenGamma);
}

// Seed of the index-th member of a family of seeds rooted at `base`
// (trial t of an experiment, hash function i of a sketch, ...).
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept {
  return mix64((base ^ static_cast<std::uint64_t>(Stream::kTrial)) + (index + 1) * kGoldenGamma);
}

// Sequential generator over one stream; used where a variable number of words
// is needed (rejection sampling, set generation). Word i is
// table_word(seed, stream, table, i).
class WordStream {
 public:
  constexpr WordStream(std::uint64_t seed, Stream stream, std::uint32_t table = 0) noexcept
      : seed_(seed), stream_(stream), table_(table) {}

  constexpr std::uint64_t next() noexcept { return table_word(seed_, stream_, table_, index_++); }

  // Uniform value in [0, bound) by rejection on the smallest covering mask.
  std::uint64_t below(std::uint64_t bound) noexcept;

 private:
  std::uint64_t seed_;
  Stream stream_;
  std::uint32_t table_;
  std::uint32_t index_ = 0;
};

inline std::uint64_t WordStream::below(std::uint64_t bound) noexcept {
  if (bound <= 1) return 0;
  std::uint64_t mask = bound - 1;
  mask |= mask >> 1;
  mask |= mask >> 2;
  mask |= mask >> 4;
  mask |= mask >> 8;
  mask |= mask >> 16;
  mask |= mask >> 32;
  for (;;) {
    const std::uint64_t v = next() & mask;
    if (v < bound) return v;
  }
}

}  // namespace tabhash::gen
