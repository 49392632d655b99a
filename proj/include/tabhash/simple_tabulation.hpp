#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tabhash/generator.hpp"
#include "tabhash/universe.hpp"

namespace tabhash {

// Simple tabulation: h(x) = T_0[x_0] ^ T_1[x_1] ^ ... ^ T_{c-1}[x_{c-1}].
class SimpleTables {
 public:
  // Entry (i, j) is table_word(seed, kSimple, i, j) masked to out_bits.
  static SimpleTables fill(const UniverseSpec& spec, std::uint64_t seed);

  // Explicit contents, table-major (entries[i * sigma + j]); every entry must
  // fit in out_bits.
  static SimpleTables from_entries(const UniverseSpec& spec, std::vector<std::uint64_t> entries,
                                   std::uint64_t seed = 0);

  const UniverseSpec& spec() const noexcept { return spec_; }
  std::uint64_t seed() const noexcept { return seed_; }
  std::size_t entry_count() const noexcept { return entries_.size(); }

  std::uint64_t entry(unsigned table, std::uint64_t index) const noexcept {
    return entries_[table * spec_.sigma() + index];
  }
  std::span<const std::uint64_t> table(unsigned i) const noexcept {
    return {entries_.data() + i * spec_.sigma(), static_cast<std::size_t>(spec_.sigma())};
  }
  std::span<const std::uint64_t> entries() const noexcept { return entries_; }

  // Unchecked: key must be in the universe.
  std::uint64_t hash_unchecked(std::uint64_t key) const noexcept {
    std::uint64_t h = 0;
    const std::uint64_t sigma = spec_.sigma();
    const std::uint64_t* t = entries_.data();
    for (unsigned i = 0; i < spec_.chars; ++i, key >>= spec_.char_bits, t += sigma)
      h ^= t[key & spec_.char_mask()];
    return h;
  }

  bool operator==(const SimpleTables&) const = default;

 private:
  SimpleTables(const UniverseSpec& spec, std::uint64_t seed, std::vector<std::uint64_t> entries)
      : spec_(spec), seed_(seed), entries_(std::move(entries)) {}

  UniverseSpec spec_;
  std::uint64_t seed_ = 0;
  std::vector<std::uint64_t> entries_;
};

inline SimpleTables fill_simple(const UniverseSpec& spec, std::uint64_t seed) {
  return SimpleTables::fill(spec, seed);
}

// Throws RangeError for keys outside the universe.
std::uint64_t simple_hash(const SimpleTables& tables, std::uint64_t key);

// The same function as SimpleTables::fill(spec, seed), evaluated without
// materializing the tables: each lookup recomputes its table word. Cheaper
// when only a few keys are hashed per function.
class SeededSimple {
 public:
  SeededSimple(const UniverseSpec& spec, std::uint64_t seed);

  const UniverseSpec& spec() const noexcept { return spec_; }
  std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t entry(unsigned table, std::uint32_t index) const noexcept {
    return gen::table_word(seed_, gen::Stream::kSimple, table, index) & spec_.out_mask();
  }

  std::uint64_t hash_unchecked(std::uint64_t key) const noexcept {
    std::uint64_t h = 0;
    for (unsigned i = 0; i < spec_.chars; ++i, key >>= spec_.char_bits)
      h ^= gen::table_word(seed_, gen::Stream::kSimple, i,
                           static_cast<std::uint32_t>(key & spec_.char_mask()));
    return h & spec_.out_mask();
  }

  std::uint64_t operator()(std::uint64_t key) const;

 private:
  UniverseSpec spec_;
  std::uint64_t seed_;
};

}  // namespace tabhash
