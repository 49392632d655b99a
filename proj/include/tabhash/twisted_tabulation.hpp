#pragma once

#include <cstdint>
#include <vector>

#include "tabhash/generator.hpp"
#include "tabhash/universe.hpp"

namespace tabhash {

// Twisted tabulation.
//
// The head is the most significant character x_{c-1}, the tail is
// (x_0, ..., x_{c-2}). This is the character that the 32-bit reference routine
// looks up last (after XORing the low byte of the accumulator into it):
//
//   t(x)    = tw_0[x_0] ^ ... ^ tw_{c-2}[x_{c-2}]          (in [sigma])
//   head'   = x_{c-1} ^ t(x)                               (twisted head)
//   h_in(x) = S_0[x_0] ^ ... ^ S_{c-2}[x_{c-2}]            (internal hashing)
//   h(x)    = h_in(x) ^ S_{c-1}[head']                     (final shift)
//
// Keys with the same twisted head form a twisted group and share the final
// shift.
class TwistedTables {
 public:
  // Twister words from stream kTwister masked to char_bits, shift words from
  // stream kShift masked to out_bits.
  static TwistedTables fill(const UniverseSpec& spec, std::uint64_t seed);

  // Merged 64-bit layout: word (i, j) = table_word(seed, kSimple, i, j), i.e.
  // the entries of SimpleTables::fill({char_bits, c, 64}, seed). The twister
  // is the low char_bits bits of each tail word and the shift is the high
  // out_bits bits of every word. With char_bits = 8, c = 4, out_bits = 32 this
  // is exactly the layout read by the reference C routine. Requires
  // char_bits + out_bits <= 64.
  static TwistedTables fill_merged(const UniverseSpec& spec, std::uint64_t seed);

  // twister: (c-1) * sigma entries < sigma; shifts: c * sigma entries < 2^r.
  static TwistedTables from_entries(const UniverseSpec& spec, std::vector<std::uint64_t> twister,
                                    std::vector<std::uint64_t> shifts, std::uint64_t seed = 0);

  const UniverseSpec& spec() const noexcept { return spec_; }
  std::uint64_t seed() const noexcept { return seed_; }
  unsigned head_index() const noexcept { return spec_.chars - 1; }

  std::uint64_t twister_entry(unsigned table, std::uint64_t index) const noexcept {
    return twister_[table * spec_.sigma() + index];
  }
  std::uint64_t shift_entry(unsigned table, std::uint64_t index) const noexcept {
    return shifts_[table * spec_.sigma() + index];
  }
  const std::vector<std::uint64_t>& twister() const noexcept { return twister_; }
  const std::vector<std::uint64_t>& shifts() const noexcept { return shifts_; }

  // Unchecked variants; key must be in the universe.
  std::uint64_t twisted_head_unchecked(std::uint64_t key) const noexcept {
    const std::uint64_t sigma = spec_.sigma();
    std::uint64_t t = 0;
    for (unsigned i = 0; i + 1 < spec_.chars; ++i, key >>= spec_.char_bits)
      t ^= twister_[i * sigma + (key & spec_.char_mask())];
    return (key & spec_.char_mask()) ^ t;
  }
  std::uint64_t internal_unchecked(std::uint64_t key) const noexcept {
    const std::uint64_t sigma = spec_.sigma();
    std::uint64_t h = 0;
    for (unsigned i = 0; i + 1 < spec_.chars; ++i, key >>= spec_.char_bits)
      h ^= shifts_[i * sigma + (key & spec_.char_mask())];
    return h;
  }
  std::uint64_t hash_unchecked(std::uint64_t key) const noexcept {
    const std::uint64_t sigma = spec_.sigma();
    const std::uint64_t cm = spec_.char_mask();
    std::uint64_t t = 0;
    std::uint64_t h = 0;
    for (unsigned i = 0; i + 1 < spec_.chars; ++i, key >>= spec_.char_bits) {
      t ^= twister_[i * sigma + (key & cm)];
      h ^= shifts_[i * sigma + (key & cm)];
    }
    return h ^ shifts_[(spec_.chars - 1) * sigma + ((key & cm) ^ t)];
  }

  bool operator==(const TwistedTables&) const = default;

 private:
  TwistedTables(const UniverseSpec& spec, std::uint64_t seed, std::vector<std::uint64_t> twister,
                std::vector<std::uint64_t> shifts)
      : spec_(spec), seed_(seed), twister_(std::move(twister)), shifts_(std::move(shifts)) {}

  UniverseSpec spec_;
  std::uint64_t seed_ = 0;
  std::vector<std::uint64_t> twister_;
  std::vector<std::uint64_t> shifts_;
};

inline TwistedTables fill_twisted(const UniverseSpec& spec, std::uint64_t seed) {
  return TwistedTables::fill(spec, seed);
}

// The twisted head x_{c-1} ^ t(x). Throws RangeError outside the universe.
std::uint64_t twist(const TwistedTables& tables, std::uint64_t key);
// Id of the twisted group of `key`; the same value as twist().
std::uint64_t twisted_group_of(const TwistedTables& tables, std::uint64_t key);
// h_in(x): XOR of the tail shift entries, before the final shift.
std::uint64_t internal_hash(const TwistedTables& tables, std::uint64_t key);
std::uint64_t twisted_hash(const TwistedTables& tables, std::uint64_t key);

// TwistedTables::fill(spec, seed) evaluated lazily, entry by entry.
class SeededTwisted {
 public:
  SeededTwisted(const UniverseSpec& spec, std::uint64_t seed);

  const UniverseSpec& spec() const noexcept { return spec_; }
  std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t hash_unchecked(std::uint64_t key) const noexcept {
    const std::uint64_t cm = spec_.char_mask();
    std::uint64_t t = 0;
    std::uint64_t h = 0;
    for (unsigned i = 0; i + 1 < spec_.chars; ++i, key >>= spec_.char_bits) {
      const auto ch = static_cast<std::uint32_t>(key & cm);
      t ^= gen::table_word(seed_, gen::Stream::kTwister, i, ch);
      h ^= gen::table_word(seed_, gen::Stream::kShift, i, ch);
    }
    const auto head = static_cast<std::uint32_t>((key ^ t) & cm);
    h ^= gen::table_word(seed_, gen::Stream::kShift, spec_.chars - 1, head);
    return h & spec_.out_mask();
  }
  std::uint64_t twisted_head_unchecked(std::uint64_t key) const noexcept {
    const std::uint64_t cm = spec_.char_mask();
    std::uint64_t t = 0;
    for (unsigned i = 0; i + 1 < spec_.chars; ++i, key >>= spec_.char_bits)
      t ^= gen::table_word(seed_, gen::Stream::kTwister, i, static_cast<std::uint32_t>(key & cm));
    return (key ^ t) & cm;
  }
  std::uint64_t internal_unchecked(std::uint64_t key) const noexcept {
    std::uint64_t h = 0;
    for (unsigned i = 0; i + 1 < spec_.chars; ++i, key >>= spec_.char_bits)
      h ^= gen::table_word(seed_, gen::Stream::kShift, i,
                           static_cast<std::uint32_t>(key & spec_.char_mask()));
    return h & spec_.out_mask();
  }

  std::uint64_t operator()(std::uint64_t key) const;

 private:
  UniverseSpec spec_;
  std::uint64_t seed_;
};

}  // namespace tabhash
