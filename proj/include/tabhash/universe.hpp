#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tabhash {

inline constexpr std::uint64_t low_mask(unsigned bits) noexcept {
  return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
}

// Keys are vectors of `chars` characters of `char_bits` bits each, packed into
// one machine word with character 0 in the least significant position.
// Hash values are `out_bits` wide.
struct UniverseSpec {
  unsigned char_bits = 8;
  unsigned chars = 4;
  unsigned out_bits = 32;

  // Validating constructor; out_bits defaults to the key width.
  static UniverseSpec make(unsigned char_bits, unsigned chars,
                           std::optional<unsigned> out_bits = std::nullopt);

  // Throws ConfigError unless 1 <= char_bits <= 32, chars >= 1,
  // char_bits * chars <= 64 and 1 <= out_bits <= 64.
  void validate() const;

  std::uint64_t sigma() const noexcept { return std::uint64_t{1} << char_bits; }
  unsigned key_bits() const noexcept { return char_bits * chars; }
  std::uint64_t key_mask() const noexcept { return low_mask(key_bits()); }
  std::uint64_t out_mask() const noexcept { return low_mask(out_bits); }
  std::uint64_t char_mask() const noexcept { return low_mask(char_bits); }

  bool contains(std::uint64_t key) const noexcept {
    return key_bits() >= 64 || key < (std::uint64_t{1} << key_bits());
  }
  // Throws RangeError for keys outside the universe.
  void check_key(std::uint64_t key) const;

  std::uint32_t char_at(std::uint64_t key, unsigned i) const noexcept {
    return static_cast<std::uint32_t>((key >> (i * char_bits)) & char_mask());
  }

  std::string to_string() const;

  auto operator<=>(const UniverseSpec&) const = default;
};

// (x_0, ..., x_{c-1}) with x_0 the least significant character.
std::vector<std::uint32_t> split_key(std::uint64_t key, const UniverseSpec& spec);
std::uint64_t join_key(std::span<const std::uint32_t> chars, const UniverseSpec& spec);

// Exact value h / 2^bits in [0, 1). Ordering is integer ordering on the
// numerator; to_double() is only for display.
struct UnitFraction {
  std::uint64_t numerator = 0;
  unsigned bits = 64;

  double to_double() const noexcept;
  auto operator<=>(const UnitFraction&) const = default;
};

UnitFraction hash_to_unit(std::uint64_t hash, unsigned out_bits);

}  // namespace tabhash
