#include "tabhash/universe.hpp"

#include <cmath>

#include "tabhash/error.hpp"

namespace tabhash {

UniverseSpec UniverseSpec::make(unsigned char_bits, unsigned chars,
                                std::optional<unsigned> out_bits) {
  UniverseSpec spec;
  spec.char_bits = char_bits;
  spec.chars = chars;
  spec.out_bits = out_bits.value_or(char_bits * chars);
  spec.validate();
  return spec;
}

void UniverseSpec::validate() const {
  if (char_bits < 1 || char_bits > 32)
    throw ConfigError("char_bits must be in [1, 32], got " + std::to_string(char_bits));
  if (chars < 1) throw ConfigError("c must be at least 1");
  if (char_bits * chars > 64)
    throw ConfigError("char_bits * c must not exceed 64, got " + std::to_string(char_bits * chars));
  if (out_bits < 1 || out_bits > 64)
    throw ConfigError("out_bits must be in [1, 64], got " + std::to_string(out_bits));
}

void UniverseSpec::check_key(std::uint64_t key) const {
  if (!contains(key))
    throw RangeError("key " + std::to_string(key) + " outside universe of " +
                     std::to_string(key_bits()) + "-bit keys");
}

std::string UniverseSpec::to_string() const {
  return "char_bits=" + std::to_string(char_bits) + " c=" + std::to_string(chars) +
         " r=" + std::to_string(out_bits);
}

std::vector<std::uint32_t> split_key(std::uint64_t key, const UniverseSpec& spec) {
  spec.check_key(key);
  std::vector<std::uint32_t> out(spec.chars);
  for (unsigned i = 0; i < spec.chars; ++i) out[i] = spec.char_at(key, i);
  return out;
}

std::uint64_t join_key(std::span<const std::uint32_t> chars, const UniverseSpec& spec) {
  if (chars.size() != spec.chars)
    throw ConfigError("expected " + std::to_string(spec.chars) + " characters, got " +
                      std::to_string(chars.size()));
  std::uint64_t key = 0;
  for (unsigned i = 0; i < spec.chars; ++i) {
    if (chars[i] > spec.char_mask()) throw RangeError("character out of alphabet");
    key |= static_cast<std::uint64_t>(chars[i]) << (i * spec.char_bits);
  }
  return key;
}

double UnitFraction::to_double() const noexcept {
  return std::ldexp(static_cast<double>(numerator), -static_cast<int>(bits));
}

UnitFraction hash_to_unit(std::uint64_t hash, unsigned out_bits) {
  if (out_bits < 1 || out_bits > 64) throw ConfigError("out_bits must be in [1, 64]");
  if ((hash & ~low_mask(out_bits)) != 0) throw RangeError("hash wider than out_bits");
  return UnitFraction{hash, out_bits};
}

}  // namespace tabhash
