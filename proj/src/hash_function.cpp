#include "tabhash/hash_function.hpp"

#include <charconv>

#include "tabhash/error.hpp"

namespace tabhash {

FamilySpec FamilySpec::parse(std::string_view name) {
  if (name == "simple") return {Family::kSimple, 2};
  if (name == "twisted") return {Family::kTwisted, 2};
  if (name == "fully-random") return {Family::kFullyRandom, 2};
  constexpr std::string_view kPolyPrefix = "poly-";
  if (name.substr(0, kPolyPrefix.size()) == kPolyPrefix) {
    const std::string_view digits = name.substr(kPolyPrefix.size());
    unsigned k = 0;
    const auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (ec == std::errc{} && end == digits.data() + digits.size() && k >= 2 && k <= 64)
      return {Family::kPoly, k};
  }
  throw ConfigError("unknown hash family '" + std::string(name) +
                    "' (expected simple, twisted, poly-<k> with 2 <= k <= 64, fully-random)");
}

std::string FamilySpec::name() const {
  switch (family) {
    case Family::kSimple:
      return "simple";
    case Family::kTwisted:
      return "twisted";
    case Family::kPoly:
      return "poly-" + std::to_string(poly_k);
    case Family::kFullyRandom:
      return "fully-random";
  }
  return "unknown";
}

std::uint64_t FullyRandom::operator()(std::uint64_t key) const {
  spec_.check_key(key);
  return hash_unchecked(key);
}

HashFunction::HashFunction(SimpleTables tables)
    : family_{Family::kSimple}, spec_(tables.spec()), seed_(tables.seed()), impl_(std::move(tables)) {}

HashFunction::HashFunction(TwistedTables tables)
    : family_{Family::kTwisted},
      spec_(tables.spec()),
      seed_(tables.seed()),
      impl_(std::move(tables)) {}

HashFunction HashFunction::make(const FamilySpec& family, const UniverseSpec& spec,
                                std::uint64_t seed, Storage storage) {
  spec.validate();
  switch (family.family) {
    case Family::kSimple:
      if (storage == Storage::kTables) return {family, spec, seed, SimpleTables::fill(spec, seed)};
      return {family, spec, seed, SeededSimple(spec, seed)};
    case Family::kTwisted:
      if (storage == Storage::kTables) return {family, spec, seed, TwistedTables::fill(spec, seed)};
      return {family, spec, seed, SeededTwisted(spec, seed)};
    case Family::kPoly:
      if (spec.key_bits() > 61)
        throw ConfigError("poly family needs keys below 2^61 - 1; universe has " +
                          std::to_string(spec.key_bits()) + "-bit keys");
      return {family, spec, seed, PolyHashParams::make(family.poly_k, spec.out_bits, seed)};
    case Family::kFullyRandom:
      return {family, spec, seed, FullyRandom(spec, seed)};
  }
  throw ConfigError("unknown family");
}

HashFunction HashFunction::make_for(const FamilySpec& family, const UniverseSpec& spec,
                                    std::uint64_t seed, std::size_t key_count) {
  // A lookup costs about as much as generating one table entry.
  const std::uint64_t entries = spec.chars * spec.sigma();
  const bool seeded = spec.char_bits > 20 || key_count < entries;
  return make(family, spec, seed, seeded ? Storage::kSeeded : Storage::kTables);
}

std::uint64_t HashFunction::operator()(std::uint64_t key) const {
  spec_.check_key(key);
  if (family_.family == Family::kPoly && key >= std::get<PolyHashParams>(impl_).prime)
    throw RangeError("key not below the prime modulus");
  return hash_unchecked(key);
}

}  // namespace tabhash
