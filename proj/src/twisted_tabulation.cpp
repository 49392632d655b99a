#include "tabhash/twisted_tabulation.hpp"

#include <string>

#include "tabhash/error.hpp"

namespace tabhash {

namespace {

constexpr std::uint64_t kMaxEntries = std::uint64_t{1} << 28;

void check_twistable(const UniverseSpec& spec) {
  spec.validate();
  if (spec.chars < 2)
    throw ConfigError("twisted tabulation needs c >= 2 (the twister hashes the tail)");
}

void check_materializable(const UniverseSpec& spec) {
  check_twistable(spec);
  if (spec.char_bits > 28 || 2 * spec.chars * spec.sigma() > kMaxEntries)
    throw ConfigError("tables for " + spec.to_string() + " are too large to materialize");
}

}  // namespace

TwistedTables TwistedTables::fill(const UniverseSpec& spec, std::uint64_t seed) {
  check_materializable(spec);
  const std::uint64_t sigma = spec.sigma();
  std::vector<std::uint64_t> twister((spec.chars - 1) * sigma);
  std::vector<std::uint64_t> shifts(spec.chars * sigma);
  for (unsigned i = 0; i < spec.chars; ++i) {
    for (std::uint64_t j = 0; j < sigma; ++j) {
      const auto idx = static_cast<std::uint32_t>(j);
      if (i + 1 < spec.chars)
        twister[i * sigma + j] =
            gen::table_word(seed, gen::Stream::kTwister, i, idx) & spec.char_mask();
      shifts[i * sigma + j] = gen::table_word(seed, gen::Stream::kShift, i, idx) & spec.out_mask();
    }
  }
  return TwistedTables(spec, seed, std::move(twister), std::move(shifts));
}

TwistedTables TwistedTables::fill_merged(const UniverseSpec& spec, std::uint64_t seed) {
  check_materializable(spec);
  if (spec.char_bits + spec.out_bits > 64)
    throw ConfigError("merged layout needs char_bits + out_bits <= 64");
  const std::uint64_t sigma = spec.sigma();
  std::vector<std::uint64_t> twister((spec.chars - 1) * sigma);
  std::vector<std::uint64_t> shifts(spec.chars * sigma);
  for (unsigned i = 0; i < spec.chars; ++i) {
    for (std::uint64_t j = 0; j < sigma; ++j) {
      const std::uint64_t word =
          gen::table_word(seed, gen::Stream::kSimple, i, static_cast<std::uint32_t>(j));
      if (i + 1 < spec.chars) twister[i * sigma + j] = word & spec.char_mask();
      shifts[i * sigma + j] = word >> (64 - spec.out_bits);
    }
  }
  return TwistedTables(spec, seed, std::move(twister), std::move(shifts));
}

TwistedTables TwistedTables::from_entries(const UniverseSpec& spec,
                                          std::vector<std::uint64_t> twister,
                                          std::vector<std::uint64_t> shifts, std::uint64_t seed) {
  check_materializable(spec);
  const std::uint64_t sigma = spec.sigma();
  if (twister.size() != (spec.chars - 1) * sigma)
    throw ConfigError("expected " + std::to_string((spec.chars - 1) * sigma) +
                      " twister entries, got " + std::to_string(twister.size()));
  if (shifts.size() != spec.chars * sigma)
    throw ConfigError("expected " + std::to_string(spec.chars * sigma) + " shift entries, got " +
                      std::to_string(shifts.size()));
  for (std::uint64_t e : twister)
    if (e >= sigma) throw ConfigError("twister entry outside the alphabet");
  for (std::uint64_t e : shifts)
    if ((e & ~spec.out_mask()) != 0) throw ConfigError("shift entry wider than out_bits");
  return TwistedTables(spec, seed, std::move(twister), std::move(shifts));
}

std::uint64_t twist(const TwistedTables& tables, std::uint64_t key) {
  tables.spec().check_key(key);
  return tables.twisted_head_unchecked(key);
}

std::uint64_t twisted_group_of(const TwistedTables& tables, std::uint64_t key) {
  return twist(tables, key);
}

std::uint64_t internal_hash(const TwistedTables& tables, std::uint64_t key) {
  tables.spec().check_key(key);
  return tables.internal_unchecked(key);
}

std::uint64_t twisted_hash(const TwistedTables& tables, std::uint64_t key) {
  tables.spec().check_key(key);
  return tables.hash_unchecked(key);
}

SeededTwisted::SeededTwisted(const UniverseSpec& spec, std::uint64_t seed)
    : spec_(spec), seed_(seed) {
  check_twistable(spec_);
}

std::uint64_t SeededTwisted::operator()(std::uint64_t key) const {
  spec_.check_key(key);
  return hash_unchecked(key);
}

}  // namespace tabhash
