#include "tabhash/simple_tabulation.hpp"

#include <string>

#include "tabhash/error.hpp"

namespace tabhash {

namespace {

// Tables beyond this many entries are refused rather than allocated.
constexpr std::uint64_t kMaxEntries = std::uint64_t{1} << 28;

void check_materializable(const UniverseSpec& spec, std::uint64_t tables) {
  spec.validate();
  if (spec.char_bits > 28 || tables * spec.sigma() > kMaxEntries)
    throw ConfigError("tables for " + spec.to_string() + " are too large to materialize");
}

}  // namespace

SimpleTables SimpleTables::fill(const UniverseSpec& spec, std::uint64_t seed) {
  check_materializable(spec, spec.chars);
  const std::uint64_t sigma = spec.sigma();
  std::vector<std::uint64_t> entries(spec.chars * sigma);
  for (unsigned i = 0; i < spec.chars; ++i)
    for (std::uint64_t j = 0; j < sigma; ++j)
      entries[i * sigma + j] =
          gen::table_word(seed, gen::Stream::kSimple, i, static_cast<std::uint32_t>(j)) &
          spec.out_mask();
  return SimpleTables(spec, seed, std::move(entries));
}

SimpleTables SimpleTables::from_entries(const UniverseSpec& spec,
                                        std::vector<std::uint64_t> entries, std::uint64_t seed) {
  check_materializable(spec, spec.chars);
  if (entries.size() != spec.chars * spec.sigma())
    throw ConfigError("expected " + std::to_string(spec.chars * spec.sigma()) +
                      " table entries, got " + std::to_string(entries.size()));
  for (std::uint64_t e : entries)
    if ((e & ~spec.out_mask()) != 0) throw ConfigError("table entry wider than out_bits");
  return SimpleTables(spec, seed, std::move(entries));
}

std::uint64_t simple_hash(const SimpleTables& tables, std::uint64_t key) {
  tables.spec().check_key(key);
  return tables.hash_unchecked(key);
}

SeededSimple::SeededSimple(const UniverseSpec& spec, std::uint64_t seed) : spec_(spec), seed_(seed) {
  spec_.validate();
}

std::uint64_t SeededSimple::operator()(std::uint64_t key) const {
  spec_.check_key(key);
  return hash_unchecked(key);
}

}  // namespace tabhash
