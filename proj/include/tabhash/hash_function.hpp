#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>

#include "tabhash/generator.hpp"
#include "tabhash/poly_hash.hpp"
#include "tabhash/simple_tabulation.hpp"
#include "tabhash/twisted_tabulation.hpp"
#include "tabhash/universe.hpp"

namespace tabhash {

enum class Family { kSimple, kTwisted, kPoly, kFullyRandom };

// A hash family plus its parameter (the independence k for poly).
struct FamilySpec {
  Family family = Family::kTwisted;
  unsigned poly_k = 2;

  // "simple", "twisted", "poly-<k>", "fully-random".
  static FamilySpec parse(std::string_view name);
  std::string name() const;

  auto operator<=>(const FamilySpec&) const = default;
};

// Stand-in for an ideal hash function: conceptually a table over the whole
// universe filled with independent uniform words,
//   h(x) = mix64(mix64(x ^ a) + b) & (2^r - 1)
// with a, b the first two words of stream kRandom for the seed.
class FullyRandom {
 public:
  FullyRandom(const UniverseSpec& spec, std::uint64_t seed) noexcept
      : spec_(spec),
        seed_(seed),
        a_(gen::table_word(seed, gen::Stream::kRandom, 0, 0)),
        b_(gen::table_word(seed, gen::Stream::kRandom, 0, 1)) {}

  const UniverseSpec& spec() const noexcept { return spec_; }
  std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t hash_unchecked(std::uint64_t key) const noexcept {
    return gen::mix64(gen::mix64(key ^ a_) + b_) & spec_.out_mask();
  }
  std::uint64_t operator()(std::uint64_t key) const;

 private:
  UniverseSpec spec_;
  std::uint64_t seed_;
  std::uint64_t a_;
  std::uint64_t b_;
};

// Whether tabulation families store their tables or regenerate entries on
// each lookup. Both give identical hash values.
enum class Storage { kTables, kSeeded };

// One sampled member of a family: a value type dispatching to the concrete
// function.
class HashFunction {
 public:
  static HashFunction make(const FamilySpec& family, const UniverseSpec& spec, std::uint64_t seed,
                           Storage storage = Storage::kTables);
  // kSeeded when hashing fewer keys than the tables have entries.
  static HashFunction make_for(const FamilySpec& family, const UniverseSpec& spec,
                               std::uint64_t seed, std::size_t key_count);

  explicit HashFunction(SimpleTables tables);
  explicit HashFunction(TwistedTables tables);

  const FamilySpec& family() const noexcept { return family_; }
  const UniverseSpec& spec() const noexcept { return spec_; }
  std::uint64_t seed() const noexcept { return seed_; }

  // Range-checked against the universe (and the prime for poly).
  std::uint64_t operator()(std::uint64_t key) const;
  std::uint64_t hash_unchecked(std::uint64_t key) const noexcept {
    return std::visit(
        [key](const auto& f) -> std::uint64_t {
          if constexpr (std::is_same_v<std::decay_t<decltype(f)>, PolyHashParams>)
            return poly_hash_unchecked(f, key);
          else
            return f.hash_unchecked(key);
        },
        impl_);
  }

 private:
  using Impl =
      std::variant<SimpleTables, SeededSimple, TwistedTables, SeededTwisted, PolyHashParams, FullyRandom>;

  HashFunction(FamilySpec family, UniverseSpec spec, std::uint64_t seed, Impl impl)
      : family_(family), spec_(spec), seed_(seed), impl_(std::move(impl)) {}

  FamilySpec family_;
  UniverseSpec spec_;
  std::uint64_t seed_ = 0;
  Impl impl_;
};

}  // namespace tabhash
