#include <doctest.h>

#include <random>
#include <set>

#include "tabhash/error.hpp"
#include "tabhash/generator.hpp"
#include "tabhash/hash_function.hpp"
#include "tabhash/lab/independence.hpp"

using namespace tabhash;

namespace {

// Simple tabulation over explicit 2-character tables (test-side reference).
std::uint64_t xor_of_entries(const SimpleTables& t, std::uint64_t key) {
  std::uint64_t h = 0;
  const auto chars = split_key(key, t.spec());
  for (unsigned i = 0; i < chars.size(); ++i) h ^= t.entry(i, chars[i]);
  return h;
}

}  // namespace

TEST_CASE("split_key slices characters from the least significant end") {
  const auto s2 = UniverseSpec::make(8, 2);
  CHECK(split_key(0x3412, s2) == std::vector<std::uint32_t>{0x12, 0x34});
  CHECK(split_key(0, s2) == std::vector<std::uint32_t>{0, 0});
  const auto s4 = UniverseSpec::make(8, 4);
  CHECK(split_key(0xDEADBEEF, s4) == std::vector<std::uint32_t>{0xEF, 0xBE, 0xAD, 0xDE});
  CHECK(split_key(0, UniverseSpec::make(3, 5)) == std::vector<std::uint32_t>(5, 0));
}

TEST_CASE("split_key and join_key are inverse") {
  std::mt19937_64 rng(3);
  for (auto spec : {UniverseSpec::make(8, 4), UniverseSpec::make(5, 3), UniverseSpec::make(16, 4),
                    UniverseSpec::make(1, 7)}) {
    for (int i = 0; i < 200; ++i) {
      const std::uint64_t key = rng() & spec.key_mask();
      const auto chars = split_key(key, spec);
      CHECK(chars.size() == spec.chars);
      CHECK(join_key(chars, spec) == key);
    }
  }
}

TEST_CASE("keys outside the universe raise RangeError") {
  const auto s = UniverseSpec::make(8, 2);
  CHECK_THROWS_AS(split_key(0x10000, s), RangeError);
  const auto t = SimpleTables::fill(s, 1);
  CHECK_THROWS_AS(simple_hash(t, 0x10000), RangeError);
  CHECK_THROWS_AS(twisted_hash(TwistedTables::fill(s, 1), 0x10000), RangeError);
  CHECK_THROWS_AS(HashFunction::make(FamilySpec::parse("fully-random"), s, 1)(1 << 20), RangeError);
}

TEST_CASE("UniverseSpec validation") {
  CHECK_THROWS_AS(UniverseSpec::make(0, 2), ConfigError);
  CHECK_THROWS_AS(UniverseSpec::make(8, 0), ConfigError);
  CHECK_THROWS_AS(UniverseSpec::make(16, 5), ConfigError);
  CHECK_THROWS_AS(UniverseSpec::make(8, 2, 0u), ConfigError);
  CHECK_THROWS_AS(UniverseSpec::make(8, 2, 65u), ConfigError);
  const auto s = UniverseSpec::make(8, 8);
  CHECK(s.out_bits == 64);
  CHECK(s.key_bits() == 64);
  CHECK(s.contains(~std::uint64_t{0}));
  CHECK(UniverseSpec::make(8, 2).out_bits == 16);
}

TEST_CASE("fill_simple is deterministic and seed dependent") {
  const auto spec = UniverseSpec::make(8, 4);
  const auto a = fill_simple(spec, 42);
  const auto b = fill_simple(spec, 42);
  const auto c = fill_simple(spec, 43);
  CHECK(a == b);
  CHECK_FALSE(a == c);
  CHECK(a.entry_count() == spec.chars * spec.sigma());
  for (std::uint64_t e : a.entries()) CHECK(e <= spec.out_mask());
}

TEST_CASE("simple_hash is the XOR of the selected entries") {
  const auto spec = UniverseSpec::make(8, 2);
  std::vector<std::uint64_t> entries(2 * 256, 0);
  entries[0x12] = 0xABCD;
  entries[256 + 0x34] = 0x1234;
  const auto t = SimpleTables::from_entries(spec, entries);
  CHECK(simple_hash(t, 0x3412) == 0xB9F9);

  const auto zero = SimpleTables::from_entries(spec, std::vector<std::uint64_t>(512, 0));
  for (std::uint64_t key : {0u, 1u, 0x3412u, 0xFFFFu}) CHECK(simple_hash(zero, key) == 0);

  CHECK_THROWS_AS(SimpleTables::from_entries(spec, std::vector<std::uint64_t>(511, 0)), ConfigError);
  entries[3] = 0x10000;
  CHECK_THROWS_AS(SimpleTables::from_entries(spec, entries), ConfigError);
}

TEST_CASE("keys differing in one character differ by two entries of that table") {
  const auto spec = UniverseSpec::make(8, 4);
  const auto t = fill_simple(spec, 9);
  std::mt19937_64 rng(9);
  for (int n = 0; n < 500; ++n) {
    const std::uint64_t x = rng() & spec.key_mask();
    const unsigned i = static_cast<unsigned>(rng() % spec.chars);
    auto chars = split_key(x, spec);
    const auto xi = chars[i];
    chars[i] = static_cast<std::uint32_t>(rng() & spec.char_mask());
    const std::uint64_t y = join_key(chars, spec);
    CHECK((simple_hash(t, x) ^ simple_hash(t, y)) == (t.entry(i, xi) ^ t.entry(i, chars[i])));
    CHECK(simple_hash(t, x) == xor_of_entries(t, x));
  }
}

TEST_CASE("seeded and materialized simple tabulation agree") {
  const auto spec = UniverseSpec::make(8, 4, 27u);
  const auto t = fill_simple(spec, 77);
  const SeededSimple s(spec, 77);
  std::mt19937_64 rng(1);
  for (int n = 0; n < 1000; ++n) {
    const std::uint64_t x = rng() & spec.key_mask();
    CHECK(s(x) == simple_hash(t, x));
  }
}

TEST_CASE("exhaustive: simple tabulation is 3-independent but not 4-independent") {
  const auto spec = UniverseSpec::make(1, 2, 1u);
  const auto three = lab::exhaustive_independence_check(FamilySpec::parse("simple"), spec, 3);
  CHECK(three.fills == 16);
  CHECK(three.uniform);
  CHECK(three.tuples_checked == 4);

  // Every triple: each of the 8 bit patterns occurs in exactly 2 fills.
  for (std::vector<std::uint64_t> keys : {std::vector<std::uint64_t>{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}) {
    const auto r = lab::exhaustive_tuple_check(FamilySpec::parse("simple"), spec, keys);
    CHECK(r.uniform);
    CHECK(r.witness->expected_count == 2);
    CHECK(r.witness->min_count == 2);
    CHECK(r.witness->max_count == 2);
  }

  const auto four = lab::exhaustive_independence_check(FamilySpec::parse("simple"), spec, 4);
  CHECK_FALSE(four.uniform);
  REQUIRE(four.witness);
  CHECK(four.witness->keys == std::vector<std::uint64_t>{0, 1, 2, 3});
  CHECK(four.witness->xor_constant);
  CHECK(four.witness->xor_value == 0);
  CHECK(four.witness->distinct_tuples == 8);
}

TEST_CASE("exhaustive: 2-independence of the polynomial family over p = 31") {
  const auto spec = UniverseSpec::make(5, 1, 5u);
  const auto r = lab::exhaustive_independence_check(FamilySpec::parse("poly-2"), spec, 2, 31);
  CHECK(r.fills == 961);
  CHECK(r.range == 31);
  CHECK(r.tuples_checked == 31 * 30 / 2);
  CHECK(r.uniform);
  CHECK_FALSE(lab::exhaustive_independence_check(FamilySpec::parse("poly-2"), spec, 3, 31).uniform);
  CHECK(lab::exhaustive_independence_check(FamilySpec::parse("poly-3"), spec, 3, 31).uniform);
}

TEST_CASE("exhaustive check refuses large or non-enumerable families") {
  CHECK_THROWS_AS(lab::exhaustive_independence_check(FamilySpec::parse("simple"), UniverseSpec::make(4, 2, 2u), 3),
                  ConfigError);
  CHECK_THROWS_AS(lab::exhaustive_independence_check(FamilySpec::parse("fully-random"), UniverseSpec::make(1, 2, 1u), 2),
                  ConfigError);
  CHECK_THROWS_AS(lab::exhaustive_independence_check(FamilySpec::parse("poly-2"), UniverseSpec::make(5, 1, 5u), 2, 0),
                  ConfigError);
  CHECK_THROWS_AS(lab::exhaustive_independence_check(FamilySpec::parse("simple"), UniverseSpec::make(1, 2, 1u), 5),
                  ConfigError);
}

TEST_CASE("exhaustive checks are reproducible") {
  const auto spec = UniverseSpec::make(1, 3, 1u);
  const auto a = lab::exhaustive_independence_check(FamilySpec::parse("twisted"), spec, 3);
  const auto b = lab::exhaustive_independence_check(FamilySpec::parse("twisted"), spec, 3);
  CHECK(a.uniform == b.uniform);
  CHECK(a.fills == b.fills);
  CHECK(a.tuples_checked == b.tuples_checked);
}

TEST_CASE("poly_hash evaluates the polynomial mod p") {
  const auto p = PolyHashParams::with_coefficients({5, 7}, 64);
  CHECK(poly_hash(p, 0) == 5);
  CHECK(poly_hash(p, 10) == 75);
  const std::uint64_t big = kMersenne61 - 1;
  CHECK(poly_hash(p, big) == static_cast<std::uint64_t>((static_cast<unsigned __int128>(7) * big + 5) % kMersenne61));

  const auto rnd = PolyHashParams::make(2, 16, 5);
  CHECK(poly_hash(rnd, 0) == (rnd.coefficients[0] & 0xFFFF));
  const std::uint64_t x = 123456789;
  const auto expected = static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(rnd.coefficients[1]) * x + rnd.coefficients[0]) % kMersenne61);
  CHECK(poly_hash(rnd, x) == (expected & 0xFFFF));
  CHECK_THROWS_AS(poly_hash(rnd, kMersenne61), RangeError);

  // A generic prime takes the slow path.
  const auto small = PolyHashParams::with_coefficients({3, 4, 2}, 8, 31);
  for (std::uint64_t k = 0; k < 31; ++k) CHECK(poly_hash(small, k) == (3 + 4 * k + 2 * k * k) % 31);
}

TEST_CASE("Horner form matches a direct evaluation for degree 4") {
  const auto p = PolyHashParams::make(5, 61, 17);
  std::mt19937_64 rng(2);
  for (int i = 0; i < 200; ++i) {
    const std::uint64_t x = rng() % kMersenne61;
    unsigned __int128 acc = 0;
    unsigned __int128 pow = 1;
    for (std::uint64_t c : p.coefficients) {
      acc = (acc + pow * c) % kMersenne61;
      pow = (pow * x) % kMersenne61;
    }
    CHECK(poly_hash(p, x) == static_cast<std::uint64_t>(acc));
  }
}

TEST_CASE("hash_to_unit is the exact dyadic fraction") {
  CHECK(hash_to_unit(0, 16).numerator == 0);
  CHECK(hash_to_unit(0, 16).to_double() == 0.0);
  CHECK(hash_to_unit(0x8000, 16).to_double() == 0.5);
  CHECK(hash_to_unit(std::uint64_t{1} << 63, 64).to_double() == 0.5);
  std::mt19937_64 rng(4);
  for (int i = 0; i < 500; ++i) {
    const std::uint64_t a = rng() >> 12, b = rng() >> 12;
    CHECK((hash_to_unit(a, 52) < hash_to_unit(b, 52)) == (a < b));
  }
  CHECK_THROWS_AS(hash_to_unit(0x10000, 16), RangeError);
}

TEST_CASE("family names round trip") {
  for (const char* name : {"simple", "twisted", "poly-2", "poly-20", "fully-random"})
    CHECK(FamilySpec::parse(name).name() == name);
  CHECK_THROWS_AS(FamilySpec::parse("poly-1"), ConfigError);
  CHECK_THROWS_AS(FamilySpec::parse("tabulation"), ConfigError);
}

TEST_CASE("HashFunction storage modes give identical values") {
  std::mt19937_64 rng(5);
  for (const char* f : {"simple", "twisted", "poly-3", "fully-random"}) {
    const auto spec = UniverseSpec::make(8, 4, 20u);
    const auto a = HashFunction::make(FamilySpec::parse(f), spec, 11, Storage::kTables);
    const auto b = HashFunction::make(FamilySpec::parse(f), spec, 11, Storage::kSeeded);
    for (int i = 0; i < 300; ++i) {
      const std::uint64_t x = rng() & spec.key_mask();
      CHECK(a(x) == b(x));
      CHECK(a(x) <= spec.out_mask());
    }
  }
}

TEST_CASE("generator words match an independent splitmix64") {
  // splitmix64 seeded 0 emits 0xE220A8397B1DCDAF first.
  CHECK(gen::mix64(0x9E3779B97F4A7C15ULL) == 0xE220A8397B1DCDAFULL);
  auto ref = [](std::uint64_t seed, std::uint64_t stream, std::uint64_t i, std::uint64_t j) {
    std::uint64_t z = (seed ^ stream) + (((i << 32) | j) + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  };
  std::mt19937_64 rng(6);
  for (int n = 0; n < 200; ++n) {
    const std::uint64_t seed = rng();
    const auto i = static_cast<std::uint32_t>(rng() % 8), j = static_cast<std::uint32_t>(rng());
    CHECK(gen::table_word(seed, gen::Stream::kSimple, i, j) == ref(seed, 0x53494D504C455442ULL, i, j));
    CHECK(gen::table_word(seed, gen::Stream::kShift, i, j) == ref(seed, 0x5348494654544142ULL, i, j));
  }
  gen::WordStream ws(5, gen::Stream::kSet, 2);
  for (std::uint32_t k = 0; k < 10; ++k) CHECK(ws.next() == gen::table_word(5, gen::Stream::kSet, 2, k));
  gen::WordStream b(7, gen::Stream::kSet);
  for (int k = 0; k < 1000; ++k) CHECK(b.below(10) < 10);
}
