#include <doctest.h>

#include <array>
#include <fstream>
#include <random>
#include <sstream>

#include "tabhash/error.hpp"
#include "tabhash/golden.hpp"
#include "tabhash/hash_function.hpp"
#include "tabhash/lab/independence.hpp"

using namespace tabhash;

namespace {

std::uint64_t splitmix_word(std::uint64_t seed, std::uint64_t i, std::uint64_t j) {
  std::uint64_t z = (seed ^ 0x53494D504C455442ULL) + (((i << 32) | j) + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// The 32-bit reference routine, transcribed with fixed-width types.
std::uint32_t twisted_tab32(std::uint32_t x, const std::uint64_t (&H)[4][256]) {
  int i;
  std::uint64_t h = 0;
  std::uint8_t c;
  for (i = 0; i < 3; i++) {
    c = static_cast<std::uint8_t>(x);
    h ^= H[i][c];
    x = x >> 8;
  }
  c = static_cast<std::uint8_t>(x ^ h);
  h ^= H[i][c];
  h >>= 32;
  return static_cast<std::uint32_t>(h);
}

TwistedTables with_zero_twister(const TwistedTables& t) {
  const auto& s = t.spec();
  return TwistedTables::from_entries(s, std::vector<std::uint64_t>((s.chars - 1) * s.sigma(), 0), t.shifts());
}

SimpleTables shifts_as_simple(const TwistedTables& t) {
  return SimpleTables::from_entries(t.spec(), t.shifts());
}

}  // namespace

TEST_CASE("merged layout matches the 32-bit reference routine") {
  const auto spec = UniverseSpec::make(8, 4, 32u);
  std::mt19937_64 rng(11);
  for (std::uint64_t seed : {1ULL, 2ULL, 0xDEADBEEFULL, 0ULL}) {
    static std::uint64_t H[4][256];
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 256; ++j) H[i][j] = splitmix_word(seed, i, j);
    const auto t = TwistedTables::fill_merged(spec, seed);
    for (std::uint32_t x : {0u, 1u, 0xFFu, 0x100u, 0xFFFFFFFFu, 0x3412u})
      CHECK(twisted_hash(t, x) == twisted_tab32(x, H));
    for (int n = 0; n < 2000; ++n) {
      const auto x = static_cast<std::uint32_t>(rng());
      CHECK(twisted_hash(t, x) == twisted_tab32(x, H));
    }
  }
}

TEST_CASE("committed test vectors verify") {
  const auto file = read_golden(std::string(TABHASH_DATA_DIR) + "/twisted32_seed1.txt");
  CHECK(file.spec == UniverseSpec::make(8, 4, 32u));
  CHECK(file.seed == 1);
  CHECK(file.vectors.size() >= 256);
  CHECK_FALSE(file.generator_checks.empty());
  const auto v = verify_golden(file);
  CHECK(v.ok());
  CHECK(v.checked == file.vectors.size());
}

TEST_CASE("write_golden output verifies and a flipped bit is caught") {
  const auto spec = UniverseSpec::make(8, 4, 32u);
  std::stringstream ss;
  write_golden(ss, spec, 5, {0, 1, 2, 0xABCDEF01}, 4);
  auto file = parse_golden(ss);
  CHECK(file.vectors.size() == 4);
  CHECK(verify_golden(file).ok());
  file.vectors[2].hash ^= 1;
  const auto bad = verify_golden(file);
  REQUIRE_FALSE(bad.ok());
  CHECK(bad.first_mismatch->line == file.vectors[2].line);
}

TEST_CASE("malformed vector files are parse errors with line numbers") {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return parse_golden(in);
  };
  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse("00\t11\n"), ParseError);
  try {
    parse("# spec char_bits=8 c=4 r=32 seed=1\n00000000\t1\nzz\t12\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK(parse("# spec char_bits=8 c=4 r=32 seed=1\n").vectors.empty());
  CHECK(parse("# spec char_bits=8 c=4 r=32 seed=1\n0x10\t0x20\n\n# note\n").vectors.size() == 1);
}

TEST_CASE("zero twister: head is x_{c-1} and the function is simple tabulation") {
  std::mt19937_64 rng(12);
  for (auto spec : {UniverseSpec::make(8, 4, 32u), UniverseSpec::make(4, 3, 16u), UniverseSpec::make(8, 2)}) {
    const auto t = with_zero_twister(TwistedTables::fill(spec, 3));
    const auto s = shifts_as_simple(t);
    for (int n = 0; n < 10000; ++n) {
      const std::uint64_t x = rng() & spec.key_mask();
      CHECK(twist(t, x) == spec.char_at(x, spec.chars - 1));
      CHECK(twisted_hash(t, x) == simple_hash(s, x));
    }
  }
}

TEST_CASE("zero twister agrees with simple tabulation on the whole universe") {
  for (auto spec : {UniverseSpec::make(2, 3, 4u), UniverseSpec::make(4, 2, 8u), UniverseSpec::make(1, 5, 3u)}) {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      const auto t = with_zero_twister(TwistedTables::fill(spec, seed));
      const auto s = shifts_as_simple(t);
      std::uint64_t mismatches = 0;
      for (std::uint64_t x = 0; x <= spec.key_mask(); ++x) mismatches += twisted_hash(t, x) != simple_hash(s, x);
      CHECK(mismatches == 0);
    }
  }
}

TEST_CASE("keys with the same tail share the twister value") {
  const auto spec = UniverseSpec::make(8, 4, 32u);
  const auto t = TwistedTables::fill(spec, 21);
  std::mt19937_64 rng(21);
  const std::uint64_t head_shift = 8 * 3;
  for (int n = 0; n < 1000; ++n) {
    const std::uint64_t tail = rng() & 0xFFFFFF;
    const std::uint64_t a = tail | ((rng() & 0xFF) << head_shift);
    const std::uint64_t b = tail | ((rng() & 0xFF) << head_shift);
    CHECK((twist(t, a) ^ (a >> head_shift)) == (twist(t, b) ^ (b >> head_shift)));
    CHECK(internal_hash(t, a) == internal_hash(t, b));
    // Distinct heads with a shared tail give distinct groups.
    if ((a >> head_shift) != (b >> head_shift)) CHECK(twist(t, a) != twist(t, b));
  }
}

TEST_CASE("the hash decomposes as internal hash XOR final shift of the group") {
  const auto spec = UniverseSpec::make(6, 4, 20u);
  const auto t = TwistedTables::fill(spec, 8);
  std::mt19937_64 rng(8);
  for (int n = 0; n < 1000; ++n) {
    const std::uint64_t x = rng() & spec.key_mask();
    CHECK(twisted_hash(t, x) == (internal_hash(t, x) ^ t.shift_entry(spec.chars - 1, twist(t, x))));
    CHECK(twisted_group_of(t, x) == twist(t, x));
  }
}

TEST_CASE("groups partition the keys") {
  const auto spec = UniverseSpec::make(3, 3, 8u);
  const auto t = TwistedTables::fill(spec, 2);
  std::array<std::uint64_t, 8> sizes{};
  for (std::uint64_t x = 0; x <= spec.key_mask(); ++x) ++sizes[twist(t, x)];
  std::uint64_t total = 0;
  for (auto s : sizes) total += s;
  CHECK(total == spec.key_mask() + 1);
}

TEST_CASE("twisted tabulation needs at least two characters") {
  CHECK_THROWS_AS(TwistedTables::fill(UniverseSpec::make(8, 1), 1), ConfigError);
  CHECK_THROWS_AS(SeededTwisted(UniverseSpec::make(8, 1), 1), ConfigError);
  CHECK_THROWS_AS(TwistedTables::fill_merged(UniverseSpec::make(8, 4, 60u), 1), ConfigError);
}

TEST_CASE("from_entries validates sizes and ranges") {
  const auto spec = UniverseSpec::make(2, 2, 3u);
  CHECK_NOTHROW(TwistedTables::from_entries(spec, std::vector<std::uint64_t>(4, 3), std::vector<std::uint64_t>(8, 7)));
  CHECK_THROWS_AS(TwistedTables::from_entries(spec, std::vector<std::uint64_t>(4, 4), std::vector<std::uint64_t>(8, 0)),
                  ConfigError);
  CHECK_THROWS_AS(TwistedTables::from_entries(spec, std::vector<std::uint64_t>(4, 0), std::vector<std::uint64_t>(8, 8)),
                  ConfigError);
  CHECK_THROWS_AS(TwistedTables::from_entries(spec, std::vector<std::uint64_t>(3, 0), std::vector<std::uint64_t>(8, 0)),
                  ConfigError);
}

TEST_CASE("seeded and materialized twisted tabulation agree") {
  const auto spec = UniverseSpec::make(8, 4, 29u);
  const auto t = TwistedTables::fill(spec, 4);
  const SeededTwisted s(spec, 4);
  std::mt19937_64 rng(4);
  for (int n = 0; n < 2000; ++n) {
    const std::uint64_t x = rng() & spec.key_mask();
    CHECK(s(x) == twisted_hash(t, x));
    CHECK(s.twisted_head_unchecked(x) == twist(t, x));
    CHECK(s.internal_unchecked(x) == internal_hash(t, x));
  }
}

TEST_CASE("exhaustive: twisted tabulation is 3-independent on a tiny universe") {
  const auto spec = UniverseSpec::make(1, 2, 1u);
  const auto r = lab::exhaustive_independence_check(FamilySpec::parse("twisted"), spec, 3);
  CHECK(r.fills == 64);
  CHECK(r.uniform);
  CHECK_FALSE(lab::exhaustive_independence_check(FamilySpec::parse("twisted"), spec, 4).uniform);
}
