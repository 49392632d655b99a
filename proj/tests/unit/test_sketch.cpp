#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "tabhash/error.hpp"
#include "tabhash/sketch.hpp"
#include "tabhash/sketch_io.hpp"

using namespace tabhash;

namespace {

const UniverseSpec kSpec = UniverseSpec::make(8, 4, 32u);
const FamilySpec kTwisted = FamilySpec::parse("twisted");

std::vector<std::uint64_t> random_keys(std::mt19937_64& rng, std::size_t n, const UniverseSpec& spec = kSpec) {
  std::set<std::uint64_t> s;
  while (s.size() < n) s.insert(rng() & spec.key_mask());
  return {s.begin(), s.end()};
}

// Brute-force minimum: scan and keep the first (hash, key)-smallest.
MinEntry scan_min(const HashFunction& h, const std::vector<std::uint64_t>& keys) {
  MinEntry best{h(keys[0]), keys[0]};
  for (std::uint64_t k : keys) {
    const std::uint64_t v = h(k);
    if (v < best.hash || (v == best.hash && k < best.key)) best = {v, k};
  }
  return best;
}

std::vector<MinEntry> sorted_pairs(const HashFunction& h, const std::vector<std::uint64_t>& keys) {
  std::vector<MinEntry> all;
  for (std::uint64_t k : keys) all.push_back({h(k), k});
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

}  // namespace

TEST_CASE("the minimum of a singleton is that key") {
  const auto h = HashFunction::make(kTwisted, kSpec, 1);
  const std::vector<std::uint64_t> one{0x1234};
  CHECK(min_hash_of_set(h, one) == MinEntry{h(0x1234), 0x1234});
  CHECK_THROWS_AS(min_hash_of_set(h, std::span<const std::uint64_t>{}), ConfigError);
}

TEST_CASE("min_hash_of_set agrees with a brute-force scan") {
  std::mt19937_64 rng(1);
  for (const char* f : {"simple", "twisted", "poly-2", "fully-random"}) {
    for (int rep = 0; rep < 100; ++rep) {
      const auto h = HashFunction::make(FamilySpec::parse(f), kSpec, rng());
      const auto keys = random_keys(rng, 5);
      CHECK(min_hash_of_set(h, keys) == scan_min(h, keys));
    }
  }
}

TEST_CASE("ties on the hash are broken by the smaller key") {
  const auto spec = UniverseSpec::make(8, 2, 2u);  // 4 hash values, many collisions
  std::mt19937_64 rng(2);
  for (int rep = 0; rep < 200; ++rep) {
    const auto h = HashFunction::make(kTwisted, spec, rng());
    const auto keys = random_keys(rng, 20, spec);
    CHECK(min_hash_of_set(h, keys) == scan_min(h, keys));
  }
}

TEST_CASE("minimum of a union is the smaller of the two minima") {
  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 1000; ++rep) {
    const auto h = HashFunction::make(kTwisted, kSpec, rng());
    const auto a = random_keys(rng, 1 + rng() % 30);
    const auto b = random_keys(rng, 1 + rng() % 30);
    std::vector<std::uint64_t> u = a;
    u.insert(u.end(), b.begin(), b.end());
    CHECK(min_hash_of_set(h, u) == std::min(min_hash_of_set(h, a), min_hash_of_set(h, b)));
  }
}

TEST_CASE("kx sketch is deterministic and position i is the minimum under function i") {
  std::mt19937_64 rng(4);
  const auto keys = random_keys(rng, 50);
  const auto seeds = sketch_seeds(9, 16);
  const auto s1 = kx_sketch(kTwisted, kSpec, seeds, keys);
  const auto s2 = kx_sketch(kTwisted, kSpec, seeds, keys);
  CHECK(s1 == s2);
  CHECK(s1.q() == 16);
  for (std::size_t i = 0; i < seeds.size(); ++i)
    CHECK(s1.minima[i] == min_hash_of_set(HashFunction::make(kTwisted, kSpec, seeds[i]), keys));

  // q = 1 is a single minwise selection.
  const auto single = kx_sketch(kTwisted, kSpec, std::span(seeds).first(1), keys);
  CHECK(single.minima.size() == 1);
  CHECK(single.minima[0] == s1.minima[0]);
  CHECK(kx_jaccard(s1, s1) == 1.0);
}

TEST_CASE("sketch seeds are the derived family") {
  const auto seeds = sketch_seeds(77, 5);
  for (std::size_t i = 0; i < seeds.size(); ++i) CHECK(seeds[i] == gen::derive_seed(77, i));
  CHECK(std::set<std::uint64_t>(seeds.begin(), seeds.end()).size() == 5);
}

TEST_CASE("kx merge equals the sketch of the union") {
  std::mt19937_64 rng(5);
  const auto seeds = sketch_seeds(3, 32);
  for (int rep = 0; rep < 20; ++rep) {
    const auto a = random_keys(rng, 40), b = random_keys(rng, 25);
    std::vector<std::uint64_t> u = a;
    u.insert(u.end(), b.begin(), b.end());
    CHECK(kx_merge(kx_sketch(kTwisted, kSpec, seeds, a), kx_sketch(kTwisted, kSpec, seeds, b)) ==
          kx_sketch(kTwisted, kSpec, seeds, u));
  }
}

TEST_CASE("bottom-q sketch keeps the q smallest pairs in increasing order") {
  std::mt19937_64 rng(6);
  const auto keys = random_keys(rng, 20);
  const auto h = HashFunction::make(kTwisted, kSpec, 12);
  const auto s = bottomq_sketch(h, keys, 5);
  const auto all = sorted_pairs(h, keys);
  CHECK(s.values == std::vector<MinEntry>(all.begin(), all.begin() + 5));
  CHECK(std::is_sorted(s.values.begin(), s.values.end()));

  CHECK(bottomq_sketch(h, keys, 100).values.size() == 20);
  CHECK(bottomq_sketch(h, std::span<const std::uint64_t>{}, 4).values.empty());
  CHECK_THROWS_AS(bottomq_sketch(h, keys, 0), ConfigError);

  // Duplicated input keys count once.
  std::vector<std::uint64_t> dup = keys;
  dup.insert(dup.end(), keys.begin(), keys.end());
  CHECK(bottomq_sketch(h, dup, 5) == s);
}

TEST_CASE("bottom-q estimate against a direct count") {
  // A = I ∪ A', B = I ∪ B' with |I| = 60, |A'| = |B'| = 40.
  std::mt19937_64 rng(7);
  const auto pool = random_keys(rng, 140);
  std::vector<std::uint64_t> a(pool.begin(), pool.begin() + 100);
  std::vector<std::uint64_t> b(pool.begin(), pool.begin() + 60);
  b.insert(b.end(), pool.begin() + 100, pool.end());
  for (std::size_t q : {1u, 10u, 32u, 140u}) {
    const auto h = HashFunction::make(kTwisted, kSpec, 100 + q);
    const auto sa = bottomq_sketch(h, a, q), sb = bottomq_sketch(h, b, q);

    std::vector<std::uint64_t> u = a;
    u.insert(u.end(), b.begin(), b.end());
    const auto bottom = sorted_pairs(h, u);
    const std::set<std::uint64_t> in_a(a.begin(), a.end()), in_b(b.begin(), b.end());
    std::size_t both = 0;
    for (std::size_t i = 0; i < std::min(q, bottom.size()); ++i)
      both += in_a.count(bottom[i].key) && in_b.count(bottom[i].key);
    CHECK(bottomq_jaccard(sa, sb) == doctest::Approx(static_cast<double>(both) / q));
  }
}

TEST_CASE("bottom-q merge equals the sketch of the union") {
  std::mt19937_64 rng(8);
  const auto h = HashFunction::make(kTwisted, kSpec, 8);
  for (int rep = 0; rep < 50; ++rep) {
    const auto a = random_keys(rng, 1 + rng() % 60), b = random_keys(rng, 1 + rng() % 60);
    std::vector<std::uint64_t> u = a;
    u.insert(u.end(), b.begin(), b.end());
    CHECK(bottomq_merge(bottomq_sketch(h, a, 16), bottomq_sketch(h, b, 16)) == bottomq_sketch(h, u, 16));
  }
}

TEST_CASE("identical sets estimate 1 and disjoint sets 0") {
  std::mt19937_64 rng(9);
  const auto pool = random_keys(rng, 200);
  const std::vector<std::uint64_t> a(pool.begin(), pool.begin() + 100), b(pool.begin() + 100, pool.end());
  const auto seeds = sketch_seeds(1, 64);
  CHECK(kx_jaccard(kx_sketch(kTwisted, kSpec, seeds, a), kx_sketch(kTwisted, kSpec, seeds, a)) == 1.0);
  CHECK(kx_jaccard(kx_sketch(kTwisted, kSpec, seeds, a), kx_sketch(kTwisted, kSpec, seeds, b)) == 0.0);
  const auto h = HashFunction::make(kTwisted, kSpec, 1);
  CHECK(bottomq_jaccard(bottomq_sketch(h, a, 64), bottomq_sketch(h, a, 64)) == 1.0);
  CHECK(bottomq_jaccard(bottomq_sketch(h, a, 64), bottomq_sketch(h, b, 64)) == 0.0);
}

TEST_CASE("misaligned sketches are rejected") {
  std::mt19937_64 rng(10);
  const auto keys = random_keys(rng, 30);
  const auto a = kx_sketch(kTwisted, kSpec, sketch_seeds(1, 8), keys);
  CHECK_THROWS_AS(kx_jaccard(a, kx_sketch(kTwisted, kSpec, sketch_seeds(2, 8), keys)), AlignmentError);
  CHECK_THROWS_AS(kx_jaccard(a, kx_sketch(kTwisted, kSpec, sketch_seeds(1, 9), keys)), AlignmentError);
  CHECK_THROWS_AS(kx_jaccard(a, kx_sketch(FamilySpec::parse("simple"), kSpec, sketch_seeds(1, 8), keys)),
                  AlignmentError);
  CHECK_THROWS_AS(kx_merge(a, kx_sketch(kTwisted, UniverseSpec::make(8, 4, 31u), sketch_seeds(1, 8), keys)),
                  AlignmentError);

  const auto h1 = HashFunction::make(kTwisted, kSpec, 1), h2 = HashFunction::make(kTwisted, kSpec, 2);
  CHECK_THROWS_AS(bottomq_jaccard(bottomq_sketch(h1, keys, 8), bottomq_sketch(h2, keys, 8)), AlignmentError);
  CHECK_THROWS_AS(bottomq_jaccard(bottomq_sketch(h1, keys, 8), bottomq_sketch(h1, keys, 4)), AlignmentError);
}

TEST_CASE("sketch JSON round trip") {
  std::mt19937_64 rng(11);
  const auto keys = random_keys(rng, 30);
  const auto kx = kx_sketch(kTwisted, kSpec, sketch_seeds(5, 8), keys);
  CHECK(kx_sketch_from_json(to_json(kx)) == kx);
  CHECK(kx_sketch_from_json(nlohmann::json::parse(to_json(kx).dump())) == kx);
  const auto bq = bottomq_sketch(HashFunction::make(kTwisted, kSpec, 5), keys, 12);
  CHECK(bottomq_sketch_from_json(to_json(bq)) == bq);

  auto j = to_json(bq);
  j["extra"] = 1;
  CHECK_THROWS_AS(bottomq_sketch_from_json(j), ConfigError);
  j = to_json(bq);
  std::swap(j["values"][0], j["values"][1]);
  CHECK_THROWS_AS(bottomq_sketch_from_json(j), ConfigError);
  j = to_json(kx);
  j["format"] = "other";
  CHECK_THROWS_AS(kx_sketch_from_json(j), ConfigError);
  CHECK_THROWS_AS(bottomq_sketch_from_json(to_json(kx)), ConfigError);

  CHECK(parse_hex64(hex64(0xFEDCBA9876543210ULL)) == 0xFEDCBA9876543210ULL);
  CHECK(spec_from_json(spec_to_json(kSpec)) == kSpec);
}
