#pragma once

// Minwise selection and set-similarity sketches.
//
// Hash values are compared under the total order (hash, key): ties on the
// truncated hash are broken in favour of the smaller key, and the arg-min key
// is stored with every value so that sketch comparisons never confuse two
// keys that merely collide.

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include "tabhash/hash_function.hpp"

namespace tabhash {

struct MinEntry {
  std::uint64_t hash = 0;
  std::uint64_t key = 0;

  auto operator<=>(const MinEntry&) const = default;
};

// Minimum of `keys` under (hash, key). Throws ConfigError on an empty set.
MinEntry min_hash_of_set(const HashFunction& h, std::span<const std::uint64_t> keys);

// Order-sensitive digest of a seed list; two sketches are comparable only if
// their fingerprints agree.
std::uint64_t seed_fingerprint(std::span<const std::uint64_t> seeds) noexcept;

// q seeds derived from one base seed: derive_seed(base, 0 .. q-1).
std::vector<std::uint64_t> sketch_seeds(std::uint64_t base_seed, std::size_t q);

struct KxMinwiseSketch {
  FamilySpec family;
  UniverseSpec spec;
  std::uint64_t seed_fingerprint = 0;
  std::vector<MinEntry> minima;  // minima[i] under the function seeded seeds[i]

  std::size_t q() const noexcept { return minima.size(); }
  bool operator==(const KxMinwiseSketch&) const = default;
};

KxMinwiseSketch kx_sketch(const FamilySpec& family, const UniverseSpec& spec,
                          std::span<const std::uint64_t> seeds, std::span<const std::uint64_t> keys);

// Fraction of aligned positions with equal minima. Throws AlignmentError
// unless both sketches share family, spec, seeds and q.
double kx_jaccard(const KxMinwiseSketch& a, const KxMinwiseSketch& b);

// Sketch of A ∪ B from the sketches of A and B.
KxMinwiseSketch kx_merge(const KxMinwiseSketch& a, const KxMinwiseSketch& b);

struct BottomQSketch {
  FamilySpec family;
  UniverseSpec spec;
  std::uint64_t seed_fingerprint = 0;
  std::size_t q = 1;
  std::vector<MinEntry> values;  // strictly increasing, size min(q, |set|)

  bool operator==(const BottomQSketch&) const = default;
};

// The q smallest distinct (hash, key) pairs of the set; empty set gives an
// empty sketch. Throws ConfigError if q == 0.
BottomQSketch bottomq_sketch(const HashFunction& h, std::span<const std::uint64_t> keys,
                             std::size_t q);

// |S(A) ∩ S(B) ∩ bottom_q(S(A) ∪ S(B))| / q.
double bottomq_jaccard(const BottomQSketch& a, const BottomQSketch& b);

BottomQSketch bottomq_merge(const BottomQSketch& a, const BottomQSketch& b);

}  // namespace tabhash
