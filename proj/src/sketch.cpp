#include "tabhash/sketch.hpp"

#include <algorithm>
#include <iterator>
#include <limits>

#include "tabhash/error.hpp"
#include "tabhash/generator.hpp"

namespace tabhash {

namespace {

MinEntry min_unchecked(const HashFunction& h, std::span<const std::uint64_t> keys) {
  MinEntry best{std::numeric_limits<std::uint64_t>::max(), std::numeric_limits<std::uint64_t>::max()};
  for (std::uint64_t key : keys) {
    const MinEntry e{h.hash_unchecked(key), key};
    if (e < best) best = e;
  }
  return best;
}

void check_keys(const HashFunction& h, std::span<const std::uint64_t> keys) {
  for (std::uint64_t key : keys) (void)h(key);
}

template <class Sketch>
void check_aligned(const Sketch& a, const Sketch& b) {
  if (a.family != b.family) throw AlignmentError("sketches use different hash families");
  if (a.spec != b.spec) throw AlignmentError("sketches use different universes");
  if (a.seed_fingerprint != b.seed_fingerprint)
    throw AlignmentError("sketches were built with different seeds");
}

}  // namespace

MinEntry min_hash_of_set(const HashFunction& h, std::span<const std::uint64_t> keys) {
  if (keys.empty()) throw ConfigError("minimum of an empty set");
  check_keys(h, keys);
  return min_unchecked(h, keys);
}

std::uint64_t seed_fingerprint(std::span<const std::uint64_t> seeds) noexcept {
  std::uint64_t f = gen::mix64(seeds.size());
  for (std::uint64_t s : seeds) f = gen::mix64(f ^ gen::mix64(s + gen::kGoldenGamma));
  return f;
}

std::vector<std::uint64_t> sketch_seeds(std::uint64_t base_seed, std::size_t q) {
  std::vector<std::uint64_t> seeds(q);
  for (std::size_t i = 0; i < q; ++i) seeds[i] = gen::derive_seed(base_seed, i);
  return seeds;
}

KxMinwiseSketch kx_sketch(const FamilySpec& family, const UniverseSpec& spec,
                          std::span<const std::uint64_t> seeds, std::span<const std::uint64_t> keys) {
  if (seeds.empty()) throw ConfigError("k x minwise sketch needs q >= 1 seeds");
  if (keys.empty()) throw ConfigError("sketch of an empty set");
  KxMinwiseSketch sketch{family, spec, seed_fingerprint(seeds), {}};
  sketch.minima.reserve(seeds.size());
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    const HashFunction h = HashFunction::make_for(family, spec, seeds[i], keys.size());
    if (i == 0) check_keys(h, keys);
    sketch.minima.push_back(min_unchecked(h, keys));
  }
  return sketch;
}

double kx_jaccard(const KxMinwiseSketch& a, const KxMinwiseSketch& b) {
  check_aligned(a, b);
  if (a.q() != b.q() || a.q() == 0) throw AlignmentError("sketches have different q");
  std::size_t equal = 0;
  for (std::size_t i = 0; i < a.q(); ++i) equal += a.minima[i] == b.minima[i];
  return static_cast<double>(equal) / static_cast<double>(a.q());
}

KxMinwiseSketch kx_merge(const KxMinwiseSketch& a, const KxMinwiseSketch& b) {
  check_aligned(a, b);
  if (a.q() != b.q()) throw AlignmentError("sketches have different q");
  KxMinwiseSketch out = a;
  for (std::size_t i = 0; i < a.q(); ++i) out.minima[i] = std::min(a.minima[i], b.minima[i]);
  return out;
}

BottomQSketch bottomq_sketch(const HashFunction& h, std::span<const std::uint64_t> keys,
                             std::size_t q) {
  if (q == 0) throw ConfigError("bottom-q sketch needs q >= 1");
  check_keys(h, keys);
  std::vector<MinEntry> all;
  all.reserve(keys.size());
  for (std::uint64_t key : keys) all.push_back({h.hash_unchecked(key), key});
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  if (all.size() > q) all.resize(q);
  const std::uint64_t seed = h.seed();
  return BottomQSketch{h.family(), h.spec(), seed_fingerprint({&seed, 1}), q, std::move(all)};
}

BottomQSketch bottomq_merge(const BottomQSketch& a, const BottomQSketch& b) {
  check_aligned(a, b);
  if (a.q != b.q) throw AlignmentError("sketches have different q");
  BottomQSketch out{a.family, a.spec, a.seed_fingerprint, a.q, {}};
  out.values.reserve(a.values.size() + b.values.size());
  std::set_union(a.values.begin(), a.values.end(), b.values.begin(), b.values.end(),
                 std::back_inserter(out.values));
  if (out.values.size() > a.q) out.values.resize(a.q);
  return out;
}

double bottomq_jaccard(const BottomQSketch& a, const BottomQSketch& b) {
  const BottomQSketch merged = bottomq_merge(a, b);
  std::size_t shared = 0;
  for (const MinEntry& e : merged.values)
    shared += std::binary_search(a.values.begin(), a.values.end(), e) &&
              std::binary_search(b.values.begin(), b.values.end(), e);
  return static_cast<double>(shared) / static_cast<double>(a.q);
}

}  // namespace tabhash
