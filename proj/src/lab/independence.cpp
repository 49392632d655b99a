#include "tabhash/lab/independence.hpp"

#include <algorithm>
#include <functional>

#include "tabhash/error.hpp"

namespace tabhash::lab {

namespace {

constexpr std::uint64_t kMaxValueTable = std::uint64_t{1} << 24;
constexpr std::uint64_t kMaxTupleSpace = std::uint64_t{1} << 24;

// Every member of the family evaluated on every key: values[f * keys + x].
struct Enumeration {
  std::uint64_t fills = 0;
  std::uint64_t keys = 0;
  std::uint64_t range = 0;
  std::vector<std::uint32_t> values;
};

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t cap,
                          const char* what) {
  std::uint64_t out = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && out > cap / base)
      throw ConfigError(std::string(what) + " exceeds the exhaustive enumeration limit");
    out *= base;
  }
  return out;
}

std::uint64_t bits_field(std::uint64_t f, unsigned pos, unsigned width) {
  return (f >> pos) & low_mask(width);
}

Enumeration enumerate(const FamilySpec& family, const UniverseSpec& spec, std::uint64_t prime) {
  Enumeration e;
  std::function<void(std::uint64_t, std::uint32_t*)> eval_fill;

  switch (family.family) {
    case Family::kSimple: {
      spec.validate();
      const std::uint64_t entries = spec.chars * spec.sigma();
      e.fills = checked_pow(2, entries * spec.out_bits, kMaxExhaustiveFills, "table-fill space");
      e.keys = std::uint64_t{1} << spec.key_bits();
      e.range = std::uint64_t{1} << spec.out_bits;
      eval_fill = [&, entries](std::uint64_t f, std::uint32_t* out) {
        std::vector<std::uint64_t> t(entries);
        for (std::uint64_t j = 0; j < entries; ++j)
          t[j] = bits_field(f, static_cast<unsigned>(j * spec.out_bits), spec.out_bits);
        const auto tables = SimpleTables::from_entries(spec, std::move(t));
        for (std::uint64_t x = 0; x < e.keys; ++x)
          out[x] = static_cast<std::uint32_t>(tables.hash_unchecked(x));
      };
      break;
    }
    case Family::kTwisted: {
      spec.validate();
      if (spec.chars < 2) throw ConfigError("twisted tabulation needs c >= 2");
      const std::uint64_t tw_entries = (spec.chars - 1) * spec.sigma();
      const std::uint64_t sh_entries = spec.chars * spec.sigma();
      const std::uint64_t tw_bits = tw_entries * spec.char_bits;
      e.fills = checked_pow(2, tw_bits + sh_entries * spec.out_bits, kMaxExhaustiveFills,
                            "table-fill space");
      e.keys = std::uint64_t{1} << spec.key_bits();
      e.range = std::uint64_t{1} << spec.out_bits;
      eval_fill = [&, tw_entries, sh_entries, tw_bits](std::uint64_t f, std::uint32_t* out) {
        std::vector<std::uint64_t> tw(tw_entries);
        std::vector<std::uint64_t> sh(sh_entries);
        for (std::uint64_t j = 0; j < tw_entries; ++j)
          tw[j] = bits_field(f, static_cast<unsigned>(j * spec.char_bits), spec.char_bits);
        for (std::uint64_t j = 0; j < sh_entries; ++j)
          sh[j] = bits_field(f, static_cast<unsigned>(tw_bits + j * spec.out_bits), spec.out_bits);
        const auto tables = TwistedTables::from_entries(spec, std::move(tw), std::move(sh));
        for (std::uint64_t x = 0; x < e.keys; ++x)
          out[x] = static_cast<std::uint32_t>(tables.hash_unchecked(x));
      };
      break;
    }
    case Family::kPoly: {
      if (prime < 2) throw ConfigError("exhaustive poly check needs a toy prime");
      if (spec.out_bits < 1 || spec.out_bits > 64) throw ConfigError("out_bits must be in 1..64");
      const unsigned k = family.poly_k;
      e.fills = checked_pow(prime, k, kMaxExhaustiveFills, "coefficient space");
      e.keys = prime;
      e.range = spec.out_bits < 64 && (std::uint64_t{1} << spec.out_bits) < prime
                    ? std::uint64_t{1} << spec.out_bits
                    : prime;
      eval_fill = [&, k](std::uint64_t f, std::uint32_t* out) {
        std::vector<std::uint64_t> coeffs(k);
        for (unsigned i = 0; i < k; ++i, f /= prime) coeffs[i] = f % prime;
        const auto params = PolyHashParams::with_coefficients(std::move(coeffs), spec.out_bits, prime);
        for (std::uint64_t x = 0; x < e.keys; ++x)
          out[x] = static_cast<std::uint32_t>(poly_hash_unchecked(params, x));
      };
      break;
    }
    case Family::kFullyRandom:
      throw ConfigError("the fully-random stand-in has no enumerable table space");
  }

  if (e.keys > kMaxValueTable || e.fills * e.keys > kMaxValueTable)
    throw ConfigError("fills x keys exceeds the exhaustive enumeration limit");
  e.values.resize(e.fills * e.keys);
  for (std::uint64_t f = 0; f < e.fills; ++f) eval_fill(f, e.values.data() + f * e.keys);
  return e;
}

// Frequencies of the hash tuple of `keys` over all fills.
IndependenceWitness tally(const Enumeration& e, const std::vector<std::uint64_t>& keys,
                          std::vector<std::uint64_t>& counts) {
  const std::uint64_t space = counts.size();
  std::fill(counts.begin(), counts.end(), 0);
  IndependenceWitness w;
  w.keys = keys;
  w.xor_constant = true;
  for (std::uint64_t f = 0; f < e.fills; ++f) {
    const std::uint32_t* row = e.values.data() + f * e.keys;
    std::uint64_t code = 0;
    std::uint64_t x = 0;
    for (std::uint64_t key : keys) {
      code = code * e.range + row[key];
      x ^= row[key];
    }
    ++counts[code];
    if (f == 0)
      w.xor_value = x;
    else if (x != w.xor_value)
      w.xor_constant = false;
  }
  w.expected_count = e.fills % space == 0 ? e.fills / space : 0;
  const auto [lo, hi] = std::minmax_element(counts.begin(), counts.end());
  w.min_count = *lo;
  w.max_count = *hi;
  w.distinct_tuples = static_cast<std::uint64_t>(
      std::count_if(counts.begin(), counts.end(), [](std::uint64_t v) { return v != 0; }));
  return w;
}

bool is_uniform(const IndependenceWitness& w) {
  return w.expected_count != 0 && w.min_count == w.expected_count && w.max_count == w.expected_count;
}

IndependenceReport base_report(const FamilySpec& family, const UniverseSpec& spec, unsigned k,
                               std::uint64_t prime, const Enumeration& e) {
  IndependenceReport r;
  r.family = family;
  r.spec = spec;
  r.prime = family.family == Family::kPoly ? prime : 0;
  r.k = k;
  r.fills = e.fills;
  r.range = e.range;
  return r;
}

}  // namespace

IndependenceReport exhaustive_independence_check(const FamilySpec& family, const UniverseSpec& spec,
                                                 unsigned k, std::uint64_t prime) {
  if (k < 1) throw ConfigError("k must be at least 1");
  const Enumeration e = enumerate(family, spec, prime);
  if (k > e.keys) throw ConfigError("k exceeds the number of keys in the universe");
  std::vector<std::uint64_t> counts(checked_pow(e.range, k, kMaxTupleSpace, "hash-tuple space"));
  IndependenceReport r = base_report(family, spec, k, prime, e);

  // Uniformity of all k-subsets implies it for every smaller subset, so only
  // k-subsets are enumerated, in lexicographic order.
  std::vector<std::uint64_t> keys(k);
  for (unsigned i = 0; i < k; ++i) keys[i] = i;
  while (true) {
    IndependenceWitness w = tally(e, keys, counts);
    ++r.tuples_checked;
    if (!is_uniform(w)) {
      r.uniform = false;
      r.witness = std::move(w);
      return r;
    }
    int i = static_cast<int>(k) - 1;
    while (i >= 0 && keys[i] == e.keys - k + i) --i;
    if (i < 0) break;
    ++keys[i];
    for (unsigned j = i + 1; j < k; ++j) keys[j] = keys[j - 1] + 1;
  }
  return r;
}

IndependenceReport exhaustive_tuple_check(const FamilySpec& family, const UniverseSpec& spec,
                                          const std::vector<std::uint64_t>& keys,
                                          std::uint64_t prime) {
  if (keys.empty()) throw ConfigError("key tuple is empty");
  const Enumeration e = enumerate(family, spec, prime);
  auto sorted = keys;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw ConfigError("key tuple has repeated keys");
  if (sorted.back() >= e.keys) throw RangeError("key outside the enumerated universe");
  const auto k = static_cast<unsigned>(keys.size());
  std::vector<std::uint64_t> counts(checked_pow(e.range, k, kMaxTupleSpace, "hash-tuple space"));
  IndependenceReport r = base_report(family, spec, k, prime, e);
  IndependenceWitness w = tally(e, keys, counts);
  r.tuples_checked = 1;
  r.uniform = is_uniform(w);
  r.witness = std::move(w);
  return r;
}

}  // namespace tabhash::lab
