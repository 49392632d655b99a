#include "tabhash/lab/sets.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "tabhash/error.hpp"
#include "tabhash/generator.hpp"

namespace tabhash::lab {

namespace {

// `count` distinct values uniform in [0, bound); bound == 0 means 2^64.
std::vector<std::uint64_t> distinct_values(gen::WordStream& words, std::uint64_t bound,
                                           std::size_t count) {
  std::vector<std::uint64_t> out;
  out.reserve(count);
  if (bound != 0 && bound <= (std::uint64_t{1} << 20) && count * 2 > bound) {
    // Dense request: partial Fisher-Yates over the whole range.
    std::vector<std::uint64_t> all(bound);
    std::iota(all.begin(), all.end(), 0);
    for (std::size_t i = 0; i < count; ++i) {
      const std::uint64_t j = i + words.below(bound - i);
      std::swap(all[i], all[j]);
      out.push_back(all[i]);
    }
    return out;
  }
  std::unordered_set<std::uint64_t> seen;
  while (out.size() < count) {
    const std::uint64_t v = bound == 0 ? words.next() : words.below(bound);
    if (seen.insert(v).second) out.push_back(v);
  }
  return out;
}

std::uint64_t universe_size(const UniverseSpec& spec) {
  return spec.key_bits() >= 64 ? 0 : std::uint64_t{1} << spec.key_bits();
}

void check_room(const UniverseSpec& spec, std::size_t n) {
  const std::uint64_t u = universe_size(spec);
  if (u != 0 && n + 1 > u)
    throw ConfigError("set of " + std::to_string(n) + " keys plus a query does not fit in " +
                      std::to_string(spec.key_bits()) + "-bit keys");
}

QuerySet fixed_tail_cube(const UniverseSpec& spec, std::size_t n, gen::WordStream& words) {
  if (spec.chars < 2) throw ConfigError("fixed-tail-cube needs c >= 2");
  const unsigned half_log = n <= 1 ? 0 : static_cast<unsigned>((std::bit_width(n - 1) + 1) / 2);
  const std::uint64_t width = std::uint64_t{1} << half_log;
  const std::uint64_t tails = (n + width - 1) / width;
  const unsigned tail_bits = spec.char_bits * (spec.chars - 1);
  const std::uint64_t tail_space = tail_bits >= 64 ? 0 : std::uint64_t{1} << tail_bits;
  if (width + 1 > spec.sigma() || (tail_space != 0 && tails + 1 > tail_space))
    throw ConfigError("fixed-tail-cube of " + std::to_string(n) + " keys does not fit " +
                      spec.to_string());
  const auto heads = distinct_values(words, spec.sigma(), width + 1);
  const auto tail_values = distinct_values(words, tail_space, tails + 1);
  auto key_of = [&](std::uint64_t tail, std::uint64_t head) { return tail | (head << tail_bits); };
  QuerySet out;
  out.members.reserve(n);
  for (std::uint64_t t = 0; t < tails; ++t)
    for (std::uint64_t h = 0; h < width && out.members.size() < n; ++h)
      out.members.push_back(key_of(tail_values[t], heads[h]));
  out.query = key_of(tail_values[tails], heads[width]);
  return out;
}

}  // namespace

SetGenerator parse_generator(std::string_view name) {
  if (name == "random-distinct") return SetGenerator::kRandomDistinct;
  if (name == "fixed-tail-cube") return SetGenerator::kFixedTailCube;
  if (name == "dense-interval") return SetGenerator::kDenseInterval;
  throw ConfigError("unknown set generator '" + std::string(name) +
                    "' (expected random-distinct, fixed-tail-cube, dense-interval)");
}

std::string generator_name(SetGenerator g) {
  switch (g) {
    case SetGenerator::kRandomDistinct:
      return "random-distinct";
    case SetGenerator::kFixedTailCube:
      return "fixed-tail-cube";
    case SetGenerator::kDenseInterval:
      return "dense-interval";
  }
  return "unknown";
}

QuerySet generate_set(SetGenerator generator, const UniverseSpec& spec, std::size_t n,
                      std::uint64_t seed) {
  spec.validate();
  if (n == 0) throw ConfigError("set size must be at least 1");
  check_room(spec, n);
  gen::WordStream words(seed, gen::Stream::kSet);
  switch (generator) {
    case SetGenerator::kRandomDistinct: {
      auto keys = distinct_values(words, universe_size(spec), n + 1);
      QuerySet out;
      out.query = keys.front();
      out.members.assign(keys.begin() + 1, keys.end());
      return out;
    }
    case SetGenerator::kFixedTailCube:
      return fixed_tail_cube(spec, n, words);
    case SetGenerator::kDenseInterval: {
      // b uniform in [0, u - n - 1] so that q = b + n is still a key.
      const std::uint64_t span = universe_size(spec) - n;
      const std::uint64_t base = words.below(span);
      QuerySet out;
      out.members.resize(n);
      std::iota(out.members.begin(), out.members.end(), base);
      out.query = base + n;
      return out;
    }
  }
  throw ConfigError("unknown set generator");
}

}  // namespace tabhash::lab
