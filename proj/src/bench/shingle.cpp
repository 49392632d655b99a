#include "tabhash/bench/shingle.hpp"

#include <algorithm>
#include <cctype>

#include "tabhash/error.hpp"
#include "tabhash/simple_tabulation.hpp"

namespace tabhash::bench {

namespace {

const SimpleTables& fold_tables() {
  static const SimpleTables tables = SimpleTables::fill(UniverseSpec::make(8, 8, 64), kShingleSeed);
  return tables;
}

}  // namespace

std::string normalize(std::string_view text, const ShingleConfig& config) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char ch : text) {
    auto c = static_cast<unsigned char>(ch);
    if (config.collapse_whitespace && std::isspace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back(config.lowercase ? static_cast<char>(std::tolower(c)) : ch);
  }
  return out;
}

std::uint64_t fold_shingle(std::string_view bytes, const UniverseSpec& spec) {
  const SimpleTables& t = fold_tables();
  std::uint64_t acc = t.hash_unchecked(bytes.size());
  for (std::size_t i = 0; i < bytes.size(); i += 8) {
    std::uint64_t block = 0;
    for (std::size_t j = 0; j < 8 && i + j < bytes.size(); ++j)
      block |= std::uint64_t{static_cast<unsigned char>(bytes[i + j])} << (8 * j);
    acc = t.hash_unchecked(acc ^ block);
  }
  return acc & spec.key_mask();
}

std::vector<std::uint64_t> shingle_keys(std::string_view text, const ShingleConfig& config,
                                        const UniverseSpec& spec) {
  if (config.w == 0) throw ConfigError("shingle length w must be at least 1");
  const std::string norm = normalize(text, config);
  std::vector<std::uint64_t> keys;
  if (norm.empty()) return keys;
  const std::string_view s(norm);
  if (s.size() <= config.w) {
    keys.push_back(fold_shingle(s, spec));
    return keys;
  }
  keys.reserve(s.size() - config.w + 1);
  for (std::size_t i = 0; i + config.w <= s.size(); ++i) keys.push_back(fold_shingle(s.substr(i, config.w), spec));
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  return keys;
}

}  // namespace tabhash::bench
