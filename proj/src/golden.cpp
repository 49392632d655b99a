#include "tabhash/golden.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>

#include "tabhash/error.hpp"
#include "tabhash/generator.hpp"
#include "tabhash/twisted_tabulation.hpp"

namespace tabhash {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

template <class Int>
bool parse_int(std::string_view s, Int& out, int base) {
  if (base == 16 && s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) s.remove_prefix(2);
  if (s.empty()) return false;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), out, base);
  return ec == std::errc{} && end == s.data() + s.size();
}

// "key=value" fields of the header line.
std::optional<std::string_view> field(std::string_view line, std::string_view name) {
  std::size_t pos = 0;
  while (pos < line.size()) {
    const std::size_t end = line.find(' ', pos);
    const std::string_view tok = line.substr(pos, end == std::string_view::npos ? end : end - pos);
    if (tok.size() > name.size() && tok.substr(0, name.size()) == name && tok[name.size()] == '=')
      return tok.substr(name.size() + 1);
    if (end == std::string_view::npos) break;
    pos = end + 1;
  }
  return std::nullopt;
}

void parse_header(std::string_view line, GoldenFile& file) {
  constexpr std::string_view kPrefix = "# spec ";
  if (line.substr(0, kPrefix.size()) != kPrefix)
    throw ParseError(1, "expected header '# spec char_bits=<n> c=<n> r=<n> seed=<u64>'");
  line.remove_prefix(kPrefix.size());
  unsigned char_bits = 0, chars = 0, out_bits = 0;
  std::uint64_t seed = 0;
  auto get = [&](std::string_view name, auto& out) {
    const auto v = field(line, name);
    if (!v || !parse_int(*v, out, 10))
      throw ParseError(1, "header is missing a valid '" + std::string(name) + "=' field");
  };
  get("char_bits", char_bits);
  get("c", chars);
  get("r", out_bits);
  get("seed", seed);
  try {
    file.spec = UniverseSpec::make(char_bits, chars, out_bits);
  } catch (const ConfigError& e) {
    throw ParseError(1, e.what());
  }
  file.seed = seed;
}

// "# H[i][j]=<hex>"; nullopt for any other comment.
std::optional<GeneratorCheck> parse_check(std::string_view line, std::size_t lineno) {
  constexpr std::string_view kPrefix = "# H[";
  if (line.substr(0, kPrefix.size()) != kPrefix) return std::nullopt;
  line.remove_prefix(kPrefix.size());
  const auto close1 = line.find("][");
  const auto close2 = line.find("]=");
  GeneratorCheck check;
  check.line = lineno;
  if (close1 == std::string_view::npos || close2 == std::string_view::npos || close2 < close1 ||
      !parse_int(line.substr(0, close1), check.table, 10) ||
      !parse_int(line.substr(close1 + 2, close2 - close1 - 2), check.index, 10) ||
      !parse_int(trim(line.substr(close2 + 2)), check.word, 16))
    throw ParseError(lineno, "malformed generator check, expected '# H[i][j]=<hex64>'");
  return check;
}

}  // namespace

GoldenFile parse_golden(std::istream& in) {
  GoldenFile file;
  std::string raw;
  std::size_t lineno = 0;
  bool have_header = false;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string_view line = trim(raw);
    if (!have_header) {
      parse_header(line, file);
      have_header = true;
      continue;
    }
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (auto check = parse_check(line, lineno)) {
        if (check->table >= file.spec.chars || check->index >= file.spec.sigma())
          throw ParseError(lineno, "generator check indexes outside the tables");
        file.generator_checks.push_back(*check);
      }
      continue;
    }
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos) throw ParseError(lineno, "expected 'hex_key<TAB>hex_hash'");
    GoldenVector v;
    v.line = lineno;
    if (!parse_int(trim(line.substr(0, tab)), v.key, 16))
      throw ParseError(lineno, "malformed hex key");
    if (!parse_int(trim(line.substr(tab + 1)), v.hash, 16))
      throw ParseError(lineno, "malformed hex hash");
    if (!file.spec.contains(v.key)) throw ParseError(lineno, "key outside the universe");
    file.vectors.push_back(v);
  }
  if (!have_header) throw ParseError(1, "empty file, expected header");
  return file;
}

GoldenFile read_golden(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open " + path);
  return parse_golden(in);
}

void write_golden(std::ostream& out, const UniverseSpec& spec, std::uint64_t seed,
                  const std::vector<std::uint64_t>& keys, unsigned check_entries) {
  const TwistedTables tables = TwistedTables::fill_merged(spec, seed);
  out << "# spec char_bits=" << spec.char_bits << " c=" << spec.chars << " r=" << spec.out_bits
      << " seed=" << seed << '\n';
  char buf[64];
  for (unsigned j = 0; j < check_entries && j < spec.sigma(); ++j) {
    std::snprintf(buf, sizeof buf, "# H[0][%u]=%016llx\n", j,
                  static_cast<unsigned long long>(gen::table_word(seed, gen::Stream::kSimple, 0, j)));
    out << buf;
  }
  const int key_digits = static_cast<int>((spec.key_bits() + 3) / 4);
  const int hash_digits = static_cast<int>((spec.out_bits + 3) / 4);
  for (std::uint64_t key : keys) {
    std::snprintf(buf, sizeof buf, "%0*llx\t%0*llx\n", key_digits,
                  static_cast<unsigned long long>(key), hash_digits,
                  static_cast<unsigned long long>(twisted_hash(tables, key)));
    out << buf;
  }
}

GoldenVerdict verify_golden(const GoldenFile& file) {
  GoldenVerdict verdict;
  for (const auto& check : file.generator_checks) {
    const std::uint64_t word = gen::table_word(file.seed, gen::Stream::kSimple, check.table, check.index);
    if (word != check.word) {
      verdict.first_mismatch = GoldenMismatch{
          check.line, "generator word H[" + std::to_string(check.table) + "][" +
                          std::to_string(check.index) + "] differs from the table fill"};
      return verdict;
    }
  }
  const TwistedTables tables = TwistedTables::fill_merged(file.spec, file.seed);
  for (const auto& v : file.vectors) {
    const std::uint64_t got = tables.hash_unchecked(v.key);
    ++verdict.checked;
    if (got != v.hash) {
      char buf[128];
      std::snprintf(buf, sizeof buf, "key %llx: expected %llx, computed %llx",
                    static_cast<unsigned long long>(v.key), static_cast<unsigned long long>(v.hash),
                    static_cast<unsigned long long>(got));
      verdict.first_mismatch = GoldenMismatch{v.line, buf};
      return verdict;
    }
  }
  return verdict;
}

}  // namespace tabhash
