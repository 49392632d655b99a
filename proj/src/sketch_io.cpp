#include "tabhash/sketch_io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <set>

#include "tabhash/error.hpp"
#include "tabhash/json_fields.hpp"

namespace tabhash {

using nlohmann::json;
using json_fields::reject_unknown;
using json_fields::required;

namespace {

constexpr const char* kFormat = "tabhash-sketch";
constexpr int kVersion = 1;

json entries_to_json(const std::vector<MinEntry>& values) {
  json arr = json::array();
  for (const auto& e : values) arr.push_back({hex64(e.hash), hex64(e.key)});
  return arr;
}

std::vector<MinEntry> entries_from_json(const json& j, const UniverseSpec& spec) {
  if (!j.is_array()) throw ConfigError("'values' must be an array");
  std::vector<MinEntry> out;
  out.reserve(j.size());
  for (const auto& pair : j) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() || !pair[1].is_string())
      throw ConfigError("each value must be a [hash, key] pair of hex strings");
    const MinEntry e{parse_hex64(pair[0].get<std::string>()), parse_hex64(pair[1].get<std::string>())};
    if ((e.hash & ~spec.out_mask()) != 0) throw ConfigError("sketch hash wider than out_bits");
    if (!spec.contains(e.key)) throw ConfigError("sketch key outside the universe");
    out.push_back(e);
  }
  return out;
}

json header(const char* kind, const FamilySpec& family, const UniverseSpec& spec,
            std::uint64_t fingerprint, std::size_t q) {
  return json{{"format", kFormat},          {"version", kVersion},
              {"kind", kind},               {"spec", spec_to_json(spec)},
              {"family", family.name()},    {"seed_fingerprint", hex64(fingerprint)},
              {"q", q}};
}

struct Header {
  FamilySpec family;
  UniverseSpec spec;
  std::uint64_t fingerprint;
  std::size_t q;
  std::vector<MinEntry> values;
};

Header read_header(const json& j, const char* kind) {
  reject_unknown(j, {"format", "version", "kind", "spec", "family", "seed_fingerprint", "q", "values"},
                 "sketch");
  if (required<std::string>(j, "format") != kFormat) throw ConfigError("not a tabhash sketch");
  if (required<int>(j, "version") != kVersion) throw ConfigError("unsupported sketch version");
  if (required<std::string>(j, "kind") != kind)
    throw ConfigError(std::string("expected a ") + kind + " sketch");
  Header h{FamilySpec::parse(required<std::string>(j, "family")), spec_from_json(j.at("spec")),
           parse_hex64(required<std::string>(j, "seed_fingerprint")),
           required<std::size_t>(j, "q"), {}};
  if (h.q == 0) throw ConfigError("q must be at least 1");
  if (!j.contains("values")) throw ConfigError("missing field 'values'");
  h.values = entries_from_json(j.at("values"), h.spec);
  return h;
}

}  // namespace

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::uint64_t parse_hex64(const std::string& s) {
  std::uint64_t v = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v, 16);
  if (s.empty() || ec != std::errc{} || end != s.data() + s.size())
    throw ConfigError("malformed hex value '" + s + "'");
  return v;
}

json spec_to_json(const UniverseSpec& spec) {
  return json{{"char_bits", spec.char_bits}, {"c", spec.chars}, {"out_bits", spec.out_bits}};
}

UniverseSpec spec_from_json(const json& j) {
  reject_unknown(j, {"char_bits", "c", "out_bits"}, "spec");
  const auto char_bits = required<unsigned>(j, "char_bits");
  const auto chars = required<unsigned>(j, "c");
  std::optional<unsigned> out_bits;
  if (j.contains("out_bits")) out_bits = required<unsigned>(j, "out_bits");
  return UniverseSpec::make(char_bits, chars, out_bits);
}

json to_json(const KxMinwiseSketch& sketch) {
  json j = header("kx-minwise", sketch.family, sketch.spec, sketch.seed_fingerprint, sketch.q());
  j["values"] = entries_to_json(sketch.minima);
  return j;
}

json to_json(const BottomQSketch& sketch) {
  json j = header("bottom-q", sketch.family, sketch.spec, sketch.seed_fingerprint, sketch.q);
  j["values"] = entries_to_json(sketch.values);
  return j;
}

KxMinwiseSketch kx_sketch_from_json(const json& j) {
  Header h = read_header(j, "kx-minwise");
  if (h.values.size() != h.q) throw ConfigError("k x minwise sketch must hold exactly q minima");
  return KxMinwiseSketch{h.family, h.spec, h.fingerprint, std::move(h.values)};
}

BottomQSketch bottomq_sketch_from_json(const json& j) {
  Header h = read_header(j, "bottom-q");
  if (h.values.size() > h.q) throw ConfigError("bottom-q sketch holds more than q values");
  if (std::adjacent_find(h.values.begin(), h.values.end(),
                         [](const MinEntry& a, const MinEntry& b) { return !(a < b); }) !=
      h.values.end())
    throw ConfigError("bottom-q values must be strictly increasing");
  return BottomQSketch{h.family, h.spec, h.fingerprint, h.q, std::move(h.values)};
}

}  // namespace tabhash
