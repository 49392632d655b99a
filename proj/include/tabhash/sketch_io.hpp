#pragma once

// JSON form of a sketch:
//
//   {"format": "tabhash-sketch", "version": 1, "kind": "kx-minwise" | "bottom-q",
//    "spec": {"char_bits": 8, "c": 4, "out_bits": 32}, "family": "twisted",
//    "seed_fingerprint": "<hex64>", "q": 128,
//    "values": [["<hex hash>", "<hex key>"], ...]}
//
// 64-bit quantities are hex strings so the record survives JSON readers that
// use doubles.

#include <nlohmann/json.hpp>

#include "tabhash/sketch.hpp"

namespace tabhash {

nlohmann::json spec_to_json(const UniverseSpec& spec);
// Rejects unknown fields; out_bits defaults to the key width.
UniverseSpec spec_from_json(const nlohmann::json& j);

nlohmann::json to_json(const KxMinwiseSketch& sketch);
nlohmann::json to_json(const BottomQSketch& sketch);

// Throw ConfigError on a malformed record or violated sketch invariant.
KxMinwiseSketch kx_sketch_from_json(const nlohmann::json& j);
BottomQSketch bottomq_sketch_from_json(const nlohmann::json& j);

std::string hex64(std::uint64_t v);
std::uint64_t parse_hex64(const std::string& s);

}  // namespace tabhash
