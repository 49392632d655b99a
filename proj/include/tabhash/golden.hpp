#pragma once

// Test-vector file for twisted tabulation in the merged 64-bit layout.
//
//   # spec char_bits=8 c=4 r=32 seed=1
//   # H[0][0]=f06b2bf8a3f5d0a1          (optional generator cross-checks)
//   00000000<TAB>1a2b3c4d
//   ...
//
// The first line is mandatory. Later lines starting with '#' are comments;
// those of the form `# H[i][j]=<hex64>` pin raw generator words (entry j of
// table i of SimpleTables::fill({char_bits, c, 64}, seed)). Every other
// non-empty line is `hex_key<TAB>hex_hash`; an optional 0x prefix is accepted.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tabhash/universe.hpp"

namespace tabhash {

struct GoldenVector {
  std::uint64_t key = 0;
  std::uint64_t hash = 0;
  std::size_t line = 0;
};

struct GeneratorCheck {
  unsigned table = 0;
  std::uint32_t index = 0;
  std::uint64_t word = 0;
  std::size_t line = 0;
};

struct GoldenFile {
  UniverseSpec spec;
  std::uint64_t seed = 0;
  std::vector<GeneratorCheck> generator_checks;
  std::vector<GoldenVector> vectors;
};

// Throws ParseError (with the 1-based line number) on malformed input.
GoldenFile parse_golden(std::istream& in);
GoldenFile read_golden(const std::string& path);

// Writes the header, `check_entries` cross-check words of table 0, and one
// line per key.
void write_golden(std::ostream& out, const UniverseSpec& spec, std::uint64_t seed,
                  const std::vector<std::uint64_t>& keys, unsigned check_entries = 8);

struct GoldenMismatch {
  std::size_t line = 0;
  std::string message;
};

struct GoldenVerdict {
  std::size_t checked = 0;
  std::optional<GoldenMismatch> first_mismatch;
  bool ok() const noexcept { return !first_mismatch; }
};

// Recomputes every vector with TwistedTables::fill_merged(spec, seed).
GoldenVerdict verify_golden(const GoldenFile& file);

}  // namespace tabhash
