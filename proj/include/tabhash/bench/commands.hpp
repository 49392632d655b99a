#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tabhash/lab/bias.hpp"

namespace tabhash::bench {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // a verification or assertion failed
inline constexpr int kExitUsage = 2;    // bad usage, config or input file

enum class OutputFormat { kCsv, kJson };

OutputFormat parse_format(const std::string& name);

struct CommandOptions {
  std::optional<std::string> config;
  std::optional<std::string> out;   // overrides the section's "out"
  std::optional<std::uint64_t> seed;  // overrides the section's base_seed
  unsigned threads = 1;
  std::optional<OutputFormat> format;
  std::optional<std::string> input;  // verify-vectors file
};

struct CalibrateOptions {
  std::optional<std::string> out;    // write a fresh baseline here
  std::optional<std::string> check;  // regression-check against this baseline
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::vector<std::string> only;     // reference names; empty means all
};

// Each command writes its result to `out` (or the configured file), warnings
// and diagnostics to `err`, and returns an exit code. ConfigError and
// ParseError propagate to the caller.
int cmd_bias(const CommandOptions& opts, std::ostream& out, std::ostream& err);
int cmd_similarity(const CommandOptions& opts, std::ostream& out, std::ostream& err);
int cmd_verify_vectors(const CommandOptions& opts, std::ostream& out, std::ostream& err);
int cmd_groups(const CommandOptions& opts, std::ostream& out, std::ostream& err);
int cmd_independence(const CommandOptions& opts, std::ostream& out, std::ostream& err);
int cmd_calibrate(const CalibrateOptions& opts, std::ostream& out, std::ostream& err);

// %.10g.
std::string format_number(double v);

struct BiasRow {
  std::string family;
  std::string generator;
  lab::BiasReport report;
};

// "# config=<json>" line, header, then one line per row in the given order.
void write_bias_csv(std::ostream& out, const nlohmann::json& config, const std::vector<BiasRow>& rows);

}  // namespace tabhash::bench
