#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tabhash {

// Key outside the universe of a UniverseSpec (or outside [p] for the
// polynomial family).
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Invalid parameters: bad UniverseSpec, c = 1 twisted tabulation, a query key
// inside its own set, state space too large to enumerate, ...
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Two sketches that were not built with the same hash functions / q.
class AlignmentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace tabhash
