#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace balsched {

// Invalid run parameters: bad horizon, non-positive counts, impossible thresholds.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Sample variance needs at least two schedules (the L - 1 denominator vanishes).
struct DegenerateVarianceError : ConfigError {
    using ConfigError::ConfigError;
};

// A cross-reference broke: unknown or duplicate job id, partition violation.
struct IntegrityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input file. `line` is 1-based and already part of the message.
struct ParseError : std::runtime_error {
    ParseError(const std::string& message, std::size_t line_no)
        : std::runtime_error(message + " (line " + std::to_string(line_no) + ")"),
          line(line_no) {}

    std::size_t line;
};

}  // namespace balsched
