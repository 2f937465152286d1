#pragma once

#include <stdexcept>
#include <string>

namespace wdne {

// Error taxonomy mirrors the CLI exit codes: config=2, data=3, numeric=4.

/// Bad configuration or violated size/range precondition.
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Problem with input data content (unparseable, non-finite, degenerate).
class DataError : public std::runtime_error {
public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical failure (non-convergence, divergence).
class NumericError : public std::runtime_error {
public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace wdne
