#pragma once

#include <stdexcept>
#include <string>

namespace majoranon {

// Invalid or inconsistent user-supplied configuration (bad JSON, bad grid
// sizes, unknown keys, out-of-range parameters). Maps to CLI exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A computation produced non-finite values (overflow, NaN in the evolving
// state). Maps to CLI exit code 3.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// Filesystem failures: unreadable input, unwritable output. Maps to CLI exit
// code 4.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// Structural misuse of the API: mixing grids, wrong space (position vs
// momentum) for an operation. Programming errors, not user-config errors.
class ContractError : public std::logic_error {
 public:
  explicit ContractError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace majoranon
