#pragma once

#include <stdexcept>
#include <string>

namespace banditlab {

// Invalid parameters or configuration supplied by the caller.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An internal invariant failed while running a simulation or analysis.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Reading or writing output artifacts failed.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace banditlab
