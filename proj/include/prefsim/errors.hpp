#pragma once

#include <stdexcept>
#include <string>

namespace prefsim {

// Dimension or shape mismatch between values that must agree.
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A caller violated a documented precondition (bad range, bad count).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Non-finite inputs reached a numeric routine.
class NumericError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The feature space cannot supply enough distinct comparisons.
class DegenerateSpaceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid run configuration or experiment grid.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace prefsim
