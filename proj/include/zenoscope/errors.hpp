#pragma once

#include <stdexcept>
#include <string>

namespace zenoscope {

/// Argument outside the mathematical domain of an operation (negative time, x < 0, ...).
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Spectral-density model that violates its invariants.
class invalid_model_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Time step too coarse for the requested scheme.
class step_size_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Atom state that cannot be normalized.
class invalid_state_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Inconsistent simulation or run configuration.
class configuration_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace zenoscope
