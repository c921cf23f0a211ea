#pragma once

#include <stdexcept>
#include <string>

namespace uadirac {

/// Invalid grid, model or experiment parameters. Raised before any compute.
class ConfigError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical consistency check failed (singular factorization, a
/// functional that should be real came out complex, ...).
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Non-finite values appeared while time stepping.
class DivergenceError : public NumericalError {
public:
  DivergenceError(long step, const std::string& what)
      : NumericalError("diverged at step " + std::to_string(step) + ": " + what), step_(step) {}
  long step() const noexcept { return step_; }

private:
  long step_;
};

} // namespace uadirac
