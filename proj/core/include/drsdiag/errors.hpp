#pragma once

#include <stdexcept>
#include <string>

namespace drsdiag {

/// Malformed user input: bad dimensions, non-finite data, invalid witness.
struct InputError : std::runtime_error {
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// Structurally valid input that this library cannot handle (unsupported
/// prox rule, non-reducible constraint map, ...). Raised at validation
/// time, never mid-run.
struct CapabilityError : std::runtime_error {
  explicit CapabilityError(const std::string& what) : std::runtime_error(what) {}
};

/// An internal iteration failed to converge where it provably should have.
/// Treated as a bug signal, not a user error.
struct NumericalError : std::runtime_error {
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace drsdiag
