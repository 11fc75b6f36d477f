#pragma once

#include <stdexcept>
#include <string>

namespace mcm {

/// Malformed or unsupported input (parse failures, inhomogeneous data,
/// unsupported characteristic, field constraints of a catalog).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller broke a precondition: dimension mismatch, operands from
/// different rings, non-MCM input to a functor that requires it.
class UsageError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A bounded computation could not decide. The message names the bound
/// that was hit.
class Inconclusive : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mcm
