#pragma once

#include <stdexcept>
#include <string>

namespace culogic {

/// Base error for all domain failures (carrier mismatches, malformed input, ...).
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An operation was called with its stated precondition violated
/// (e.g. asking for a residual bound of a non-holding ordering).
struct PreconditionError : Error {
  using Error::Error;
};

} // namespace culogic
