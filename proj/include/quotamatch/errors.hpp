#pragma once

#include <stdexcept>
#include <string>

namespace quotamatch {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Document is structurally malformed (missing field, wrong shape).
struct SchemaError : Error {
  using Error::Error;
};

/// A field holds an invalid value (bad numeral, quotas out of order, ...).
struct ValueError : Error {
  using Error::Error;
};

/// A document refers to an unknown worker or firm.
struct ReferenceError : Error {
  using Error::Error;
};

/// Operation is not available in the instance's preference mode.
struct ModeError : Error {
  using Error::Error;
};

/// General-mode valuation table has no entry for the requested set.
struct UnknownSetError : Error {
  using Error::Error;
};

/// An enumeration would exceed the configured budget.
struct CapExceeded : Error {
  using Error::Error;
};

/// Solution status does not admit the requested query.
struct StatusError : Error {
  using Error::Error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

/// Payoffs are not derivable from the given assignment.
struct MismatchError : Error {
  using Error::Error;
};

struct PreconditionError : Error {
  using Error::Error;
};

struct UnknownFixture : Error {
  using Error::Error;
};

/// A positive lower quota appears where only upper bounds are supported.
struct LowerBoundPresent : Error {
  using Error::Error;
};

struct MultiFirmError : Error {
  using Error::Error;
};

struct NoFeasibleAssignment : Error {
  using Error::Error;
};

}  // namespace quotamatch
