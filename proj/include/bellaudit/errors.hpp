#pragma once

#include <stdexcept>
#include <string>

namespace bellaudit {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad argument to a pure operation (non-unit vector, non-Hermitian operator, ...).
struct InvalidArgument : Error {
  using Error::Error;
};

// Density mass != 1, negative weight, kernel preset/form mismatch.
struct MalformedModel : Error {
  using Error::Error;
};

// Model outside the scope of an operation (e.g. Fine construction on a
// setting-dependent density). what() carries the eligibility reason.
struct IneligibleModel : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

}  // namespace bellaudit
