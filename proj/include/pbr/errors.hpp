#pragma once

#include <stdexcept>
#include <string>

namespace pbr {

/// An argument lies outside the range an operation supports.
class BoundsError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// A documented precondition on the inputs does not hold.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Two fields live on incompatible sampling grids.
class DomainMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical certificate failed (e.g. a bound that must hold was violated).
class CheckFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pbr
