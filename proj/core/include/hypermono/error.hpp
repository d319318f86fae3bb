#pragma once

#include <stdexcept>
#include <string>

namespace hypermono {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Out-of-range coordinate, index, parameter, or mismatched shapes.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The requested exact computation exceeds the configured desk-scale limit.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Malformed function file or poset fixture.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// A structural invariant that should hold by construction did not.
/// Raised instead of repairing the data; it signals a bug or a false claim.
class IntegrityError : public Error {
 public:
  using Error::Error;
};

/// A consistent pair handed to routing is not layered.
class NotGoodError : public Error {
 public:
  using Error::Error;
};

}  // namespace hypermono
