#pragma once

#include <stdexcept>
#include <string>

namespace cappedlp {

/// Bad dimensions or out-of-range parameters passed to the library.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An exhaustive enumeration would exceed its configured size cap.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A valid instance that a particular routine does not handle (e.g. p != 2).
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A quantity is mathematically undefined for the given argument.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace cappedlp
