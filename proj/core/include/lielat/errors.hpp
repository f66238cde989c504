#pragma once

#include <stdexcept>
#include <string>

namespace lielat {

/// Invalid input to a constructor (bad rank, malformed type string).
class ConstructionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An argument lies outside the domain of an operation (not a root, not a
/// simple root, node out of range, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A documented hypothesis of an operation does not hold for this input.
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The operation is defined, but not for this class of input.
class UnsupportedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A self-consistency check failed. Always indicates a bug in this library.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace lielat
