#pragma once

#include <stdexcept>
#include <string>

namespace gkm {

/// Invalid input: bad arity, ring mismatch, out-of-range index, malformed
/// one-line notation or JSON. Maps to CLI exit code 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A configured size cap (group order, matrix columns) was exceeded.
/// Maps to CLI exit code 3.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An identity that must hold by construction failed. Always a bug or a
/// violated precondition deep inside an algorithm.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace gkm
