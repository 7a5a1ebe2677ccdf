#pragma once

#include <stdexcept>
#include <string>

namespace mcg {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live in free groups (or homology lattices) of different rank.
class RankMismatch : public Error {
 public:
  using Error::Error;
};

/// A twist or auxiliary name could not be resolved in the current context.
class UnresolvedName : public Error {
 public:
  using Error::Error;
};

/// Input violates an operation's precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A structure that should hold by construction does not (model tables, builtins).
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace mcg
