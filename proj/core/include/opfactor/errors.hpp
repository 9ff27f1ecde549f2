#pragma once

#include <stdexcept>
#include <string>

namespace opfactor {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live in different variable sets or algebras.
class MismatchError : public Error {
 public:
  using Error::Error;
};

/// Input violates an operation's precondition (zero, wrong length, not homogeneous, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace opfactor
