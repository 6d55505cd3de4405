#pragma once

#include <stdexcept>
#include <string>

namespace tsrk {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Division by zero, incompatible radicands, mixed tensor arity.
class AlgebraError : public Error {
 public:
  using Error::Error;
};

/// Malformed tableau file or scalar literal.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A tableau violates its structural constraints or a builder precondition.
class TableauError : public Error {
 public:
  using Error::Error;
};

/// A right-hand side asked for history outside [t - r, t].
class HistoryRangeError : public Error {
 public:
  using Error::Error;
};

/// Integration failures: implicit tableau, non-finite values, bad start data.
class SolverError : public Error {
 public:
  using Error::Error;
};

}  // namespace tsrk
