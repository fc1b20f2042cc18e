#pragma once

#include <stdexcept>
#include <string>

namespace fairdiv {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A bundle references an item index outside 0..m-1.
class InvalidBundle : public Error {
 public:
  using Error::Error;
};

/// An instance or valuation violates a structural invariant.
class InvalidInstance : public Error {
 public:
  using Error::Error;
};

/// An operation was handed a valuation class it does not support.
class UnsupportedValuation : public Error {
 public:
  using Error::Error;
};

/// An exhaustive enumeration would exceed the configured budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Cut-and-choose iteration cap reached; the input is not MMS-feasible.
class NonTermination : public Error {
 public:
  using Error::Error;
};

/// A random sampler exhausted its rejection limit.
class RejectionLimit : public Error {
 public:
  using Error::Error;
};

}  // namespace fairdiv
