#pragma once

#include <stdexcept>
#include <string>

namespace qsd {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument does not hold.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DimensionError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// An iterative method hit its iteration cap.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// The instance is outside what the closed-form solvers handle
/// (N >= 3 states in dimension >= 3).
class UnsupportedInstance : public Error {
 public:
  using Error::Error;
};

/// A candidate dual operator violates K >= q_x rho_x, or a weight solve
/// has no nonnegative solution.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

/// A quantity needed for normalization vanished (e.g. a steering outcome
/// that never fires).
class DegenerateError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// Broken internal contract; indicates a bug rather than bad input.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace qsd
