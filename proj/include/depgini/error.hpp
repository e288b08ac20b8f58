#pragma once

#include <stdexcept>
#include <string>

namespace depgini {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad argument to an evaluation (domain violation, wrong length, a <= 0, ...).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Invalid parameters or data detected while constructing an object.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// The operation is not defined for the given kind of object.
class UnsupportedOperation : public Error {
 public:
  using Error::Error;
};

/// Numerical failure: non-convergence, non-finite values, ...
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// The integrand returned a non-finite value at an interior node.
class EvaluationError : public NumericalError {
 public:
  EvaluationError(const std::string& what, double abscissa)
      : NumericalError(what), abscissa_(abscissa) {}
  double abscissa() const noexcept { return abscissa_; }

 private:
  double abscissa_;
};

/// Should never happen for valid inputs; indicates a library bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace depgini
