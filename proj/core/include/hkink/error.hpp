#pragma once

#include <stdexcept>
#include <string>

namespace hkink {

/// Base class for every exception raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live in different spaces (Heisenberg index, grid shape).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An iterative procedure stopped before meeting its tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double achieved)
      : Error(what), achieved_(achieved) {}

  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

}  // namespace hkink
