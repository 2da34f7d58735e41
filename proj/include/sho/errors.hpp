#pragma once

#include <stdexcept>
#include <string>

namespace sho {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A parameter or argument lies outside its mathematical domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

// An operation was requested on an inadmissible or degenerate branch.
class BranchError : public Error {
 public:
  using Error::Error;
};

// A shooting bracket does not straddle a sign change of the terminal value.
class BracketError : public Error {
 public:
  using Error::Error;
};

// A Gaussian moment with exponent <= -1 (the integral does not exist).
class DivergentIntegralError : public Error {
 public:
  using Error::Error;
};

// A series-comparison precondition A_j >= B_j > 0 failed at some index.
class OrderingError : public Error {
 public:
  OrderingError(const std::string& what, long index)
      : Error(what), offending_index(index) {}
  long offending_index;
};

// A finite-difference grid is too coarse for the requested tolerance.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

}  // namespace sho
