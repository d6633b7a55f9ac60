#ifndef TRAWL_ERRORS_HPP
#define TRAWL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace trawl {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad model/family configuration (unknown family, inconsistent parameters).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Numeric argument outside the operation's domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A moment required by the operation does not exist for the chosen seed.
class UnsupportedMomentError : public Error {
 public:
  using Error::Error;
};

/// Asymptotic-theory preconditions (short memory, summability) are violated.
class AssumptionViolationError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file; message carries the offending line number.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Input rows out of order (nonmonotone or duplicate timestamps).
class DataOrderError : public Error {
 public:
  using Error::Error;
};

/// Optimizer failed to converge within its restart budget.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace trawl

#endif  // TRAWL_ERRORS_HPP
