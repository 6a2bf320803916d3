#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace grasstqft {

/// Root of every exception raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A documented precondition of an operation does not hold.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Integrand degree differs from the expected dimension of the Quot scheme.
class DimensionMismatch : public DomainError {
 public:
  using DomainError::DomainError;
};

/// kd + |starred data| is not divisible by r.
class SelectionRuleViolation : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Parameters outside the regime where a formula is asserted (e.g. t < 0).
class OutOfRegime : public DomainError {
 public:
  using DomainError::DomainError;
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

/// Two cyclotomic operands live in fields of different order.
class OrderMismatch : public Error {
 public:
  using Error::Error;
};

/// Extraction of a rational from a cyclotomic element with irrational part.
class NonRationalError : public Error {
 public:
  NonRationalError(const std::string& what, std::vector<mpq_class> coeffs)
      : Error(what), coeffs_(std::move(coeffs)) {}
  const std::vector<mpq_class>& coeffs() const { return coeffs_; }

 private:
  std::vector<mpq_class> coeffs_;
};

/// Syntax error in one of the textual mini-languages; offset is 0-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t offset)
      : Error(message + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Ill-typed cobordism composition.
class TypeError : public Error {
 public:
  using Error::Error;
};

/// A consistency check that can only fail through a bug in this library.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace grasstqft
