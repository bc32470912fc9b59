#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace slval {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// Operands live in different quadratic fields Q(sqrt(d)).
class FieldMismatch : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

/// Argument outside the domain of an operation (e.g. a Cauchy map at x < 0).
class DomainError : public Error {
 public:
  using Error::Error;
};

class SingularMatrix : public Error {
 public:
  explicit SingularMatrix(std::size_t rank)
      : Error("singular matrix (rank " + std::to_string(rank) + ")"), rank_(rank) {}
  std::size_t rank() const noexcept { return rank_; }

 private:
  std::size_t rank_;
};

/// Violated geometric precondition (dimension mismatch, wrong polytope class, ...).
class GeometryError : public Error {
 public:
  using Error::Error;
};

/// An intersection inside an inclusion-exclusion sum could not be formed.
class UnionError : public Error {
 public:
  UnionError(std::vector<std::size_t> tuple, const std::string& why)
      : Error(describe(tuple, why)), tuple_(std::move(tuple)) {}
  const std::vector<std::size_t>& tuple() const noexcept { return tuple_; }

 private:
  static std::string describe(const std::vector<std::size_t>& tuple, const std::string& why) {
    std::string s = "cannot intersect parts {";
    for (std::size_t i = 0; i < tuple.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(tuple[i]);
    }
    return s + "}: " + why;
  }
  std::vector<std::size_t> tuple_;
};

/// An external valuation under test did not produce an answer.
class OracleError : public Error {
 public:
  using Error::Error;
};

}  // namespace slval
