#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace marketreg {

// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed arguments: dimension mismatches, non-finite entries.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// Argument outside a special function's or distribution's domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A value a discretizer cannot place (should have been filtered upstream).
class OutOfRange : public Error {
 public:
  using Error::Error;
};

// Rank-zero designs, constant responses and other unfittable models.
class DegenerateModel : public Error {
 public:
  using Error::Error;
};

// Requested inference on a fit with no residual degrees of freedom.
class InferenceUnavailable : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero(std::size_t index, const std::string& what)
      : Error(what), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

// CSV header does not match the expected schema.
class SchemaError : public Error {
 public:
  SchemaError(std::string column, const std::string& what)
      : Error(what), column_(std::move(column)) {}
  const std::string& column() const noexcept { return column_; }

 private:
  std::string column_;
};

// A data cell could not be parsed. Rows are 1-based and count the header.
class ParseError : public Error {
 public:
  ParseError(std::size_t row, std::string column, const std::string& what)
      : Error(what), row_(row), column_(std::move(column)) {}
  std::size_t row() const noexcept { return row_; }
  const std::string& column() const noexcept { return column_; }

 private:
  std::size_t row_;
  std::string column_;
};

}  // namespace marketreg
