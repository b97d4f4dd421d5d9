#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace marketreg {

using Vector = std::vector<double>;

// Dense row-major matrix of finite doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  // Throws InvalidInput if entries.size() != rows * cols or any entry is not finite.
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries);
  // Nested-list literal; every row must have the same length.
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix from_columns(const std::vector<Vector>& columns);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  Vector column(std::size_t c) const;

  std::span<const double> entries() const noexcept { return data_; }

  Matrix transposed() const;
  // Columns in the given order; indices may repeat.
  Matrix select_columns(std::span<const std::size_t> indices) const;
  Matrix select_rows(std::span<const std::size_t> indices) const;
  // Appends a column on the right.
  Matrix with_column(std::span<const double> values) const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& a, std::span<const double> x);

double frobenius_norm(const Matrix& a);
Matrix operator-(const Matrix& a, const Matrix& b);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);

}  // namespace marketreg
