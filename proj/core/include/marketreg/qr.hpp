#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "marketreg/matrix.hpp"

namespace marketreg {

inline constexpr double kDefaultRankTol = 1e-10;

// Householder QR with column pivoting: X * P = Q * R.
//
// `packed` holds R on and above the diagonal and the essential part of each
// Householder vector below it (LAPACK geqp3 layout). permutation[k] is the
// original index of the column factored at position k. Columns whose pivot
// |R[k,k]| falls to rank_tol * |R[0,0]| or below are reported as dropped.
struct QrFactors {
  Matrix packed;
  Vector tau;
  std::vector<std::size_t> permutation;
  std::size_t rank = 0;
  // Original column indices, ascending.
  std::vector<std::size_t> dropped_columns;
  double rank_tol = kDefaultRankTol;

  std::size_t rows() const noexcept { return packed.rows(); }
  std::size_t cols() const noexcept { return packed.cols(); }

  // min(rows, cols) x cols upper-trapezoidal factor.
  Matrix r() const;
  // Thin orthogonal factor, rows x min(rows, cols).
  Matrix q() const;
  // X * P, the input with columns in pivot order.
  Matrix permuted(const Matrix& x) const;
  // Q^T y for a vector of length rows().
  Vector apply_qt(std::span<const double> y) const;
  // Original indices of the retained columns, ascending.
  std::vector<std::size_t> retained_columns() const;
};

QrFactors qr_pivoted(const Matrix& x, double rank_tol = kDefaultRankTol);

struct LeastSquaresSolution {
  // One entry per column of X; dropped columns are exactly 0.
  Vector coefficients;
  std::size_t rank = 0;
  std::vector<std::size_t> dropped_columns;
  double rss = 0.0;
};

LeastSquaresSolution least_squares_solve(const Matrix& x, std::span<const double> y,
                                         double rank_tol = kDefaultRankTol);
// Reuses an existing factorization of x.
LeastSquaresSolution least_squares_solve(const Matrix& x, const QrFactors& factors,
                                         std::span<const double> y);

// (X^T X)^{-1} over the retained columns, indexed in ascending original-column
// order (the order of QrFactors::retained_columns()). Throws DegenerateModel
// for a rank-0 factorization.
Matrix unscaled_covariance(const QrFactors& factors);

}  // namespace marketreg
