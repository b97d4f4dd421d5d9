#include "marketreg/qr.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "marketreg/errors.hpp"

namespace marketreg {
namespace {

double column_tail_norm(const Matrix& a, std::size_t col, std::size_t from) {
  double scale = 0.0;
  double ssq = 1.0;
  for (std::size_t i = from; i < a.rows(); ++i) {
    const double v = std::fabs(a(i, col));
    if (v == 0.0) continue;
    if (scale < v) {
      ssq = 1.0 + ssq * (scale / v) * (scale / v);
      scale = v;
    } else {
      ssq += (v / scale) * (v / scale);
    }
  }
  return scale * std::sqrt(ssq);
}

void swap_columns(Matrix& a, std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t r = 0; r < a.rows(); ++r) std::swap(a(r, i), a(r, j));
}

// Applies H_k = I - tau v v^T (v[k] = 1, tail stored below the diagonal) to y.
void apply_reflector(const Matrix& packed, std::size_t k, double tau, std::span<double> y) {
  if (tau == 0.0) return;
  double s = y[k];
  for (std::size_t i = k + 1; i < packed.rows(); ++i) s += packed(i, k) * y[i];
  s *= tau;
  y[k] -= s;
  for (std::size_t i = k + 1; i < packed.rows(); ++i) y[i] -= s * packed(i, k);
}

}  // namespace

QrFactors qr_pivoted(const Matrix& x, double rank_tol) {
  if (x.rows() == 0 || x.cols() == 0) throw InvalidInput("qr_pivoted: empty matrix");
  if (!(rank_tol > 0.0) || !std::isfinite(rank_tol))
    throw InvalidInput("qr_pivoted: rank_tol must be positive");
  for (double v : x.entries())
    if (!std::isfinite(v)) throw InvalidInput("qr_pivoted: non-finite entry");

  const std::size_t m = x.rows();
  const std::size_t n = x.cols();
  const std::size_t steps = std::min(m, n);

  QrFactors f;
  f.packed = x;
  f.tau.assign(steps, 0.0);
  f.permutation.resize(n);
  std::iota(f.permutation.begin(), f.permutation.end(), std::size_t{0});
  f.rank_tol = rank_tol;

  Matrix& a = f.packed;
  for (std::size_t k = 0; k < steps; ++k) {
    // Norms are recomputed rather than downdated; the designs here are small.
    std::size_t pivot = k;
    double best = -1.0;
    for (std::size_t j = k; j < n; ++j) {
      const double nj = column_tail_norm(a, j, k);
      if (nj > best) {
        best = nj;
        pivot = j;
      }
    }
    swap_columns(a, k, pivot);
    std::swap(f.permutation[k], f.permutation[pivot]);

    const double alpha = a(k, k);
    const double tail = column_tail_norm(a, k, k + 1);
    if (tail == 0.0) {
      f.tau[k] = 0.0;
      continue;
    }
    const double beta = -std::copysign(std::hypot(alpha, tail), alpha);
    const double tau = (beta - alpha) / beta;
    const double inv = 1.0 / (alpha - beta);
    for (std::size_t i = k + 1; i < m; ++i) a(i, k) *= inv;
    a(k, k) = beta;
    f.tau[k] = tau;

    for (std::size_t j = k + 1; j < n; ++j) {
      double s = a(k, j);
      for (std::size_t i = k + 1; i < m; ++i) s += a(i, k) * a(i, j);
      s *= tau;
      a(k, j) -= s;
      for (std::size_t i = k + 1; i < m; ++i) a(i, j) -= s * a(i, k);
    }
  }

  const double lead = std::fabs(a(0, 0));
  std::size_t rank = 0;
  if (lead > 0.0) {
    while (rank < steps && std::fabs(a(rank, rank)) > rank_tol * lead) ++rank;
  }
  f.rank = rank;
  f.dropped_columns.assign(f.permutation.begin() + static_cast<std::ptrdiff_t>(rank),
                           f.permutation.end());
  std::sort(f.dropped_columns.begin(), f.dropped_columns.end());
  return f;
}

Matrix QrFactors::r() const {
  const std::size_t k = std::min(rows(), cols());
  Matrix out(k, cols());
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < cols(); ++j) out(i, j) = packed(i, j);
  return out;
}

Matrix QrFactors::q() const {
  const std::size_t m = rows();
  const std::size_t k = std::min(rows(), cols());
  Matrix out(m, k);
  Vector e(m);
  for (std::size_t c = 0; c < k; ++c) {
    std::fill(e.begin(), e.end(), 0.0);
    e[c] = 1.0;
    for (std::size_t s = k; s-- > 0;) apply_reflector(packed, s, tau[s], e);
    for (std::size_t i = 0; i < m; ++i) out(i, c) = e[i];
  }
  return out;
}

Matrix QrFactors::permuted(const Matrix& x) const { return x.select_columns(permutation); }

Vector QrFactors::apply_qt(std::span<const double> y) const {
  if (y.size() != rows()) throw InvalidInput("apply_qt: vector length differs from rows");
  Vector out(y.begin(), y.end());
  for (std::size_t k = 0; k < tau.size(); ++k) apply_reflector(packed, k, tau[k], out);
  return out;
}

std::vector<std::size_t> QrFactors::retained_columns() const {
  std::vector<std::size_t> out(permutation.begin(),
                               permutation.begin() + static_cast<std::ptrdiff_t>(rank));
  std::sort(out.begin(), out.end());
  return out;
}

LeastSquaresSolution least_squares_solve(const Matrix& x, std::span<const double> y,
                                         double rank_tol) {
  if (x.rows() != y.size())
    throw InvalidInput("least_squares_solve: X has " + std::to_string(x.rows()) +
                       " rows but y has " + std::to_string(y.size()) + " entries");
  return least_squares_solve(x, qr_pivoted(x, rank_tol), y);
}

LeastSquaresSolution least_squares_solve(const Matrix& x, const QrFactors& f,
                                         std::span<const double> y) {
  if (x.rows() != y.size() || f.rows() != x.rows() || f.cols() != x.cols())
    throw InvalidInput("least_squares_solve: dimension mismatch");
  for (double v : y)
    if (!std::isfinite(v)) throw InvalidInput("least_squares_solve: non-finite response");

  const Vector qty = f.apply_qt(y);
  const std::size_t r = f.rank;
  Vector z(r, 0.0);
  for (std::size_t i = r; i-- > 0;) {
    double s = qty[i];
    for (std::size_t j = i + 1; j < r; ++j) s -= f.packed(i, j) * z[j];
    z[i] = s / f.packed(i, i);
  }

  LeastSquaresSolution out;
  out.coefficients.assign(x.cols(), 0.0);
  for (std::size_t i = 0; i < r; ++i) out.coefficients[f.permutation[i]] = z[i];
  out.rank = r;
  out.dropped_columns = f.dropped_columns;

  double rss = 0.0;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const double e = y[i] - dot(x.row(i), out.coefficients);
    rss += e * e;
  }
  out.rss = rss;
  return out;
}

Matrix unscaled_covariance(const QrFactors& f) {
  const std::size_t r = f.rank;
  if (r == 0) throw DegenerateModel("unscaled_covariance: design has rank 0");

  // Rinv = R11^{-1}, upper triangular.
  Matrix rinv(r, r);
  for (std::size_t c = 0; c < r; ++c) {
    rinv(c, c) = 1.0 / f.packed(c, c);
    for (std::size_t i = c; i-- > 0;) {
      double s = 0.0;
      for (std::size_t j = i + 1; j <= c; ++j) s += f.packed(i, j) * rinv(j, c);
      rinv(i, c) = -s / f.packed(i, i);
    }
  }

  // Pivot-order covariance Rinv * Rinv^T, then reorder to ascending columns.
  std::vector<std::size_t> order(r);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return f.permutation[a] < f.permutation[b]; });

  Matrix cov(r, r);
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = a; b < r; ++b) {
      const std::size_t pa = order[a];
      const std::size_t pb = order[b];
      double s = 0.0;
      for (std::size_t k = std::max(pa, pb); k < r; ++k) s += rinv(pa, k) * rinv(pb, k);
      cov(a, b) = s;
      cov(b, a) = s;
    }
  return cov;
}

}  // namespace marketreg
