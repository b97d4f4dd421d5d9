#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "marketreg/matrix.hpp"
#include "oracles.hpp"

namespace testing_helpers {

inline marketreg::Matrix to_matrix(const oracle::Mat& m) {
  std::vector<double> e;
  for (const auto& r : m) e.insert(e.end(), r.begin(), r.end());
  return marketreg::Matrix(m.size(), m.empty() ? 0 : m[0].size(), std::move(e));
}

inline oracle::Mat to_nested(const marketreg::Matrix& m) {
  oracle::Mat out(m.rows(), oracle::Vec(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
  return out;
}

inline double rel_diff(double a, double b) {
  return std::fabs(a - b) / std::max(1.0, std::max(std::fabs(a), std::fabs(b)));
}

}  // namespace testing_helpers
