#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "marketreg/features.hpp"
#include "marketreg/ols.hpp"

namespace marketreg {

struct ModelSummary {
  std::size_t k_params = 0;
  double r_squared = 0.0;
  double adj_r_squared = 0.0;
};

struct EliminationStep {
  std::string removed_column;
  std::size_t removed_index = 0;  // column index in the input dataset
  double removed_p_value = 0.0;
  ModelSummary model_after;
};

struct EliminationTrace {
  double alpha = 0.0;
  // Columns removed up front because the initial design was rank deficient.
  std::vector<std::string> rank_dropped;
  std::vector<EliminationStep> steps;
  // Input-dataset indices of the surviving columns, ascending.
  std::vector<std::size_t> final_columns;
  FitResult final_fit;
  // One column is left and its p-value still exceeds alpha.
  bool no_conforming_model = false;
};

// Classical backward elimination: refit, drop the retained column with the
// largest p-value while it exceeds alpha, one column per round. Ties go to
// the lowest column index. The bias column competes like any other. The last
// column is never removed; if it fails the threshold the trace is flagged.
// Throws DegenerateModel when the rank-reduced design leaves no residual
// degrees of freedom.
EliminationTrace backward_eliminate(const EncodedDataset& data, double alpha,
                                    const FitOptions& options = {});

}  // namespace marketreg
