#include "marketreg/selection.hpp"

#include <algorithm>

#include "marketreg/errors.hpp"

namespace marketreg {
namespace {

ModelSummary summarize(const FitResult& fit) {
  return {fit.k_params, fit.r_squared, fit.adj_r_squared};
}

}  // namespace

EliminationTrace backward_eliminate(const EncodedDataset& data, double alpha,
                                    const FitOptions& options) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidInput("backward_eliminate: alpha must lie in (0, 1)");

  EliminationTrace trace;
  trace.alpha = alpha;

  std::vector<std::size_t> active(data.cols());
  for (std::size_t j = 0; j < active.size(); ++j) active[j] = j;

  FitResult fit = fit_ols(data, options);
  while (!fit.dropped_columns.empty()) {
    std::vector<std::size_t> kept;
    for (std::size_t a = 0; a < active.size(); ++a) {
      if (fit.retained[a]) {
        kept.push_back(active[a]);
      } else {
        trace.rank_dropped.push_back(data.columns[active[a]].name);
      }
    }
    active = std::move(kept);
    fit = fit_ols(data.select_columns(active), options);
  }
  if (!fit.inference_available)
    throw DegenerateModel("backward_eliminate: no residual degrees of freedom after rank reduction");

  for (;;) {
    const auto worst = fit.max_p_column();
    if (!worst || fit.p_values[*worst] <= alpha) break;
    if (active.size() == 1) {
      trace.no_conforming_model = true;
      break;
    }
    EliminationStep step;
    step.removed_index = active[*worst];
    step.removed_column = data.columns[step.removed_index].name;
    step.removed_p_value = fit.p_values[*worst];
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(*worst));
    fit = fit_ols(data.select_columns(active), options);
    step.model_after = summarize(fit);
    trace.steps.push_back(std::move(step));
  }

  trace.final_columns = std::move(active);
  trace.final_fit = std::move(fit);
  return trace;
}

}  // namespace marketreg
