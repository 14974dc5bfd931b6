#include "spce/adaptive.hpp"

#include "spce/error.hpp"

namespace spce {

std::vector<int> degree_range(int p_min, int p_max) {
  if (p_min < 1 || p_max < p_min) {
    throw Error(ErrorKind::InvalidTruncation, "degree range must satisfy 1 <= p_min <= p_max");
  }
  std::vector<int> out;
  for (int p = p_min; p <= p_max; ++p) out.push_back(p);
  return out;
}

AdaptiveResult fit_degree_adaptive(const ExperimentalDesign& ed, const InputModel& input,
                                   const std::vector<int>& p_range,
                                   const AdaptiveOptions& options) {
  if (p_range.empty()) throw Error(ErrorKind::InvalidTruncation, "empty degree range");
  for (std::size_t i = 1; i < p_range.size(); ++i) {
    if (p_range[i] <= p_range[i - 1]) {
      throw Error(ErrorKind::InvalidTruncation, "degree range must be ascending");
    }
  }

  AdaptiveResult result;
  std::optional<SparsePceModel> best;
  std::optional<Error> last_error;
  std::size_t since_best = 0;
  for (const int p : p_range) {
    DegreeOutcome outcome;
    outcome.p = p;
    try {
      SparsePceModel model;
      if (options.method == Method::Lar) {
        model = fit_reference(ed, input, TruncationSpec{p, options.q, options.r}, options.lar);
      } else {
        HeredityConfig config{p, options.q, options.child_truncation, options.lar};
        HlarResult fit = hlar_fit(ed, input, config);
        outcome.heredity_violations = heredity_violations(fit.trace);
        result.heredity_violations += outcome.heredity_violations;
        model = std::move(fit.model);
      }
      outcome.loo_error = model.diagnostics.loo_error;
      outcome.retained = model.retained();
      if (!best || model.diagnostics.loo_error < best->diagnostics.loo_error) {
        best = std::move(model);
        since_best = 0;
      } else {
        ++since_best;
      }
    } catch (const Error& e) {
      outcome.error = e.what();
      last_error = e;
      ++since_best;
    }
    result.degrees.push_back(std::move(outcome));
    if (best && since_best >= options.degree_patience) break;
  }
  if (!best) throw *last_error;
  result.model = std::move(*best);
  return result;
}

}  // namespace spce
