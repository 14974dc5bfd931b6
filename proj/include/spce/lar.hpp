#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "spce/inputs.hpp"
#include "spce/model.hpp"
#include "spce/multiindex.hpp"
#include "spce/regression.hpp"

namespace spce {

struct LarOptions {
  /// Upper bound on active terms; nullopt means min(K, N - 2) so that the
  /// hybrid refit with its constant column stays overdetermined.
  std::optional<std::size_t> max_terms;
  /// Stop once the LOO error has not improved for this many steps.
  std::size_t patience = 10;
  /// Finite-sample correction of the LOO error used for step selection and
  /// reported in the model diagnostics. Without it the LOO error of greedily
  /// selected bases collapses toward zero as the term count approaches N.
  bool loo_correction = true;
};

enum class StopReason {
  MaxTerms,
  CandidatesExhausted,
  ResidualVanished,
  NoImprovement,
  RankDeficient,
};

std::string to_string(StopReason reason);

struct LarStep {
  std::size_t selected;             // column of the design matrix
  MultiIndex index;
  double gamma = 0.0;               // step fraction taken after selection
  Eigen::VectorXd lar_coefficients; // standardized scale, active order
  double intercept = 0.0;
  Eigen::VectorXd hybrid_coefficients;  // raw scale, active order
  double loo_error = 0.0;
  double empirical_error = 0.0;
};

/// Step k's active set is {steps[0].selected, ..., steps[k].selected}.
/// `best_step` is the minimal-LOO step; nullopt when the intercept-only model
/// beats every step.
struct LarPath {
  std::vector<LarStep> steps;
  std::optional<std::size_t> best_step;
  StopReason reason = StopReason::CandidatesExhausted;
  std::vector<std::size_t> dropped_columns;  // constant or zero-variance on the design
  double constant_only_loo = 0.0;            // LOO of the intercept-only model

  std::vector<std::size_t> active_set(std::size_t step) const;
};

/// Least angle regression over the columns of `psi` with hybrid OLS refits.
/// The zero multi-index column (and any zero-variance column) is excluded from
/// the competition; every refit carries its own intercept.
LarPath lar_path(const DesignMatrix& psi, const Eigen::VectorXd& y,
                 const LarOptions& options = {});

/// Index of the best candidate by |correlation|; near-ties resolved by the
/// canonical order of the multi-indices.
template <class CorrelationFn, class IndexFn>
std::optional<std::size_t> most_correlated(const std::vector<std::size_t>& pool,
                                           CorrelationFn&& corr, IndexFn&& index);

/// Candidate set from `spec`, LAR path, model at the minimal-LOO step.
SparsePceModel fit_reference(const ExperimentalDesign& ed, const InputModel& input,
                             const TruncationSpec& spec, const LarOptions& options = {});

// ---------------------------------------------------------------------------

inline constexpr double kTieTolerance = 1e-12;

template <class CorrelationFn, class IndexFn>
std::optional<std::size_t> most_correlated(const std::vector<std::size_t>& pool,
                                           CorrelationFn&& corr, IndexFn&& index) {
  std::optional<std::size_t> best;
  double best_abs = -1.0;
  for (const std::size_t j : pool) {
    const double c = std::abs(corr(j));
    if (!best || c > best_abs * (1.0 + kTieTolerance)) {
      best = j;
      best_abs = c;
    } else if (c >= best_abs * (1.0 - kTieTolerance) &&
               canonical_compare(index(j), index(*best)) < 0) {
      best = j;
      best_abs = std::max(best_abs, c);
    }
  }
  return best;
}

}  // namespace spce
