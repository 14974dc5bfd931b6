#include "spce/lar.hpp"

#include <algorithm>
#include <limits>

#include "spce/error.hpp"
#include "spce/lar_engine.hpp"

namespace spce {

namespace {

constexpr double kVanishingCorrelation = 1e-10;

}  // namespace

std::string to_string(StopReason reason) {
  switch (reason) {
    case StopReason::MaxTerms: return "max_terms";
    case StopReason::CandidatesExhausted: return "candidates_exhausted";
    case StopReason::ResidualVanished: return "residual_vanished";
    case StopReason::NoImprovement: return "no_improvement";
    case StopReason::RankDeficient: return "rank_deficient";
  }
  return "unknown";
}

std::vector<std::size_t> LarPath::active_set(std::size_t step) const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k <= step && k < steps.size(); ++k) out.push_back(steps[k].selected);
  return out;
}

LarPath lar_path(const DesignMatrix& psi, const Eigen::VectorXd& y, const LarOptions& options) {
  if (psi.rows() != y.size()) {
    throw Error(ErrorKind::DimensionMismatch, "design matrix and response disagree");
  }
  if (static_cast<std::size_t>(psi.cols()) != psi.columns.size()) {
    throw Error(ErrorKind::DimensionMismatch, "design matrix columns and multi-indices disagree");
  }
  LarPath path;
  LarEngine engine(y, options.loo_correction);
  std::vector<std::size_t> slot_to_column;
  std::vector<std::size_t> pool;
  for (Eigen::Index j = 0; j < psi.cols(); ++j) {
    const auto col = static_cast<std::size_t>(j);
    if (psi.columns[col].is_zero()) {
      path.dropped_columns.push_back(col);
      continue;
    }
    if (const auto slot = engine.add_column(psi.values.col(j))) {
      slot_to_column.push_back(col);
      pool.push_back(*slot);
    } else {
      path.dropped_columns.push_back(col);
    }
  }

  const HybridFit base = engine.hybrid();
  path.constant_only_loo = base.loo_error;
  const std::size_t limit = options.max_terms.value_or(std::min<std::size_t>(
      pool.size(), static_cast<std::size_t>(std::max<Eigen::Index>(psi.rows() - 2, 0))));
  const double scale = engine.centered_response().norm();

  double best_loo = base.loo_error;
  std::size_t since_best = 0;
  path.reason = StopReason::MaxTerms;
  while (path.steps.size() < limit) {
    if (pool.empty()) {
      path.reason = StopReason::CandidatesExhausted;
      break;
    }
    const auto corr = [&](std::size_t s) { return engine.correlation(s); };
    const auto index = [&](std::size_t s) -> const MultiIndex& {
      return psi.columns[slot_to_column[s]];
    };
    const std::size_t slot = *most_correlated(pool, corr, index);
    if (!(std::abs(engine.correlation(slot)) > kVanishingCorrelation * scale)) {
      path.reason = StopReason::ResidualVanished;
      break;
    }
    try {
      engine.activate(slot);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::RankDeficient) throw;
      path.reason = StopReason::RankDeficient;
      break;
    }
    pool.erase(std::find(pool.begin(), pool.end(), slot));

    LarStep step;
    step.selected = slot_to_column[slot];
    step.index = psi.columns[step.selected];
    step.gamma = engine.advance();
    step.lar_coefficients = engine.lar_coefficients();
    const HybridFit fit = engine.hybrid();
    step.intercept = fit.intercept;
    step.hybrid_coefficients = fit.coefficients;
    step.loo_error = fit.loo_error;
    step.empirical_error = fit.empirical_error;
    path.steps.push_back(std::move(step));

    const double loo = path.steps.back().loo_error;
    if (loo < best_loo) {
      best_loo = loo;
      path.best_step = path.steps.size() - 1;
      since_best = 0;
    } else if (++since_best >= options.patience) {
      path.reason = StopReason::NoImprovement;
      break;
    }
  }
  return path;
}

SparsePceModel fit_reference(const ExperimentalDesign& ed, const InputModel& input,
                             const TruncationSpec& spec, const LarOptions& options) {
  if (ed.size() < 3) throw Error(ErrorKind::InvalidInput, "experimental design needs N >= 3");
  if (ed.outputs.size() != ed.size()) {
    throw Error(ErrorKind::DimensionMismatch, "design inputs and outputs differ in length");
  }
  const auto candidates = generate_candidate_set(input.dimension(), spec);
  if (candidates.empty()) throw Error(ErrorKind::InvalidTruncation, "empty candidate set");
  const auto families = input.families();
  const DesignMatrix psi =
      build_design_matrix(input.standardize(ed.inputs), candidates, families);
  const LarPath path = lar_path(psi, ed.outputs, options);

  SparsePceModel model;
  model.input_model = input;
  model.truncation = spec;
  model.best_degree = spec.p;
  model.method = Method::Lar;
  model.seed = ed.seed;
  model.basis.push_back(MultiIndex::zero(input.dimension()));
  if (path.best_step) {
    const LarStep& best = path.steps[*path.best_step];
    model.coefficients.resize(static_cast<Eigen::Index>(*path.best_step) + 2);
    model.coefficients[0] = best.intercept;
    model.coefficients.tail(best.hybrid_coefficients.size()) = best.hybrid_coefficients;
    for (std::size_t k = 0; k <= *path.best_step; ++k) model.basis.push_back(path.steps[k].index);
    model.diagnostics = {best.loo_error, best.empirical_error};
  } else {
    model.coefficients = Eigen::VectorXd::Constant(1, ed.outputs.mean());
    const double var = sample_variance(ed.outputs);
    model.diagnostics = {path.constant_only_loo,
                         var > 0.0 ? static_cast<double>(ed.size() - 1) / ed.size() : 0.0};
  }
  return model;
}

}  // namespace spce
