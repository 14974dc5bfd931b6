#include "spce/heredity.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "spce/error.hpp"
#include "spce/lar_engine.hpp"
#include "spce/polynomials.hpp"

namespace spce {

namespace {

constexpr double kVanishingCorrelation = 1e-10;

std::pair<MultiIndex, MultiIndex> parents_of(const MultiIndex& child) {
  const auto dims = child.support();
  return {MultiIndex::axis(child.size(), dims[0], child[dims[0]]),
          MultiIndex::axis(child.size(), dims[1], child[dims[1]])};
}

bool keep_child(int a, int b, const HeredityConfig& config) {
  switch (config.child_truncation) {
    case ChildTruncation::PerDimension: return std::max(a, b) <= config.p;
    case ChildTruncation::TotalDegree: return a + b <= config.p;
    case ChildTruncation::QNorm:
      return std::pow(std::pow(a, config.q) + std::pow(b, config.q), 1.0 / config.q) <=
             config.p * (1.0 + kQNormTolerance);
  }
  return false;
}

}  // namespace

std::string to_string(ChildTruncation mode) {
  switch (mode) {
    case ChildTruncation::PerDimension: return "per_dimension";
    case ChildTruncation::TotalDegree: return "total_degree";
    case ChildTruncation::QNorm: return "qnorm";
  }
  return "unknown";
}

ChildTruncation parse_child_truncation(const std::string& name) {
  if (name == "per_dimension") return ChildTruncation::PerDimension;
  if (name == "total_degree") return ChildTruncation::TotalDegree;
  if (name == "qnorm") return ChildTruncation::QNorm;
  throw Error(ErrorKind::InvalidInput, "unknown child truncation '" + name + "'");
}

std::string to_string(HeredityForm form) {
  switch (form) {
    case HeredityForm::None: return "none";
    case HeredityForm::Weak: return "weak";
    case HeredityForm::Strong: return "strong";
    case HeredityForm::Orphan: return "orphan";
  }
  return "unknown";
}

void HeredityConfig::validate() const {
  if (p < 1) throw Error(ErrorKind::InvalidTruncation, "p must be >= 1");
  if (!(q > 0.0 && q <= 1.0)) throw Error(ErrorKind::InvalidTruncation, "q must lie in (0, 1]");
  if (p > kDefaultMaxDegree) throw Error(ErrorKind::DegreeOverflow, "p exceeds degree cap");
}

std::vector<MultiIndex> initial_candidates(std::size_t dimension, const HeredityConfig& config) {
  config.validate();
  std::vector<MultiIndex> out;
  out.reserve(dimension * static_cast<std::size_t>(config.p));
  for (std::size_t i = 0; i < dimension; ++i) {
    for (int k = 1; k <= config.p; ++k) out.push_back(MultiIndex::axis(dimension, i, k));
  }
  std::sort(out.begin(), out.end(), CanonicalLess{});
  return out;
}

std::vector<MultiIndex> generate_children(const MultiIndex& selected,
                                          const std::vector<MultiIndex>& seen_1d,
                                          const HeredityConfig& config) {
  if (selected.rank() != 1) {
    throw Error(ErrorKind::InvalidParent, "children are generated from rank-1 terms only");
  }
  const std::size_t dimension = selected.size();
  const std::size_t i = selected.support()[0];
  const int a = selected[i];
  std::vector<MultiIndex> out;
  for (const auto& other : seen_1d) {
    if (other.size() != dimension || other.rank() != 1) continue;
    const std::size_t j = other.support()[0];
    if (j == i) continue;
    const int b = other[j];
    if (!keep_child(a, b, config)) continue;
    std::vector<int> degrees(dimension, 0);
    degrees[i] = a;
    degrees[j] = b;
    out.emplace_back(std::move(degrees));
  }
  std::sort(out.begin(), out.end(), CanonicalLess{});
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

HeredityForm classify(const MultiIndex& selected, const std::vector<MultiIndex>& active) {
  if (selected.rank() != 2) return HeredityForm::None;
  const auto [first, second] = parents_of(selected);
  const bool has_first = std::find(active.begin(), active.end(), first) != active.end();
  const bool has_second = std::find(active.begin(), active.end(), second) != active.end();
  if (has_first && has_second) return HeredityForm::Strong;
  if (has_first || has_second) return HeredityForm::Weak;
  return HeredityForm::Orphan;
}

HlarResult hlar_fit(const ExperimentalDesign& ed, const InputModel& input,
                    const HeredityConfig& config) {
  config.validate();
  if (ed.size() < 3) throw Error(ErrorKind::InvalidInput, "experimental design needs N >= 3");
  if (ed.outputs.size() != ed.size()) {
    throw Error(ErrorKind::DimensionMismatch, "design inputs and outputs differ in length");
  }
  const std::size_t dimension = input.dimension();
  const auto families = input.families();
  const UnivariateTable table(input.standardize(ed.inputs), families, config.p);

  HlarResult result;
  HlarTrace& trace = result.trace;
  LarEngine engine(ed.outputs, config.lar.loo_correction);

  std::vector<MultiIndex> slot_index;              // slot -> multi-index
  std::unordered_map<MultiIndex, std::size_t, MultiIndexHash> known;  // registered or dropped
  std::vector<std::size_t> candidates;             // inactive slots
  const std::size_t kDropped = static_cast<std::size_t>(-1);

  const auto register_index = [&](const MultiIndex& alpha) -> std::optional<std::size_t> {
    if (known.contains(alpha)) return std::nullopt;
    const auto slot = engine.add_column(table.column(alpha));
    known.emplace(alpha, slot.value_or(kDropped));
    if (slot) slot_index.push_back(alpha);
    return slot;
  };

  trace.seen_1d = initial_candidates(dimension, config);
  for (const auto& alpha : trace.seen_1d) {
    if (const auto slot = register_index(alpha)) candidates.push_back(*slot);
  }
  trace.max_candidate_count = candidates.size();

  const HybridFit base = engine.hybrid();
  trace.constant_only_loo = base.loo_error;
  const auto row_limit = static_cast<std::size_t>(std::max<Eigen::Index>(ed.size() - 2, 0));
  const std::size_t limit = config.lar.max_terms.value_or(row_limit);
  const double scale = engine.centered_response().norm();
  const auto corr = [&](std::size_t s) { return engine.correlation(s); };
  const auto index = [&](std::size_t s) -> const MultiIndex& { return slot_index[s]; };

  std::vector<MultiIndex> active;
  double best_loo = base.loo_error;
  std::size_t since_best = 0;
  trace.reason = StopReason::MaxTerms;
  while (trace.steps.size() < limit) {
    if (candidates.empty()) {
      trace.reason = StopReason::CandidatesExhausted;
      break;
    }
    std::size_t winner = *most_correlated(candidates, corr, index);
    if (!(std::abs(engine.correlation(winner)) > kVanishingCorrelation * scale)) {
      trace.reason = StopReason::ResidualVanished;
      break;
    }

    HlarStep step;
    if (slot_index[winner].rank() == 1) {
      std::vector<std::size_t> fresh;
      for (const auto& child : generate_children(slot_index[winner], trace.seen_1d, config)) {
        if (const auto slot = register_index(child)) fresh.push_back(*slot);
      }
      step.children_generated = fresh.size();
      if (const auto best_child = most_correlated(fresh, corr, index)) {
        if (std::abs(engine.correlation(*best_child)) >
            std::abs(engine.correlation(winner)) * (1.0 + kTieTolerance)) {
          step.displaced_parent = slot_index[winner];
          winner = *best_child;
        }
      }
      candidates.insert(candidates.end(), fresh.begin(), fresh.end());
    }

    try {
      engine.activate(winner);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::RankDeficient) throw;
      trace.reason = StopReason::RankDeficient;
      break;
    }
    trace.max_candidate_count = std::max(trace.max_candidate_count, candidates.size());
    candidates.erase(std::find(candidates.begin(), candidates.end(), winner));

    step.selected = slot_index[winner];
    step.form = classify(step.selected, active);
    step.candidate_count = candidates.size();
    active.push_back(step.selected);
    step.gamma = engine.advance();
    const HybridFit fit = engine.hybrid();
    step.intercept = fit.intercept;
    step.hybrid_coefficients = fit.coefficients;
    step.loo_error = fit.loo_error;
    step.empirical_error = fit.empirical_error;
    trace.steps.push_back(std::move(step));

    const double loo = trace.steps.back().loo_error;
    if (loo < best_loo) {
      best_loo = loo;
      trace.best_step = trace.steps.size() - 1;
      since_best = 0;
    } else if (++since_best >= config.lar.patience) {
      trace.reason = StopReason::NoImprovement;
      break;
    }
  }

  trace.final_candidates.reserve(candidates.size());
  for (const std::size_t s : candidates) trace.final_candidates.push_back(slot_index[s]);

  SparsePceModel& model = result.model;
  model.input_model = input;
  model.truncation = {config.p, config.q, 2};
  model.best_degree = config.p;
  model.method = Method::HLar;
  model.seed = ed.seed;
  model.basis.push_back(MultiIndex::zero(dimension));
  if (trace.best_step) {
    const HlarStep& best = trace.steps[*trace.best_step];
    model.coefficients.resize(best.hybrid_coefficients.size() + 1);
    model.coefficients[0] = best.intercept;
    model.coefficients.tail(best.hybrid_coefficients.size()) = best.hybrid_coefficients;
    for (std::size_t k = 0; k <= *trace.best_step; ++k) model.basis.push_back(trace.steps[k].selected);
    model.diagnostics = {best.loo_error, best.empirical_error};
  } else {
    model.coefficients = Eigen::VectorXd::Constant(1, ed.outputs.mean());
    const double var = sample_variance(ed.outputs);
    model.diagnostics = {trace.constant_only_loo,
                         var > 0.0 ? static_cast<double>(ed.size() - 1) / ed.size() : 0.0};
  }
  return result;
}

std::size_t heredity_violations(const HlarTrace& trace) {
  std::size_t violations = 0;
  std::vector<MultiIndex> active;
  for (const auto& step : trace.steps) {
    const int rank = step.selected.rank();
    if (rank > 2) ++violations;
    if (rank == 2) {
      const auto [first, second] = parents_of(step.selected);
      const auto seen = [&](const MultiIndex& p) {
        return std::find(trace.seen_1d.begin(), trace.seen_1d.end(), p) != trace.seen_1d.end();
      };
      if (!seen(first) && !seen(second)) ++violations;
    }
    if (classify(step.selected, active) != step.form) ++violations;
    if (step.displaced_parent && (step.displaced_parent->rank() != 1 || rank != 2)) ++violations;
    active.push_back(step.selected);
  }
  return violations;
}

}  // namespace spce
