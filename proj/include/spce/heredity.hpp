#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "spce/inputs.hpp"
#include "spce/lar.hpp"
#include "spce/model.hpp"
#include "spce/multiindex.hpp"

namespace spce {

/// How children (rank-2 interaction terms) are truncated when generated.
enum class ChildTruncation {
  PerDimension,  // max(a, b) <= p
  TotalDegree,   // a + b <= p
  QNorm,         // (a^q + b^q)^(1/q) <= p
};

std::string to_string(ChildTruncation mode);
ChildTruncation parse_child_truncation(const std::string& name);

struct HeredityConfig {
  int p = 1;
  double q = 1.0;
  ChildTruncation child_truncation = ChildTruncation::QNorm;
  LarOptions lar;

  void validate() const;
};

/// Heredity form of one selection, judged against the active set just before
/// it. Orphan marks a rank-2 selection with no active parent (possible when a
/// sibling displaced their common parent in an earlier iteration).
enum class HeredityForm { None, Weak, Strong, Orphan };

std::string to_string(HeredityForm form);

struct HlarStep {
  MultiIndex selected;
  /// The most correlated candidate of the iteration when a child displaced it.
  std::optional<MultiIndex> displaced_parent;
  HeredityForm form = HeredityForm::None;
  std::size_t children_generated = 0;
  std::size_t candidate_count = 0;  // after extraction
  double gamma = 0.0;
  double intercept = 0.0;
  Eigen::VectorXd hybrid_coefficients;
  double loo_error = 0.0;
  double empirical_error = 0.0;
};

/// Full record of an h-LAR run. The active set before step k is the first k
/// selections.
struct HlarTrace {
  std::vector<HlarStep> steps;
  std::optional<std::size_t> best_step;
  StopReason reason = StopReason::CandidatesExhausted;
  double constant_only_loo = 0.0;
  std::vector<MultiIndex> seen_1d;
  std::vector<MultiIndex> final_candidates;
  std::size_t max_candidate_count = 0;
};

struct HlarResult {
  SparsePceModel model;
  HlarTrace trace;
};

/// All rank-1 indices with degree <= p, canonical order.
std::vector<MultiIndex> initial_candidates(std::size_t dimension, const HeredityConfig& config);

/// Interaction children of a rank-1 term: pair its (dimension, degree) with
/// every rank-1 term of `seen_1d` in another dimension, filtered by the child
/// truncation rule. Canonical order, no duplicates.
std::vector<MultiIndex> generate_children(const MultiIndex& selected,
                                          const std::vector<MultiIndex>& seen_1d,
                                          const HeredityConfig& config);

/// Heredity form of `selected` given the active set.
HeredityForm classify(const MultiIndex& selected, const std::vector<MultiIndex>& active);

/// Hierarchical adaptive LAR on an experimental design.
HlarResult hlar_fit(const ExperimentalDesign& ed, const InputModel& input,
                    const HeredityConfig& config);

/// Zero when the trace satisfies heredity soundness: every rank-2 selection has
/// a parent in seen_1d and every recorded form matches the active prefix.
std::size_t heredity_violations(const HlarTrace& trace);

}  // namespace spce
