#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spce/heredity.hpp"
#include "spce/lar.hpp"
#include "spce/model.hpp"

namespace spce {

struct AdaptiveOptions {
  Method method = Method::Lar;
  double q = 1.0;
  std::optional<int> r;  // reference method only; h-LAR is rank 2 by construction
  ChildTruncation child_truncation = ChildTruncation::QNorm;
  LarOptions lar;
  /// Stop the degree sweep after this many consecutive degrees without LOO
  /// improvement.
  std::size_t degree_patience = 2;
};

struct DegreeOutcome {
  int p = 0;
  std::optional<double> loo_error;  // nullopt when the fit failed
  std::size_t retained = 0;
  std::string error;
  std::size_t heredity_violations = 0;
};

struct AdaptiveResult {
  SparsePceModel model;
  std::vector<DegreeOutcome> degrees;
  std::size_t heredity_violations = 0;  // summed over h-LAR degrees
};

/// Fits every degree of the ascending range with the chosen method and keeps
/// the minimal-LOO model. Throws the last error only if every degree failed.
AdaptiveResult fit_degree_adaptive(const ExperimentalDesign& ed, const InputModel& input,
                                   const std::vector<int>& p_range,
                                   const AdaptiveOptions& options);

std::vector<int> degree_range(int p_min, int p_max);

}  // namespace spce
