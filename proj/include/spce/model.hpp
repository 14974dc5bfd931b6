#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "spce/inputs.hpp"
#include "spce/multiindex.hpp"
#include "spce/regression.hpp"

namespace spce {

enum class Method { Lar, HLar };

std::string method_name(Method m);
Method parse_method(const std::string& name);

/// Sparse PCE: retained multi-indices (constant first) and their coefficients.
struct SparsePceModel {
  InputModel input_model;
  std::vector<MultiIndex> basis;
  Eigen::VectorXd coefficients;
  FitDiagnostics diagnostics;
  TruncationSpec truncation;
  int best_degree = 0;
  Method method = Method::Lar;
  std::uint64_t seed = 0;

  std::size_t retained() const { return basis.size(); }
  double predict(std::span<const double> x) const;
  /// One prediction per row of an N x M matrix in physical units.
  Eigen::VectorXd predict(const Eigen::MatrixXd& x) const;
};

}  // namespace spce
