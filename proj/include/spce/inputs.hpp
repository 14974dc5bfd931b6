#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "spce/polynomials.hpp"

namespace spce {

struct Uniform {
  double lower;
  double upper;
};

struct Gaussian {
  double mean;
  double sd;
};

using Marginal = std::variant<Uniform, Gaussian>;

/// Independent marginals, one per input dimension.
class InputModel {
 public:
  InputModel() = default;
  explicit InputModel(std::vector<Marginal> marginals);
  static InputModel iid(std::size_t dimension, const Marginal& marginal);

  std::size_t dimension() const noexcept { return marginals_.size(); }
  const std::vector<Marginal>& marginals() const noexcept { return marginals_; }

  /// Legendre for uniform marginals, Hermite for Gaussian ones.
  std::vector<PolyFamily> families() const;

  /// Isoprobabilistic map to the families' standard domains.
  std::vector<double> standardize(std::span<const double> x) const;
  std::vector<double> unstandardize(std::span<const double> u) const;
  /// Row-wise standardization of an N x M matrix.
  Eigen::MatrixXd standardize(const Eigen::MatrixXd& x) const;

  /// Inverse CDF of marginal `dim` at probability level v in (0, 1).
  double quantile(std::size_t dim, double v) const;

  bool in_support(std::size_t dim, double x) const;

 private:
  std::vector<Marginal> marginals_;
};

struct ExperimentalDesign {
  Eigen::MatrixXd inputs;   // N x M, physical units
  Eigen::VectorXd outputs;  // N
  std::uint64_t seed = 0;

  Eigen::Index size() const { return inputs.rows(); }
};

/// Standard normal quantile: rational approximation refined by one Halley
/// step against erfc.
double normal_quantile(double v);

/// Latin hypercube sample of N points in physical units: one point per
/// equiprobable stratum per dimension, placed uniformly inside the stratum,
/// strata independently permuted per dimension.
Eigen::MatrixXd lhs_sample(const InputModel& model, Eigen::Index n,
                           std::uint64_t seed);

/// Plain Monte Carlo sample in physical units.
Eigen::MatrixXd monte_carlo_sample(const InputModel& model, Eigen::Index n,
                                   std::uint64_t seed);

}  // namespace spce
