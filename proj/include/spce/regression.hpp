#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

#include "spce/multiindex.hpp"
#include "spce/polynomials.hpp"

namespace spce {

/// Regressors psi_alpha_j evaluated at the design points; one column per
/// multi-index.
struct DesignMatrix {
  Eigen::MatrixXd values;
  std::vector<MultiIndex> columns;

  Eigen::Index rows() const { return values.rows(); }
  Eigen::Index cols() const { return values.cols(); }
};

struct FitDiagnostics {
  double loo_error = 0.0;
  double empirical_error = 0.0;
};

struct LooOptions {
  /// Multiply by N/(N-K) * (1 + tr((Psi^T Psi / N)^-1) / N). Off by default.
  bool finite_sample_correction = false;
};

/// Singular values below this fraction of the largest are treated as zero.
inline constexpr double kRankTolerance = 1e-12;
/// Leverages at or above 1 - kLeverageTolerance mean the fit interpolates.
inline constexpr double kLeverageTolerance = 1e-10;

DesignMatrix build_design_matrix(const Eigen::MatrixXd& u_points,
                                 const std::vector<MultiIndex>& basis,
                                 std::span<const PolyFamily> families);

/// Least-squares coefficients via column-pivoted Householder QR. Throws
/// RankDeficient (detail = numerical rank) when Psi is not of full column rank.
Eigen::VectorXd ols_solve(const Eigen::MatrixXd& psi, const Eigen::VectorXd& y);

/// Diagonal of the hat matrix Psi (Psi^T Psi)^-1 Psi^T.
Eigen::VectorXd leverages(const Eigen::MatrixXd& psi);

/// Unbiased sample variance.
double sample_variance(const Eigen::VectorXd& y);

/// Analytic leave-one-out error, normalized by the sample variance of y.
double loo_error(const Eigen::MatrixXd& psi, const Eigen::VectorXd& y,
                 const Eigen::VectorXd& coefficients, const LooOptions& options = {});

/// LOO error from precomputed residuals and leverages.
double loo_error_from_leverages(const Eigen::VectorXd& residuals,
                                const Eigen::VectorXd& leverage, double variance);

/// Mean squared residual normalized by the sample variance of y.
double empirical_error(const Eigen::MatrixXd& psi, const Eigen::VectorXd& y,
                       const Eigen::VectorXd& coefficients);

}  // namespace spce
