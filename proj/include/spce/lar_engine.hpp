#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Core>

namespace spce {

/// Coefficients of the OLS refit on the active set plus an explicit constant,
/// with its normalized errors.
struct HybridFit {
  double intercept = 0.0;
  Eigen::VectorXd coefficients;  // active order
  double loo_error = 0.0;
  double empirical_error = 0.0;
};

/// Incremental least-angle-regression state over a growable pool of
/// regressors. Columns are centered and scaled to unit norm for the
/// correlation geometry; the hybrid refit uses the raw columns.
///
/// Each iteration is: pick a column (caller's policy), `activate` it, then
/// `advance` along the direction that shrinks all active correlations in
/// proportion until an inactive column catches up. When every active
/// correlation is equal this is the classical equiangular LAR step.
class LarEngine {
 public:
  /// `loo_correction` multiplies every LOO error by the finite-sample factor
  /// N/(N-P) * (1 + tr((Psi^T Psi / N)^-1) / N), P counting the constant.
  explicit LarEngine(const Eigen::VectorXd& y, bool loo_correction = false);

  Eigen::Index rows() const { return n_; }
  std::size_t columns() const { return count_; }

  /// Registers a regressor. Returns its slot, or nullopt when the column has
  /// zero variance on the design.
  std::optional<std::size_t> add_column(const Eigen::VectorXd& raw);

  /// x_j^T r for slot j, with x_j standardized and r the current LAR residual.
  double correlation(std::size_t slot) const { return corr_[static_cast<Eigen::Index>(slot)]; }
  bool is_active(std::size_t slot) const { return active_flag_[slot]; }
  const std::vector<std::size_t>& active() const { return active_; }

  /// Adds `slot` to the active set. Throws RankDeficient (state unchanged) if
  /// the column is numerically dependent on the active ones.
  void activate(std::size_t slot);

  /// Moves the LAR fit; returns the step fraction in (0, 1]. A fraction of 1
  /// reaches the OLS fit of the active set on the standardized columns.
  double advance();

  /// OLS refit of the active set on raw columns plus a constant.
  HybridFit hybrid() const;

  /// LAR coefficients on the standardized columns, active order.
  const Eigen::VectorXd& lar_coefficients() const { return beta_; }
  const Eigen::VectorXd& residual() const { return residual_; }
  const Eigen::VectorXd& centered_response() const { return yc_; }
  double residual_norm() const { return residual_.norm(); }

  Eigen::Ref<const Eigen::VectorXd> standardized(std::size_t slot) const {
    return xs_.col(static_cast<Eigen::Index>(slot));
  }
  Eigen::VectorXd raw(std::size_t slot) const;

 private:
  void grow(std::size_t needed);
  void refresh_correlations();

  Eigen::Index n_;
  Eigen::VectorXd y_;
  Eigen::VectorXd yc_;
  double y_variance_;

  std::size_t count_ = 0;
  Eigen::MatrixXd xs_;             // standardized columns, N x capacity
  std::vector<double> col_mean_;
  std::vector<double> col_norm_;
  Eigen::VectorXd corr_;           // xs^T residual, capacity
  std::vector<bool> active_flag_;

  std::vector<std::size_t> active_;
  Eigen::MatrixXd chol_;           // lower Cholesky factor of active Gram (standardized)
  Eigen::VectorXd beta_;
  Eigen::VectorXd fitted_;         // LAR fit of yc
  Eigen::VectorXd residual_;
  std::size_t steps_since_refresh_ = 0;

  // Hybrid refit: Q has orthonormal columns spanning [1, raw active columns].
  Eigen::MatrixXd q_;
  Eigen::MatrixXd r_;
  Eigen::MatrixXd r_inv_;
  double gram_inverse_trace_;  // tr((Psi^T Psi)^-1) = ||R^-1||_F^2
  bool loo_correction_;
  Eigen::VectorXd qty_;
  Eigen::VectorXd hat_diag_;
};

}  // namespace spce
