#include "spce/lar_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "spce/error.hpp"
#include "spce/regression.hpp"

namespace spce {

namespace {

// Minimal squared distance of a new unit-norm standardized column from the
// span of the active ones, and relative residual norm for the raw refit.
constexpr double kGramPivotTolerance = 1e-14;
constexpr double kQrTolerance = 1e-10;
constexpr double kDegenerateColumn = 1e-10;
constexpr double kStepFloor = 1e-12;
constexpr std::size_t kRefreshInterval = 25;

}  // namespace

LarEngine::LarEngine(const Eigen::VectorXd& y, bool loo_correction)
    : n_(y.size()), y_(y), y_variance_(sample_variance(y)), loo_correction_(loo_correction) {
  if (n_ < 2) throw Error(ErrorKind::InvalidInput, "LAR needs at least two observations");
  if (!y.allFinite()) throw Error(ErrorKind::InvalidInput, "non-finite response");
  yc_ = y.array() - y.mean();
  fitted_ = Eigen::VectorXd::Zero(n_);
  residual_ = yc_;
  q_.resize(n_, 1);
  q_.col(0).setConstant(1.0 / std::sqrt(static_cast<double>(n_)));
  r_ = Eigen::MatrixXd::Constant(1, 1, std::sqrt(static_cast<double>(n_)));
  r_inv_ = r_.cwiseInverse();
  gram_inverse_trace_ = 1.0 / static_cast<double>(n_);
  qty_ = q_.transpose() * y_;
  hat_diag_ = q_.col(0).array().square();
}

void LarEngine::grow(std::size_t needed) {
  const auto cap = static_cast<std::size_t>(xs_.cols());
  if (needed <= cap) return;
  const std::size_t new_cap = std::max<std::size_t>(needed, std::max<std::size_t>(16, 2 * cap));
  xs_.conservativeResize(n_, static_cast<Eigen::Index>(new_cap));
  corr_.conservativeResize(static_cast<Eigen::Index>(new_cap));
}

std::optional<std::size_t> LarEngine::add_column(const Eigen::VectorXd& raw) {
  if (raw.size() != n_) throw Error(ErrorKind::DimensionMismatch, "column length != N");
  if (!raw.allFinite()) throw Error(ErrorKind::InvalidInput, "non-finite regressor");
  const double mean = raw.mean();
  Eigen::VectorXd centered = raw.array() - mean;
  const double norm = centered.norm();
  const double scale = raw.cwiseAbs().maxCoeff();
  if (!(norm > kDegenerateColumn * std::sqrt(static_cast<double>(n_)) * scale)) {
    return std::nullopt;
  }
  grow(count_ + 1);
  const auto j = static_cast<Eigen::Index>(count_);
  xs_.col(j) = centered / norm;
  corr_[j] = xs_.col(j).dot(residual_);
  if (!std::isfinite(corr_[j])) {
    throw Error(ErrorKind::NonFiniteCorrelation, "non-finite correlation for new column");
  }
  col_mean_.push_back(mean);
  col_norm_.push_back(norm);
  active_flag_.push_back(false);
  return count_++;
}

Eigen::VectorXd LarEngine::raw(std::size_t slot) const {
  return (xs_.col(static_cast<Eigen::Index>(slot)) * col_norm_[slot]).array() +
         col_mean_[slot];
}

void LarEngine::activate(std::size_t slot) {
  if (slot >= count_ || active_flag_[slot]) {
    throw Error(ErrorKind::InvalidInput, "slot is not an inactive registered column");
  }
  const auto k = static_cast<Eigen::Index>(active_.size());
  const auto x = xs_.col(static_cast<Eigen::Index>(slot));

  // Cholesky row for the standardized Gram matrix.
  Eigen::VectorXd l(k);
  double pivot = 1.0;
  if (k > 0) {
    Eigen::VectorXd b(k);
    for (Eigen::Index i = 0; i < k; ++i) {
      b[i] = xs_.col(static_cast<Eigen::Index>(active_[static_cast<std::size_t>(i)])).dot(x);
    }
    l = chol_.triangularView<Eigen::Lower>().solve(b);
    pivot = 1.0 - l.squaredNorm();
  }
  if (!(pivot > kGramPivotTolerance)) {
    throw Error(ErrorKind::RankDeficient, "column is collinear with the active set",
                static_cast<long>(k));
  }

  // Gram-Schmidt with one reorthogonalization pass for the raw refit.
  const Eigen::VectorXd v = raw(slot);
  Eigen::VectorXd proj = q_.transpose() * v;
  Eigen::VectorXd w = v - q_ * proj;
  const Eigen::VectorXd proj2 = q_.transpose() * w;
  w -= q_ * proj2;
  proj += proj2;
  const double wnorm = w.norm();
  if (!(wnorm > kQrTolerance * v.norm())) {
    throw Error(ErrorKind::RankDeficient, "raw column is collinear with the active set",
                static_cast<long>(k + 1));
  }

  chol_.conservativeResize(k + 1, k + 1);
  chol_.row(k).head(k) = l.transpose();
  chol_.col(k).head(k).setZero();
  chol_(k, k) = std::sqrt(pivot);

  const Eigen::Index m = q_.cols();
  q_.conservativeResize(Eigen::NoChange, m + 1);
  q_.col(m) = w / wnorm;
  r_.conservativeResize(m + 1, m + 1);
  r_.row(m).setZero();
  r_.col(m).head(m) = proj;
  r_(m, m) = wnorm;
  // [R p; 0 w]^-1 = [R^-1, -R^-1 p / w; 0, 1 / w]
  const Eigen::VectorXd r_inv_col = -(r_inv_.triangularView<Eigen::Upper>() * proj) / wnorm;
  r_inv_.conservativeResize(m + 1, m + 1);
  r_inv_.row(m).setZero();
  r_inv_.col(m).head(m) = r_inv_col;
  r_inv_(m, m) = 1.0 / wnorm;
  gram_inverse_trace_ += r_inv_col.squaredNorm() + 1.0 / (wnorm * wnorm);
  qty_.conservativeResize(m + 1);
  qty_[m] = q_.col(m).dot(y_);
  hat_diag_ += q_.col(m).array().square().matrix();

  beta_.conservativeResize(k + 1);
  beta_[k] = 0.0;
  active_.push_back(slot);
  active_flag_[slot] = true;
}

void LarEngine::refresh_correlations() {
  const auto cols = static_cast<Eigen::Index>(count_);
  corr_.head(cols).noalias() = xs_.leftCols(cols).transpose() * residual_;
  steps_since_refresh_ = 0;
}

double LarEngine::advance() {
  const auto k = static_cast<Eigen::Index>(active_.size());
  if (k == 0) throw Error(ErrorKind::InvalidInput, "advance with empty active set");
  const auto cols = static_cast<Eigen::Index>(count_);

  Eigen::VectorXd c_active(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    c_active[i] = corr_[static_cast<Eigen::Index>(active_[static_cast<std::size_t>(i)])];
  }
  const double c_max = c_active.cwiseAbs().maxCoeff();
  if (!std::isfinite(c_max)) {
    throw Error(ErrorKind::NonFiniteCorrelation, "non-finite active correlation");
  }

  // Direction d solves G d = c_A, so every active correlation scales by (1 - gamma).
  Eigen::VectorXd d = chol_.triangularView<Eigen::Lower>().solve(c_active);
  chol_.triangularView<Eigen::Lower>().transpose().solveInPlace(d);
  Eigen::VectorXd u = Eigen::VectorXd::Zero(n_);
  for (Eigen::Index i = 0; i < k; ++i) {
    u += d[i] * xs_.col(static_cast<Eigen::Index>(active_[static_cast<std::size_t>(i)]));
  }
  Eigen::VectorXd a(cols);
  a.noalias() = xs_.leftCols(cols).transpose() * u;

  double gamma = 1.0;
  if (c_max > 0.0) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      if (active_flag_[static_cast<std::size_t>(j)]) continue;
      const double cj = corr_[j];
      const double aj = a[j];
      for (const double g : {(c_max - cj) / (c_max - aj), (c_max + cj) / (c_max + aj)}) {
        if (std::isfinite(g) && g > kStepFloor && g < gamma) gamma = g;
      }
    }
  }

  beta_ += gamma * d;
  fitted_ += gamma * u;
  residual_ = yc_ - fitted_;
  corr_.head(cols) -= gamma * a;
  if (++steps_since_refresh_ >= kRefreshInterval) refresh_correlations();
  return gamma;
}

HybridFit LarEngine::hybrid() const {
  const Eigen::Index m = q_.cols();
  HybridFit fit;
  const Eigen::VectorXd b = r_.triangularView<Eigen::Upper>().solve(qty_);
  fit.intercept = b[0];
  fit.coefficients = b.tail(m - 1);
  const Eigen::VectorXd resid = y_ - q_ * qty_;
  if (!(y_variance_ > 0.0)) {
    fit.loo_error = 0.0;
    fit.empirical_error = 0.0;
    return fit;
  }
  fit.empirical_error = resid.squaredNorm() / static_cast<double>(n_) / y_variance_;
  try {
    fit.loo_error = loo_error_from_leverages(resid, hat_diag_, y_variance_);
    if (loo_correction_) {
      const auto n = static_cast<double>(n_);
      const auto p = static_cast<double>(m);
      fit.loo_error *= n / (n - p) * (1.0 + gram_inverse_trace_);
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::SaturatedLeverage) throw;
    fit.loo_error = std::numeric_limits<double>::infinity();
  }
  return fit;
}

}  // namespace spce
