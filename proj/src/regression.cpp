#include "spce/regression.hpp"

#include <cmath>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/QR>

#include "spce/error.hpp"

namespace spce {

namespace {

void check_shapes(const Eigen::MatrixXd& psi, const Eigen::VectorXd& y,
                  const Eigen::VectorXd& c) {
  if (psi.rows() != y.size() || psi.cols() != c.size()) {
    throw Error(ErrorKind::DimensionMismatch, "design matrix, response and coefficients disagree");
  }
}

double checked_variance(const Eigen::VectorXd& y) {
  const double var = sample_variance(y);
  if (!(var > 0.0)) throw Error(ErrorKind::DegenerateOutput, "response has zero variance");
  return var;
}

}  // namespace

DesignMatrix build_design_matrix(const Eigen::MatrixXd& u_points,
                                 const std::vector<MultiIndex>& basis,
                                 std::span<const PolyFamily> families) {
  int max_degree = 0;
  for (const auto& a : basis) max_degree = std::max(max_degree, a.max_degree());
  const UnivariateTable table(u_points, families, max_degree);
  DesignMatrix out{Eigen::MatrixXd(u_points.rows(), static_cast<Eigen::Index>(basis.size())),
                   basis};
  for (std::size_t j = 0; j < basis.size(); ++j) {
    out.values.col(static_cast<Eigen::Index>(j)) = table.column(basis[j]);
  }
  if (!out.values.allFinite()) {
    throw Error(ErrorKind::InvalidInput, "non-finite entry in design matrix");
  }
  return out;
}

Eigen::VectorXd ols_solve(const Eigen::MatrixXd& psi, const Eigen::VectorXd& y) {
  if (psi.rows() != y.size()) {
    throw Error(ErrorKind::DimensionMismatch, "design matrix and response disagree");
  }
  if (psi.cols() > psi.rows()) {
    throw Error(ErrorKind::RankDeficient, "more columns than rows", psi.rows());
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(psi);
  qr.setThreshold(kRankTolerance);
  if (qr.rank() < psi.cols()) {
    throw Error(ErrorKind::RankDeficient,
                "numerical rank " + std::to_string(qr.rank()) + " < " +
                    std::to_string(psi.cols()),
                static_cast<long>(qr.rank()));
  }
  return qr.solve(y);
}

Eigen::VectorXd leverages(const Eigen::MatrixXd& psi) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(psi);
  const Eigen::MatrixXd q =
      qr.householderQ() * Eigen::MatrixXd::Identity(psi.rows(), psi.cols());
  return q.rowwise().squaredNorm();
}

double sample_variance(const Eigen::VectorXd& y) {
  if (y.size() < 2) return 0.0;
  const double mean = y.mean();
  return (y.array() - mean).square().sum() / static_cast<double>(y.size() - 1);
}

double loo_error_from_leverages(const Eigen::VectorXd& residuals,
                                const Eigen::VectorXd& leverage, double variance) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < residuals.size(); ++i) {
    if (leverage[i] >= 1.0 - kLeverageTolerance) {
      throw Error(ErrorKind::SaturatedLeverage,
                  "leverage of point " + std::to_string(i) + " is 1",
                  static_cast<long>(i));
    }
    const double e = residuals[i] / (1.0 - leverage[i]);
    sum += e * e;
  }
  return sum / static_cast<double>(residuals.size()) / variance;
}

double loo_error(const Eigen::MatrixXd& psi, const Eigen::VectorXd& y,
                 const Eigen::VectorXd& coefficients, const LooOptions& options) {
  check_shapes(psi, y, coefficients);
  const double var = checked_variance(y);
  const Eigen::VectorXd residuals = y - psi * coefficients;
  double err = loo_error_from_leverages(residuals, leverages(psi), var);
  if (options.finite_sample_correction) {
    const auto n = static_cast<double>(psi.rows());
    const auto k = static_cast<double>(psi.cols());
    const Eigen::MatrixXd gram = psi.transpose() * psi / n;
    const double trace_inv =
        gram.ldlt().solve(Eigen::MatrixXd::Identity(psi.cols(), psi.cols())).trace();
    err *= n / (n - k) * (1.0 + trace_inv / n);
  }
  return err;
}

double empirical_error(const Eigen::MatrixXd& psi, const Eigen::VectorXd& y,
                       const Eigen::VectorXd& coefficients) {
  check_shapes(psi, y, coefficients);
  const double var = checked_variance(y);
  return (y - psi * coefficients).squaredNorm() / static_cast<double>(y.size()) / var;
}

}  // namespace spce
