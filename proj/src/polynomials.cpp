#include "spce/polynomials.hpp"

#include <cmath>
#include <string>

#include "spce/error.hpp"
#include "spce/multiindex.hpp"

namespace spce {

namespace {

void check_args(int degree, double u, int max_degree) {
  if (degree < 0 || degree > max_degree) {
    throw Error(ErrorKind::DegreeOverflow,
                "degree " + std::to_string(degree) + " outside [0, " +
                    std::to_string(max_degree) + "]");
  }
  if (!std::isfinite(u)) {
    throw Error(ErrorKind::InvalidInput, "non-finite polynomial argument");
  }
}

// Classical recurrences, normalized afterwards:
//   Legendre  (k+1) P_{k+1} = (2k+1) u P_k - k P_{k-1},  ||P_k||^2 = 1/(2k+1)
//   Hermite   He_{k+1} = u He_k - k He_{k-1},            ||He_k||^2 = k!
void fill(PolyFamily family, int max_degree, double u, std::span<double> out) {
  out[0] = 1.0;
  if (max_degree == 0) return;
  out[1] = u;
  for (int k = 1; k < max_degree; ++k) {
    const double kk = k;
    if (family == PolyFamily::Legendre) {
      out[k + 1] = ((2.0 * kk + 1.0) * u * out[k] - kk * out[k - 1]) / (kk + 1.0);
    } else {
      out[k + 1] = u * out[k] - kk * out[k - 1];
    }
  }
  if (family == PolyFamily::Legendre) {
    for (int k = 1; k <= max_degree; ++k) out[k] *= std::sqrt(2.0 * k + 1.0);
  } else {
    double inv_sqrt_factorial = 1.0;
    for (int k = 1; k <= max_degree; ++k) {
      inv_sqrt_factorial /= std::sqrt(static_cast<double>(k));
      out[k] *= inv_sqrt_factorial;
    }
  }
}

}  // namespace

void eval_univariate_all(PolyFamily family, int max_degree, double u,
                         std::span<double> out) {
  check_args(max_degree, u, kDefaultMaxDegree);
  if (out.size() < static_cast<std::size_t>(max_degree) + 1) {
    throw Error(ErrorKind::DimensionMismatch, "output buffer too small");
  }
  fill(family, max_degree, u, out);
}

double eval_univariate(PolyFamily family, int degree, double u, int max_degree) {
  check_args(degree, u, max_degree);
  if (degree == 0) return 1.0;
  std::vector<double> values(static_cast<std::size_t>(degree) + 1);
  fill(family, degree, u, values);
  return values.back();
}

double eval_multivariate(std::span<const PolyFamily> families,
                         const MultiIndex& alpha, std::span<const double> u,
                         int max_degree) {
  if (alpha.size() != u.size() || families.size() != u.size()) {
    throw Error(ErrorKind::DimensionMismatch,
                "multi-index, families and point must share one dimension");
  }
  double value = 1.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!std::isfinite(u[i])) {
      throw Error(ErrorKind::InvalidInput, "non-finite polynomial argument");
    }
    if (alpha[i] == 0) continue;
    value *= eval_univariate(families[i], alpha[i], u[i], max_degree);
  }
  return value;
}

UnivariateTable::UnivariateTable(const Eigen::MatrixXd& u_points,
                                 std::span<const PolyFamily> families,
                                 int max_degree)
    : rows_(u_points.rows()), max_degree_(max_degree) {
  if (static_cast<std::size_t>(u_points.cols()) != families.size()) {
    throw Error(ErrorKind::DimensionMismatch,
                "point dimension does not match number of families");
  }
  if (max_degree < 0 || max_degree > kDefaultMaxDegree) {
    throw Error(ErrorKind::DegreeOverflow,
                "table degree " + std::to_string(max_degree) + " exceeds cap");
  }
  std::vector<double> buffer(static_cast<std::size_t>(max_degree) + 1);
  values_.reserve(families.size());
  for (std::size_t d = 0; d < families.size(); ++d) {
    Eigen::MatrixXd table(rows_, max_degree + 1);
    for (Eigen::Index i = 0; i < rows_; ++i) {
      const double u = u_points(i, static_cast<Eigen::Index>(d));
      if (!std::isfinite(u)) {
        throw Error(ErrorKind::InvalidInput, "non-finite standardized input");
      }
      fill(families[d], max_degree, u, buffer);
      for (int k = 0; k <= max_degree; ++k) table(i, k) = buffer[k];
    }
    values_.push_back(std::move(table));
  }
}

Eigen::VectorXd UnivariateTable::column(const MultiIndex& alpha) const {
  if (alpha.size() != values_.size()) {
    throw Error(ErrorKind::DimensionMismatch,
                "multi-index dimension does not match table");
  }
  Eigen::VectorXd col = Eigen::VectorXd::Ones(rows_);
  for (std::size_t d = 0; d < alpha.size(); ++d) {
    const int k = alpha[d];
    if (k == 0) continue;
    if (k > max_degree_) {
      throw Error(ErrorKind::DegreeOverflow,
                  "multi-index degree exceeds table degree");
    }
    col.array() *= values_[d].col(k).array();
  }
  return col;
}

}  // namespace spce
