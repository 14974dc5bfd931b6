#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace spce {

class MultiIndex;

/// Orthonormal univariate families. Legendre is orthonormal for the uniform
/// density on [-1, 1]; Hermite (probabilists') for the standard normal.
enum class PolyFamily { Legendre, Hermite };

inline constexpr int kDefaultMaxDegree = 50;

/// Value of the degree-k orthonormal polynomial at standardized coordinate u.
double eval_univariate(PolyFamily family, int degree, double u,
                       int max_degree = kDefaultMaxDegree);

/// Values of degrees 0..max_degree at u, written into `out` (size max_degree+1).
void eval_univariate_all(PolyFamily family, int max_degree, double u,
                         std::span<double> out);

/// Tensor-product value prod_i psi_{alpha_i}(u_i). Factors are multiplied in
/// ascending dimension order.
double eval_multivariate(std::span<const PolyFamily> families,
                         const MultiIndex& alpha, std::span<const double> u,
                         int max_degree = kDefaultMaxDegree);

/// Univariate values for a batch of standardized points: table(d)(i, k) is the
/// degree-k polynomial of dimension d at point i. Shared by design-matrix
/// construction and prediction.
class UnivariateTable {
 public:
  UnivariateTable(const Eigen::MatrixXd& u_points,
                  std::span<const PolyFamily> families, int max_degree);

  const Eigen::MatrixXd& dimension(std::size_t d) const { return values_[d]; }
  std::size_t dimensions() const { return values_.size(); }
  int max_degree() const { return max_degree_; }

  /// Column of evaluations of psi_alpha over all points.
  Eigen::VectorXd column(const MultiIndex& alpha) const;

 private:
  std::vector<Eigen::MatrixXd> values_;
  Eigen::Index rows_;
  int max_degree_;
};

}  // namespace spce
