#include "spce/model.hpp"

#include "spce/error.hpp"
#include "spce/polynomials.hpp"

namespace spce {

std::string method_name(Method m) { return m == Method::Lar ? "LAR" : "hLAR"; }

Method parse_method(const std::string& name) {
  if (name == "LAR" || name == "lar") return Method::Lar;
  if (name == "hLAR" || name == "hlar" || name == "h-LAR") return Method::HLar;
  throw Error(ErrorKind::InvalidInput, "unknown method '" + name + "'");
}

double SparsePceModel::predict(std::span<const double> x) const {
  Eigen::MatrixXd row(1, static_cast<Eigen::Index>(x.size()));
  for (std::size_t j = 0; j < x.size(); ++j) row(0, static_cast<Eigen::Index>(j)) = x[j];
  return predict(row)[0];
}

Eigen::VectorXd SparsePceModel::predict(const Eigen::MatrixXd& x) const {
  if (static_cast<std::size_t>(x.cols()) != input_model.dimension()) {
    throw Error(ErrorKind::DimensionMismatch, "prediction points have " +
                                                  std::to_string(x.cols()) + " columns, model expects " +
                                                  std::to_string(input_model.dimension()));
  }
  if (basis.size() != static_cast<std::size_t>(coefficients.size())) {
    throw Error(ErrorKind::DimensionMismatch, "basis and coefficients differ in length");
  }
  int max_degree = 0;
  for (const auto& a : basis) max_degree = std::max(max_degree, a.max_degree());
  const auto families = input_model.families();
  const UnivariateTable table(input_model.standardize(x), families, max_degree);
  Eigen::VectorXd y = Eigen::VectorXd::Zero(x.rows());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    y += coefficients[static_cast<Eigen::Index>(j)] * table.column(basis[j]);
  }
  return y;
}

}  // namespace spce
