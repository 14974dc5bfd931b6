#include "spce/benchmarks.hpp"

#include <cmath>

#include "spce/error.hpp"

namespace spce {

double sobol_g(std::span<const double> x) {
  if (x.size() != kSobolC.size()) {
    throw Error(ErrorKind::DimensionMismatch, "Sobol' g-function takes 8 inputs");
  }
  double y = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] >= 0.0 && x[i] <= 1.0)) {
      throw Error(ErrorKind::OutOfSupport, "Sobol' g-function input outside [0, 1]");
    }
    y *= (std::abs(4.0 * x[i] - 2.0) + kSobolC[i]) / (1.0 + kSobolC[i]);
  }
  return y;
}

double schwefel_mod(std::span<const double> x) {
  constexpr std::size_t m = 20;
  if (x.size() != m) throw Error(ErrorKind::DimensionMismatch, "Schwefel function takes 20 inputs");
  const auto term = [&](int i) {  // 1-based dimension
    const double xi = x[static_cast<std::size_t>(i - 1)];
    const double w = i / 20.0;
    return (w + 0.5) * xi * std::sin(std::sqrt(w * std::abs(xi)));
  };
  double first = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    if (!(x[i] >= -500.0 && x[i] <= 500.0)) {
      throw Error(ErrorKind::OutOfSupport, "Schwefel input outside [-500, 500]");
    }
    first += term(static_cast<int>(i + 1));
  }
  double s1 = 0.0;
  for (const int j : kSchwefelS1) s1 += term(j);
  double s2 = 0.0;
  for (const int k : kSchwefelS2) s2 += x[static_cast<std::size_t>(k - 1)];
  return -first + s1 * s2 / 3000.0;
}

double sobol_g_variance() {
  double prod = 1.0;
  for (const double c : kSobolC) prod *= 1.0 + 1.0 / (3.0 * (1.0 + c) * (1.0 + c));
  return prod - 1.0;
}

Eigen::VectorXd Benchmark::evaluate(const Eigen::MatrixXd& x) const {
  Eigen::VectorXd y(x.rows());
  std::vector<double> row(static_cast<std::size_t>(x.cols()));
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) row[static_cast<std::size_t>(j)] = x(i, j);
    y[i] = function(row);
  }
  return y;
}

const Benchmark& find_benchmark(const std::string& name) {
  static const std::vector<Benchmark> registry = {
      {"SobolG", InputModel::iid(8, Uniform{0.0, 1.0}), sobol_g},
      {"SchwefelMod", InputModel::iid(20, Uniform{-500.0, 500.0}), schwefel_mod},
  };
  for (const auto& b : registry) {
    if (b.name == name) return b;
  }
  throw Error(ErrorKind::InvalidInput, "unknown benchmark '" + name + "'");
}

std::vector<std::string> benchmark_names() { return {"SobolG", "SchwefelMod"}; }

double validation_error(const Eigen::VectorXd& y_true, const Eigen::VectorXd& y_pred) {
  if (y_true.size() != y_pred.size()) {
    throw Error(ErrorKind::DimensionMismatch, "validation vectors differ in length");
  }
  if (y_true.size() < 2) throw Error(ErrorKind::InvalidInput, "validation needs L >= 2");
  const double denom = (y_true.array() - y_true.mean()).square().sum();
  if (!(denom > 0.0)) throw Error(ErrorKind::DegenerateOutput, "validation output has zero variance");
  return (y_true - y_pred).squaredNorm() / denom;
}

Moments pce_moments(const SparsePceModel& model) {
  Moments m{0.0, 0.0};
  for (std::size_t j = 0; j < model.basis.size(); ++j) {
    const double c = model.coefficients[static_cast<Eigen::Index>(j)];
    if (model.basis[j].is_zero()) {
      m.mean += c;
    } else {
      m.variance += c * c;
    }
  }
  return m;
}

}  // namespace spce
