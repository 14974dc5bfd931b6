#pragma once

#include <array>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "spce/inputs.hpp"
#include "spce/model.hpp"

namespace spce {

inline constexpr std::array<double, 8> kSobolC = {1, 2, 5, 10, 20, 50, 100, 500};
inline constexpr std::array<int, 5> kSchwefelS1 = {1, 3, 5, 6, 8};
inline constexpr std::array<int, 3> kSchwefelS2 = {15, 18, 20};

/// prod_i (|4 x_i - 2| + c_i) / (1 + c_i) on [0, 1]^8.
double sobol_g(std::span<const double> x);

/// Modified Schwefel function on [-500, 500]^20 with interaction between the
/// dimensions of S1 and S2 (1-based).
double schwefel_mod(std::span<const double> x);

/// Analytic mean (1) and variance prod(1 + 1/(3 (1 + c_i)^2)) - 1 of sobol_g.
double sobol_g_variance();

struct Benchmark {
  std::string name;
  InputModel input_model;
  std::function<double(std::span<const double>)> function;

  Eigen::VectorXd evaluate(const Eigen::MatrixXd& x) const;
};

/// Registered names: "SobolG", "SchwefelMod".
const Benchmark& find_benchmark(const std::string& name);
std::vector<std::string> benchmark_names();

/// sum (y_true - y_pred)^2 / sum (y_true - mean)^2.
double validation_error(const Eigen::VectorXd& y_true, const Eigen::VectorXd& y_pred);

struct Moments {
  double mean;
  double variance;
};

/// Mean is the constant coefficient, variance the sum of squared others.
Moments pce_moments(const SparsePceModel& model);

}  // namespace spce
