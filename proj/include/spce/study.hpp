#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <json.hpp>

#include "spce/adaptive.hpp"
#include "spce/model.hpp"

namespace spce {

/// One row of a benchmark table: options, selected degree, errors, retained
/// term count (constant included) and the seed that reproduces it.
struct RunReport {
  std::string benchmark;
  Method method = Method::Lar;
  Eigen::Index ed_size = 0;
  double q = 1.0;
  std::optional<int> r;
  int best_degree = 0;
  double loo_error = 0.0;
  std::optional<double> validation_error;
  std::size_t n_retained = 0;
  std::uint64_t seed = 0;
  double wall_time = 0.0;
  std::size_t heredity_violations = 0;
};

/// `include_timing = false` omits wall_time so that reports of repeated runs
/// compare bit-for-bit.
nlohmann::json to_json(const RunReport& report, bool include_timing = true);

struct FitConfig {
  Method method = Method::Lar;
  int p_min = 1;
  int p_max = 9;
  double q = 1.0;
  std::optional<int> r = 2;
  ChildTruncation child_truncation = ChildTruncation::QNorm;
  LarOptions lar;
};

AdaptiveOptions adaptive_options(const FitConfig& config);

struct BenchmarkRequest {
  std::string name;
  FitConfig fit;
  Eigen::Index ed_size = 200;
  std::uint64_t seed = 0;
  Eigen::Index validation_size = 100000;
};

struct BenchmarkRun {
  RunReport report;
  AdaptiveResult fit;
  Eigen::VectorXd y_true;  // validation sample
  Eigen::VectorXd y_pred;
};

/// Independent stream seed derived from a base seed and a tag sequence.
std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> tags);

/// LHS design of the true function, degree-adaptive fit, validation error on
/// a fresh Monte Carlo sample.
BenchmarkRun run_benchmark(const BenchmarkRequest& request);

struct ConvergenceRequest {
  std::string name;
  std::vector<Eigen::Index> sizes;
  std::size_t replications = 1;
  std::vector<Method> methods = {Method::Lar, Method::HLar};
  std::uint64_t seed = 0;
  FitConfig fit;
  std::size_t threads = 0;  // 0: hardware concurrency
};

struct ConvergenceRow {
  Method method = Method::Lar;
  Eigen::Index size = 0;
  std::size_t replication = 0;
  std::uint64_t seed = 0;
  std::optional<double> loo_error;
  int best_degree = 0;
  std::size_t n_retained = 0;
  std::size_t heredity_violations = 0;
  std::string error;
};

/// Rows ordered by (method, size, replication). Both methods see the same
/// design for a given (size, replication). Failed fits are recorded, not thrown.
std::vector<ConvergenceRow> run_convergence(const ConvergenceRequest& request);

std::string convergence_csv(const std::vector<ConvergenceRow>& rows);

}  // namespace spce
