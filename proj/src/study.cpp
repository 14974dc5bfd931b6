#include "spce/study.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <charconv>
#include <sstream>
#include <thread>

#include "spce/benchmarks.hpp"
#include "spce/error.hpp"
#include "spce/inputs.hpp"

namespace spce {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t kDesignStream = 1;
constexpr std::uint64_t kValidationStream = 2;

std::string format_double(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> tags) {
  std::uint64_t s = splitmix64(base);
  for (const auto t : tags) s = splitmix64(s ^ splitmix64(t));
  return s;
}

nlohmann::json to_json(const RunReport& report, bool include_timing) {
  nlohmann::json j = {
      {"benchmark", report.benchmark},
      {"method", method_name(report.method)},
      {"ed_size", report.ed_size},
      {"q", report.q},
      {"r", report.r ? nlohmann::json(*report.r) : nlohmann::json(nullptr)},
      {"best_degree", report.best_degree},
      {"loo_error", std::isfinite(report.loo_error) ? nlohmann::json(report.loo_error)
                                                   : nlohmann::json(nullptr)},
      {"validation_error", report.validation_error ? nlohmann::json(*report.validation_error)
                                                   : nlohmann::json(nullptr)},
      {"n_retained", report.n_retained},
      {"seed", report.seed},
      {"heredity_violations", report.heredity_violations},
  };
  if (include_timing) j["wall_time"] = report.wall_time;
  return j;
}

AdaptiveOptions adaptive_options(const FitConfig& config) {
  AdaptiveOptions options;
  options.method = config.method;
  options.q = config.q;
  options.r = config.r;
  options.child_truncation = config.child_truncation;
  options.lar = config.lar;
  return options;
}

BenchmarkRun run_benchmark(const BenchmarkRequest& request) {
  const auto start = std::chrono::steady_clock::now();
  const Benchmark& bench = find_benchmark(request.name);
  ExperimentalDesign ed;
  ed.seed = request.seed;
  ed.inputs = lhs_sample(bench.input_model, request.ed_size,
                         derive_seed(request.seed, {kDesignStream}));
  ed.outputs = bench.evaluate(ed.inputs);

  BenchmarkRun run;
  run.fit = fit_degree_adaptive(ed, bench.input_model,
                                degree_range(request.fit.p_min, request.fit.p_max),
                                adaptive_options(request.fit));
  const SparsePceModel& model = run.fit.model;
  if (request.validation_size >= 2) {
    const Eigen::MatrixXd xv = monte_carlo_sample(
        bench.input_model, request.validation_size, derive_seed(request.seed, {kValidationStream}));
    run.y_true = bench.evaluate(xv);
    run.y_pred = model.predict(xv);
  }

  RunReport& report = run.report;
  report.benchmark = request.name;
  report.method = request.fit.method;
  report.ed_size = request.ed_size;
  report.q = request.fit.q;
  report.r = request.fit.method == Method::HLar ? std::optional<int>(2) : request.fit.r;
  report.best_degree = model.best_degree;
  report.loo_error = model.diagnostics.loo_error;
  if (run.y_true.size() >= 2) report.validation_error = validation_error(run.y_true, run.y_pred);
  report.n_retained = model.retained();
  report.seed = request.seed;
  report.heredity_violations = run.fit.heredity_violations;
  report.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return run;
}

std::vector<ConvergenceRow> run_convergence(const ConvergenceRequest& request) {
  if (request.sizes.empty() || !std::is_sorted(request.sizes.begin(), request.sizes.end())) {
    throw Error(ErrorKind::InvalidInput, "sizes must be non-empty and ascending");
  }
  if (request.replications < 1) throw Error(ErrorKind::InvalidInput, "replications must be >= 1");
  const Benchmark& bench = find_benchmark(request.name);

  std::vector<ConvergenceRow> rows;
  for (const Method m : request.methods) {
    for (const Eigen::Index n : request.sizes) {
      for (std::size_t rep = 0; rep < request.replications; ++rep) {
        ConvergenceRow row;
        row.method = m;
        row.size = n;
        row.replication = rep;
        row.seed = derive_seed(request.seed, {static_cast<std::uint64_t>(n), rep});
        rows.push_back(std::move(row));
      }
    }
  }

  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) {
      ConvergenceRow& row = rows[i];
      try {
        ExperimentalDesign ed;
        ed.seed = row.seed;
        ed.inputs = lhs_sample(bench.input_model, row.size, derive_seed(row.seed, {kDesignStream}));
        ed.outputs = bench.evaluate(ed.inputs);
        FitConfig config = request.fit;
        config.method = row.method;
        const AdaptiveResult fit =
            fit_degree_adaptive(ed, bench.input_model, degree_range(config.p_min, config.p_max),
                                adaptive_options(config));
        row.loo_error = fit.model.diagnostics.loo_error;
        row.best_degree = fit.model.best_degree;
        row.n_retained = fit.model.retained();
        row.heredity_violations = fit.heredity_violations;
      } catch (const std::exception& e) {
        row.error = e.what();
      }
    }
  };
  std::size_t threads = request.threads ? request.threads : std::thread::hardware_concurrency();
  threads = std::clamp<std::size_t>(threads, 1, rows.size());
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return rows;
}

std::string convergence_csv(const std::vector<ConvergenceRow>& rows) {
  std::ostringstream out;
  out << "method,size,replication,seed,loo_error,best_degree,n_retained,error\n";
  for (const auto& row : rows) {
    std::string error = row.error;
    std::replace(error.begin(), error.end(), ',', ';');
    std::replace(error.begin(), error.end(), '\n', ' ');
    out << method_name(row.method) << ',' << row.size << ',' << row.replication << ','
        << row.seed << ',' << (row.loo_error ? format_double(*row.loo_error) : "NA") << ','
        << row.best_degree << ',' << row.n_retained << ',' << error << '\n';
  }
  return out.str();
}

}  // namespace spce
