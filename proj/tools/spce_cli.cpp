// spce: fit, predict, benchmark and convergence studies for sparse PCE.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "spce/benchmarks.hpp"
#include "spce/error.hpp"
#include "spce/heredity.hpp"
#include "spce/io.hpp"
#include "spce/study.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;

struct FitFlags {
  std::string method = "LAR";
  int p_min = 1;
  int p_max = 9;
  double q = 1.0;
  int r = 2;  // <= 0: unbounded
  std::string child_truncation = "qnorm";
  std::size_t patience = 10;
  bool plain_loo = false;

  void add_to(CLI::App* app) {
    app->add_option("--method", method, "LAR or hLAR")->capture_default_str();
    app->add_option("--p-min", p_min, "Lowest degree of the sweep")->capture_default_str();
    app->add_option("--p-max", p_max, "Highest degree of the sweep")->capture_default_str();
    app->add_option("--q", q, "Hyperbolic exponent in (0, 1]")->capture_default_str();
    app->add_option("--r", r, "Maximal rank of the reference candidate set (<= 0: no limit)")
        ->capture_default_str();
    app->add_option("--child-truncation", child_truncation,
                    "h-LAR child rule: per_dimension, total_degree or qnorm")
        ->capture_default_str();
    app->add_option("--patience", patience, "LAR steps without LOO improvement before stopping")
        ->capture_default_str();
    app->add_flag("--plain-loo", plain_loo,
                  "Select and report the LOO error without the finite-sample correction");
  }

  spce::FitConfig config() const {
    spce::FitConfig c;
    c.method = spce::parse_method(method);
    c.p_min = p_min;
    c.p_max = p_max;
    c.q = q;
    c.r = r > 0 ? std::optional<int>(r) : std::nullopt;
    c.child_truncation = spce::parse_child_truncation(child_truncation);
    c.lar.patience = patience;
    c.lar.loo_correction = !plain_loo;
    return c;
  }
};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw spce::Error(spce::ErrorKind::InvalidInput, "cannot open '" + path + "'");
  return in;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw spce::Error(spce::ErrorKind::InvalidInput, "cannot write '" + path + "'");
  out << text;
}

int exit_code_for(spce::ErrorKind kind) {
  switch (kind) {
    case spce::ErrorKind::RankDeficient:
    case spce::ErrorKind::SaturatedLeverage:
    case spce::ErrorKind::NonFiniteCorrelation:
    case spce::ErrorKind::DegenerateOutput:
      return kExitNumerical;
    default:
      return kExitInput;
  }
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse polynomial chaos expansions with LAR and heredity-adaptive h-LAR"};
  app.require_subcommand(1);

  // fit
  auto* fit = app.add_subcommand("fit", "Fit a sparse PCE to a design CSV (x1,...,xM,y)");
  std::string design_path, marginals = "uniform:0:1", model_out, report_out;
  FitFlags fit_flags;
  fit->add_option("--design", design_path, "Design CSV")->required();
  fit->add_option("--marginals", marginals,
                  "Input marginals 'uniform:a:b' or 'gaussian:mean:sd', ';'-separated; one "
                  "entry applies to every input")
      ->capture_default_str();
  fit->add_option("--output", model_out, "Model JSON path")->required();
  fit->add_option("--report", report_out, "Report JSON path (default: stdout)");
  fit_flags.add_to(fit);

  // predict
  auto* predict = app.add_subcommand("predict", "Evaluate a fitted model on a point CSV");
  std::string model_in, points_path, predictions_out;
  predict->add_option("--model", model_in, "Model JSON")->required();
  predict->add_option("--points", points_path, "Point CSV (x1,...,xM)")->required();
  predict->add_option("--output", predictions_out, "Predictions CSV (default: stdout)");

  // benchmark
  auto* bench = app.add_subcommand("benchmark", "Run one benchmark fit and validation");
  std::string bench_name = "SobolG", bench_report, bench_model, bench_export;
  long ed_size = 200, validation_size = 100000;
  std::uint64_t seed = 0;
  bool no_timing = false;
  FitFlags bench_flags;
  bench->add_option("--name", bench_name, "SobolG or SchwefelMod")->capture_default_str();
  bench->add_option("--ed-size", ed_size, "Experimental design size")->capture_default_str();
  bench->add_option("--seed", seed, "Seed of the design and validation samples")
      ->capture_default_str();
  bench->add_option("--validation-size", validation_size, "Monte Carlo validation size")
      ->capture_default_str();
  bench->add_option("--report", bench_report, "Report JSON path (default: stdout)");
  bench->add_option("--model-out", bench_model, "Write the fitted model JSON");
  bench->add_option("--export-predictions", bench_export,
                    "Write validation samples as CSV (y_true,y_pred)");
  bench->add_flag("--no-timing", no_timing, "Omit wall_time from the report");
  bench_flags.add_to(bench);

  // converge
  auto* conv = app.add_subcommand("converge", "Replicated LOO convergence study");
  std::string conv_name = "SobolG", sizes_text = "100,200,300", methods_text = "LAR,hLAR",
              conv_out;
  std::size_t replications = 10, threads = 0;
  std::uint64_t conv_seed = 0;
  FitFlags conv_flags;
  conv->add_option("--name", conv_name, "SobolG or SchwefelMod")->capture_default_str();
  conv->add_option("--sizes", sizes_text, "Ascending comma-separated design sizes")
      ->capture_default_str();
  conv->add_option("--replications", replications, "Replications per size")
      ->capture_default_str();
  conv->add_option("--methods", methods_text, "Comma-separated methods")->capture_default_str();
  conv->add_option("--seed", conv_seed, "Base seed")->capture_default_str();
  conv->add_option("--threads", threads, "Worker threads (0: all cores)")->capture_default_str();
  conv->add_option("--output", conv_out, "CSV path (default: stdout)");
  conv_flags.add_to(conv);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*fit) {
      auto in = open_input(design_path);
      spce::ExperimentalDesign ed = spce::read_design_csv(in);
      const auto input =
          spce::parse_marginals(marginals, static_cast<std::size_t>(ed.inputs.cols()));
      const auto config = fit_flags.config();
      const auto result = spce::fit_degree_adaptive(
          ed, input, spce::degree_range(config.p_min, config.p_max),
          spce::adaptive_options(config));
      write_text(model_out, spce::model_to_json(result.model).dump(2) + "\n");
      spce::RunReport report;
      report.benchmark = design_path;
      report.method = config.method;
      report.ed_size = ed.size();
      report.q = config.q;
      report.r = config.method == spce::Method::HLar ? std::optional<int>(2) : config.r;
      report.best_degree = result.model.best_degree;
      report.loo_error = result.model.diagnostics.loo_error;
      report.n_retained = result.model.retained();
      report.heredity_violations = result.heredity_violations;
      write_text(report_out, spce::to_json(report, false).dump(2) + "\n");
    } else if (*predict) {
      auto model_stream = open_input(model_in);
      nlohmann::json j;
      try {
        model_stream >> j;
      } catch (const nlohmann::json::exception& e) {
        throw spce::Error(spce::ErrorKind::ParseError, std::string("model file: ") + e.what());
      }
      const auto model = spce::model_from_json(j);
      auto points_stream = open_input(points_path);
      const Eigen::MatrixXd x = spce::read_points_csv(points_stream);
      std::ostringstream out;
      spce::write_csv(out, {"y"}, model.predict(x));
      write_text(predictions_out, out.str());
    } else if (*bench) {
      spce::BenchmarkRequest request;
      request.name = bench_name;
      request.fit = bench_flags.config();
      request.ed_size = ed_size;
      request.seed = seed;
      request.validation_size = validation_size;
      const auto run = spce::run_benchmark(request);
      write_text(bench_report, spce::to_json(run.report, !no_timing).dump(2) + "\n");
      if (!bench_model.empty()) {
        write_text(bench_model, spce::model_to_json(run.fit.model).dump(2) + "\n");
      }
      if (!bench_export.empty()) {
        Eigen::MatrixXd values(run.y_true.size(), 2);
        values << run.y_true, run.y_pred;
        std::ostringstream out;
        spce::write_csv(out, {"y_true", "y_pred"}, values);
        write_text(bench_export, out.str());
      }
    } else if (*conv) {
      spce::ConvergenceRequest request;
      request.name = conv_name;
      for (const auto& s : split_list(sizes_text)) request.sizes.push_back(std::stol(s));
      request.methods.clear();
      for (const auto& m : split_list(methods_text)) request.methods.push_back(spce::parse_method(m));
      request.replications = replications;
      request.seed = conv_seed;
      request.fit = conv_flags.config();
      request.threads = threads;
      write_text(conv_out, spce::convergence_csv(spce::run_convergence(request)));
    }
  } catch (const spce::Error& e) {
    std::cerr << "spce: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "spce: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitOk;
}
