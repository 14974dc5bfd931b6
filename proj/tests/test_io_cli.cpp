#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

#include <json.hpp>

#include "spce/adaptive.hpp"
#include "spce/error.hpp"
#include "spce/inputs.hpp"
#include "spce/io.hpp"

using namespace spce;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("spce_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

struct Run {
  int code;
  std::string err;
};

Run cli(const std::string& args, const TempDir& dir) {
  const std::string err_file = dir / "stderr.txt";
  const std::string cmd = std::string(SPCE_CLI_PATH) + " " + args + " > " + (dir / "stdout.txt") +
                          " 2> " + err_file;
  const int status = std::system(cmd.c_str());
  std::ifstream in(err_file);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1,
          std::string(std::istreambuf_iterator<char>(in), {})};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

void write(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

ExperimentalDesign linear_design() {
  const InputModel input = InputModel::iid(3, Uniform{0, 1});
  const Eigen::MatrixXd x = lhs_sample(input, 50, 12);
  return {x, (0.5 + 2.0 * x.col(0).array() - 1.5 * x.col(1).array() + x.col(2).array()).matrix(), 12};
}

}  // namespace

TEST_CASE("model JSON round trip keeps predictions") {
  const InputModel input({Uniform{-2, 3}, Gaussian{1, 0.5}});
  const Eigen::MatrixXd x = lhs_sample(input, 60, 4);
  Eigen::VectorXd y(60);
  for (Eigen::Index i = 0; i < 60; ++i) y[i] = std::sin(x(i, 0)) * std::exp(0.3 * x(i, 1));
  const ExperimentalDesign ed{x, y, 4};
  AdaptiveOptions opts;
  opts.method = Method::HLar;
  opts.q = 0.75;
  const SparsePceModel m = fit_degree_adaptive(ed, input, degree_range(1, 5), opts).model;
  const SparsePceModel back = model_from_json(nlohmann::json::parse(model_to_json(m).dump()));
  CHECK(back.basis == m.basis);
  CHECK(back.method == m.method);
  CHECK(back.best_degree == m.best_degree);
  const Eigen::MatrixXd probe = monte_carlo_sample(input, 200, 5);
  CHECK((back.predict(probe) - m.predict(probe)).cwiseAbs().maxCoeff() <= 1e-14);

  nlohmann::json bad = model_to_json(m);
  bad["schema_version"] = 99;
  CHECK_THROWS_AS(model_from_json(bad), Error);
}

TEST_CASE("CSV parsing reports the offending line") {
  std::istringstream good("x1,x2,y\n1,2,3\n4,5,6\n");
  const ExperimentalDesign ed = read_design_csv(good);
  CHECK(ed.inputs.rows() == 2);
  CHECK(ed.outputs[1] == 6.0);

  std::istringstream bad("x1,x2,y\n1,2,3\n4,oops,6\n");
  try {
    read_design_csv(bad);
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ParseError);
    CHECK(e.detail() == 3);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  std::istringstream ragged("x1,y\n1,2\n3\n");
  CHECK_THROWS_AS(read_design_csv(ragged), Error);

  std::istringstream points("x1,x2,y\n1,2,9\n");
  CHECK(read_points_csv(points).cols() == 2);
}

TEST_CASE("design CSV round trip is exact") {
  const ExperimentalDesign ed = linear_design();
  std::stringstream buf;
  write_design_csv(buf, ed);
  const ExperimentalDesign back = read_design_csv(buf);
  CHECK(back.inputs == ed.inputs);
  CHECK(back.outputs == ed.outputs);
}

TEST_CASE("marginal parsing") {
  const InputModel one = parse_marginals("uniform:-1:2", 3);
  CHECK(one.dimension() == 3);
  const InputModel two = parse_marginals("uniform:0:1;gaussian:2:0.5", 2);
  CHECK(std::get<Gaussian>(two.marginals()[1]).sd == 0.5);
  CHECK_THROWS_AS(parse_marginals("uniform:0:1;uniform:0:1", 3), Error);
  CHECK_THROWS_AS(parse_marginals("beta:1:2", 1), Error);
}

TEST_CASE("CLI fit with both methods on a linear design") {
  TempDir dir;
  std::ostringstream csv;
  write_design_csv(csv, linear_design());
  write(dir / "design.csv", csv.str());
  nlohmann::json models[2];
  const char* methods[] = {"LAR", "hLAR"};
  for (int k = 0; k < 2; ++k) {
    const Run r = cli(std::string("fit --design ") + (dir / "design.csv") +
                          " --marginals uniform:0:1 --p-max 4 --method " + methods[k] +
                          " --output " + (dir / "model.json") + " --report " + (dir / "report.json"),
                      dir);
    REQUIRE_MESSAGE(r.code == 0, r.err);
    const auto report = nlohmann::json::parse(slurp(dir / "report.json"));
    CHECK(report["best_degree"] == 1);
    CHECK(report["loo_error"].get<double>() < 1e-10);
    CHECK(report["method"] == methods[k]);
    models[k] = nlohmann::json::parse(slurp(dir / "model.json"));
  }
  CHECK(models[0]["basis"] == models[1]["basis"]);
}

TEST_CASE("CLI predict reproduces in-sample residuals") {
  TempDir dir;
  const InputModel input = InputModel::iid(2, Uniform{0, 1});
  const Eigen::MatrixXd x = lhs_sample(input, 40, 2);
  Eigen::VectorXd y(40);
  for (Eigen::Index i = 0; i < 40; ++i) y[i] = std::exp(x(i, 0)) * std::cos(2 * x(i, 1));
  std::ostringstream csv;
  write_design_csv(csv, {x, y, 2});
  write(dir / "design.csv", csv.str());
  REQUIRE(cli("fit --design " + (dir / "design.csv") + " --marginals uniform:0:1 --method hLAR --output " +
                  (dir / "model.json") + " --report " + (dir / "report.json"),
              dir)
              .code == 0);
  const Run r = cli("predict --model " + (dir / "model.json") + " --points " + (dir / "design.csv") +
                        " --output " + (dir / "pred.csv"),
                    dir);
  REQUIRE_MESSAGE(r.code == 0, r.err);
  std::istringstream pred_in(slurp(dir / "pred.csv"));
  const Eigen::VectorXd pred = read_csv(pred_in).values.col(0);
  REQUIRE(pred.size() == 40);
  const auto model = model_from_json(nlohmann::json::parse(slurp(dir / "model.json")));
  const double emp = (y - pred).squaredNorm() / 40.0 / ((y.array() - y.mean()).square().sum() / 39.0);
  CHECK(std::abs(emp - model.diagnostics.empirical_error) <= 1e-10 * std::max(1.0, emp));
}

TEST_CASE("CLI predict with a constant model") {
  TempDir dir;
  SparsePceModel m;
  m.input_model = InputModel::iid(2, Uniform{0, 1});
  m.basis = {MultiIndex::zero(2)};
  m.coefficients = Eigen::VectorXd::Constant(1, 4.5);
  write(dir / "model.json", model_to_json(m).dump());
  write(dir / "points.csv", "x1,x2\n0.1,0.2\n0.9,0.3\n0.5,0.5\n");
  REQUIRE(cli("predict --model " + (dir / "model.json") + " --points " + (dir / "points.csv") +
                  " --output " + (dir / "pred.csv"),
              dir)
              .code == 0);
  std::istringstream in(slurp(dir / "pred.csv"));
  CHECK(read_csv(in).values == Eigen::MatrixXd::Constant(3, 1, 4.5));

  write(dir / "wide.csv", "x1,x2,x3\n0.1,0.2,0.3\n");
  const Run mismatch = cli("predict --model " + (dir / "model.json") + " --points " + (dir / "wide.csv"), dir);
  CHECK(mismatch.code == 2);
  write(dir / "outside.csv", "x1,x2\n0.1,1.2\n");
  CHECK(cli("predict --model " + (dir / "model.json") + " --points " + (dir / "outside.csv"), dir).code == 2);
}

TEST_CASE("CLI error paths") {
  TempDir dir;
  write(dir / "bad.csv", "x1,x2,y\n0.1,0.2,1\n0.3,0.4,2\n0.5,abc,3\n");
  const Run malformed = cli("fit --design " + (dir / "bad.csv") + " --output " + (dir / "m.json"), dir);
  CHECK(malformed.code == 2);
  CHECK(malformed.err.find("line 4") != std::string::npos);

  const Run missing = cli("predict --model " + (dir / "nope.json") + " --points " + (dir / "bad.csv"), dir);
  CHECK(missing.code == 2);
  CHECK(cli("fit --design", dir).code == 2);
  CHECK(cli("benchmark --name Nope --ed-size 20", dir).code == 2);
}

TEST_CASE("CLI converge row count and determinism") {
  TempDir dir;
  const std::string args = "converge --name SobolG --sizes 100 --replications 1 --methods LAR,hLAR "
                           "--seed 5 --p-max 4 --q 0.5 --output ";
  REQUIRE(cli(args + (dir / "a.csv"), dir).code == 0);
  REQUIRE(cli(args + (dir / "b.csv") + " --threads 1", dir).code == 0);
  const std::string a = slurp(dir / "a.csv");
  CHECK(a == slurp(dir / "b.csv"));
  std::istringstream lines(a);
  std::string line;
  int count = 0;
  std::getline(lines, line);
  CHECK(line == "method,size,replication,seed,loo_error,best_degree,n_retained,error");
  while (std::getline(lines, line)) ++count;
  CHECK(count == 2);
}

TEST_CASE("CLI benchmark is reproducible") {
  TempDir dir;
  const std::string args = "benchmark --name SobolG --method hLAR --ed-size 80 --seed 3 --p-max 4 --q 0.5 "
                           "--validation-size 2000 --no-timing --report ";
  REQUIRE(cli(args + (dir / "a.json") + " --export-predictions " + (dir / "pred.csv"), dir).code == 0);
  REQUIRE(cli(args + (dir / "b.json"), dir).code == 0);
  CHECK(slurp(dir / "a.json") == slurp(dir / "b.json"));
  const auto report = nlohmann::json::parse(slurp(dir / "a.json"));
  CHECK_FALSE(report.contains("wall_time"));
  CHECK(report["heredity_violations"] == 0);
  std::istringstream in(slurp(dir / "pred.csv"));
  CHECK(read_csv(in).values.rows() == 2000);
}
