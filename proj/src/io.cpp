#include "spce/io.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "spce/error.hpp"

namespace spce {

using nlohmann::json;

namespace {

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double number_or_inf(const json& j) {
  return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>();
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, sep)) out.push_back(trim(field));
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

double parse_double(const std::string& s, long line) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (s.empty() || ec != std::errc{} || ptr != end || !std::isfinite(v)) {
    throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": bad number '" + s + "'",
                line);
  }
  return v;
}

}  // namespace

json input_model_to_json(const InputModel& model) {
  json arr = json::array();
  for (const auto& m : model.marginals()) {
    if (const auto* u = std::get_if<Uniform>(&m)) {
      arr.push_back({{"type", "uniform"}, {"lower", u->lower}, {"upper", u->upper}});
    } else {
      const auto& g = std::get<Gaussian>(m);
      arr.push_back({{"type", "gaussian"}, {"mean", g.mean}, {"sd", g.sd}});
    }
  }
  return arr;
}

InputModel input_model_from_json(const json& j) {
  std::vector<Marginal> marginals;
  for (const auto& m : j) {
    const auto type = m.at("type").get<std::string>();
    if (type == "uniform") {
      marginals.emplace_back(Uniform{m.at("lower").get<double>(), m.at("upper").get<double>()});
    } else if (type == "gaussian") {
      marginals.emplace_back(Gaussian{m.at("mean").get<double>(), m.at("sd").get<double>()});
    } else {
      throw Error(ErrorKind::ParseError, "unknown marginal type '" + type + "'");
    }
  }
  return InputModel(std::move(marginals));
}

json model_to_json(const SparsePceModel& model) {
  json families = json::array();
  for (const auto f : model.input_model.families()) {
    families.push_back(f == PolyFamily::Legendre ? "legendre" : "hermite");
  }
  json basis = json::array();
  for (const auto& a : model.basis) basis.push_back(a.degrees());
  std::vector<double> coefficients(model.coefficients.data(),
                                   model.coefficients.data() + model.coefficients.size());
  return {
      {"schema_version", kModelSchemaVersion},
      {"method", method_name(model.method)},
      {"input_model", input_model_to_json(model.input_model)},
      {"families", families},
      {"basis", basis},
      {"coefficients", coefficients},
      {"diagnostics",
       {{"loo_error", finite_or_null(model.diagnostics.loo_error)},
        {"empirical_error", finite_or_null(model.diagnostics.empirical_error)}}},
      {"truncation",
       {{"p", model.truncation.p},
        {"q", model.truncation.q},
        {"r", model.truncation.r ? json(*model.truncation.r) : json(nullptr)}}},
      {"best_degree", model.best_degree},
      {"seed", model.seed},
  };
}

SparsePceModel model_from_json(const json& j) {
  try {
    const int version = j.at("schema_version").get<int>();
    if (version != kModelSchemaVersion) {
      throw Error(ErrorKind::ParseError,
                  "unsupported model schema version " + std::to_string(version));
    }
    SparsePceModel model;
    model.method = parse_method(j.at("method").get<std::string>());
    model.input_model = input_model_from_json(j.at("input_model"));
    for (const auto& degrees : j.at("basis")) {
      model.basis.emplace_back(degrees.get<std::vector<int>>());
      if (model.basis.back().size() != model.input_model.dimension()) {
        throw Error(ErrorKind::ParseError, "basis entry dimension does not match input model");
      }
    }
    const auto coefficients = j.at("coefficients").get<std::vector<double>>();
    if (coefficients.size() != model.basis.size()) {
      throw Error(ErrorKind::ParseError, "basis and coefficients differ in length");
    }
    model.coefficients = Eigen::Map<const Eigen::VectorXd>(
        coefficients.data(), static_cast<Eigen::Index>(coefficients.size()));
    const auto& diag = j.at("diagnostics");
    model.diagnostics = {number_or_inf(diag.at("loo_error")),
                         number_or_inf(diag.at("empirical_error"))};
    const auto& trunc = j.at("truncation");
    model.truncation.p = trunc.at("p").get<int>();
    model.truncation.q = trunc.at("q").get<double>();
    if (!trunc.at("r").is_null()) model.truncation.r = trunc.at("r").get<int>();
    model.best_degree = j.at("best_degree").get<int>();
    model.seed = j.at("seed").get<std::uint64_t>();
    return model;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("malformed model file: ") + e.what());
  }
}

InputModel parse_marginals(const std::string& text, std::size_t dimension) {
  std::vector<Marginal> marginals;
  for (const auto& entry : split(text, ';')) {
    const auto parts = split(entry, ':');
    if (parts.size() != 3) {
      throw Error(ErrorKind::ParseError, "marginal '" + entry + "' is not type:a:b");
    }
    const double a = parse_double(parts[1], 0);
    const double b = parse_double(parts[2], 0);
    if (parts[0] == "uniform") {
      marginals.emplace_back(Uniform{a, b});
    } else if (parts[0] == "gaussian") {
      marginals.emplace_back(Gaussian{a, b});
    } else {
      throw Error(ErrorKind::ParseError, "unknown marginal type '" + parts[0] + "'");
    }
  }
  if (marginals.size() == 1 && dimension > 1) return InputModel::iid(dimension, marginals[0]);
  if (marginals.size() != dimension) {
    throw Error(ErrorKind::DimensionMismatch,
                std::to_string(marginals.size()) + " marginals for " + std::to_string(dimension) +
                    " inputs");
  }
  return InputModel(std::move(marginals));
}

CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) break;
  }
  if (trim(line).empty()) throw Error(ErrorKind::ParseError, "line 1: missing CSV header", 1);
  table.header = split(trim(line), ',');
  const auto width = static_cast<Eigen::Index>(table.header.size());
  std::vector<double> values;
  Eigen::Index rows = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split(trim(line), ',');
    if (static_cast<Eigen::Index>(fields.size()) != width) {
      throw Error(ErrorKind::ParseError,
                  "line " + std::to_string(line_no) + ": expected " + std::to_string(width) +
                      " fields, found " + std::to_string(fields.size()),
                  line_no);
    }
    for (const auto& f : fields) values.push_back(parse_double(f, line_no));
    ++rows;
  }
  table.values = Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      values.data(), rows, width);
  return table;
}

void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const Eigen::MatrixXd& values) {
  for (std::size_t j = 0; j < header.size(); ++j) out << (j ? "," : "") << header[j];
  out << '\n';
  char buf[32];
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    for (Eigen::Index j = 0; j < values.cols(); ++j) {
      const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), values(i, j));
      out << (j ? "," : "") << std::string_view(buf, static_cast<std::size_t>(ptr - buf));
    }
    out << '\n';
  }
}

ExperimentalDesign read_design_csv(std::istream& in) {
  CsvTable table = read_csv(in);
  const auto width = static_cast<Eigen::Index>(table.header.size());
  if (width < 2 || table.header.back() != "y") {
    throw Error(ErrorKind::ParseError, "line 1: design header must be x1,...,xM,y", 1);
  }
  for (Eigen::Index j = 0; j + 1 < width; ++j) {
    if (table.header[static_cast<std::size_t>(j)] != "x" + std::to_string(j + 1)) {
      throw Error(ErrorKind::ParseError, "line 1: design header must be x1,...,xM,y", 1);
    }
  }
  ExperimentalDesign ed;
  ed.inputs = table.values.leftCols(width - 1);
  ed.outputs = table.values.col(width - 1);
  return ed;
}

void write_design_csv(std::ostream& out, const ExperimentalDesign& ed) {
  std::vector<std::string> header;
  for (Eigen::Index j = 0; j < ed.inputs.cols(); ++j) header.push_back("x" + std::to_string(j + 1));
  header.emplace_back("y");
  Eigen::MatrixXd values(ed.inputs.rows(), ed.inputs.cols() + 1);
  values << ed.inputs, ed.outputs;
  write_csv(out, header, values);
}

Eigen::MatrixXd read_points_csv(std::istream& in) {
  CsvTable table = read_csv(in);
  auto width = static_cast<Eigen::Index>(table.header.size());
  if (width >= 1 && table.header.back() == "y") --width;
  for (Eigen::Index j = 0; j < width; ++j) {
    if (table.header[static_cast<std::size_t>(j)] != "x" + std::to_string(j + 1)) {
      throw Error(ErrorKind::ParseError, "line 1: point header must be x1,...,xM", 1);
    }
  }
  if (width == 0) throw Error(ErrorKind::ParseError, "line 1: no input columns", 1);
  return table.values.leftCols(width);
}

}  // namespace spce
