#pragma once

#include <istream>
#include <ostream>
#include <string>

#include <Eigen/Core>
#include <json.hpp>

#include "spce/inputs.hpp"
#include "spce/model.hpp"

namespace spce {

inline constexpr int kModelSchemaVersion = 1;

nlohmann::json model_to_json(const SparsePceModel& model);
/// Throws ParseError on unsupported schema versions or malformed content.
SparsePceModel model_from_json(const nlohmann::json& j);

nlohmann::json input_model_to_json(const InputModel& model);
InputModel input_model_from_json(const nlohmann::json& j);

/// Parses "uniform:a:b" / "gaussian:mean:sd" entries separated by ';'. A single
/// entry is broadcast to `dimension` inputs.
InputModel parse_marginals(const std::string& text, std::size_t dimension);

struct CsvTable {
  std::vector<std::string> header;
  Eigen::MatrixXd values;
};

/// Numeric CSV with a header line. ParseError carries the 1-based line number.
CsvTable read_csv(std::istream& in);
void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const Eigen::MatrixXd& values);

/// Design CSV: header x1,...,xM,y.
ExperimentalDesign read_design_csv(std::istream& in);
void write_design_csv(std::ostream& out, const ExperimentalDesign& ed);

/// Point CSV: header x1,...,xM; a trailing y column is ignored.
Eigen::MatrixXd read_points_csv(std::istream& in);

}  // namespace spce
