#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>

#include <json.hpp>

#include "scurve/fitting.hpp"
#include "scurve/hysteresis.hpp"
#include "scurve/profiling.hpp"
#include "scurve/superposition.hpp"

namespace scurve::io {

using nlohmann::json;

/// CSV with header "H,B", one "h,b" pair per line, '#' comment lines and
/// blank lines ignored. Throws ParseError naming the 1-based line.
Dataset read_csv(std::istream& in, const std::string& label = {});
Dataset read_csv_file(const std::string& path);
void write_csv(std::ostream& out, const Dataset& data);

/// {"a": ..., "components": [{"p", "m", "x_c", "y_c"}, ...]} at full precision.
json to_json(const Superposition& sup);
Superposition superposition_from_json(const json& doc);

/// A model document: a superposition plus the optional fit metadata written
/// by `fit` ("h_range", "rms_residual", "converged", "iterations", "branch", "label").
struct ModelDocument {
  Superposition model;
  std::optional<std::pair<double, double>> h_range;
  std::optional<Branch> branch;
  std::string label;
};
ModelDocument model_from_json(const json& doc);
ModelDocument read_model_file(const std::string& path);
json fit_report(const FitResult& fit, const Dataset& data);

FitConfig fit_config_from_json(const json& doc);

/// Reports carry numbers rounded to 9 significant digits.
double round_sig(double v, int digits = 9);
json to_json(const CurveProfile& profile);
json to_json(const LoopAnalysis& loop, const HysteresisLoop& branches);

json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& doc);

}  // namespace scurve::io
