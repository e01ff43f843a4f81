#include "scurve/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "scurve/errors.hpp"

namespace scurve::io {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_number(const std::string& field, std::size_t line) {
  const std::string t = trim(field);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    throw ParseError("line " + std::to_string(line) + ": '" + t + "' is not a number", line);
  }
  if (used != t.size() || !std::isfinite(v)) {
    throw ParseError("line " + std::to_string(line) + ": '" + t + "' is not a finite number", line);
  }
  return v;
}

double number_field(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc.at(key).is_number()) {
    throw ParseError(std::string("missing or non-numeric field \"") + key + "\"");
  }
  return doc.at(key).get<double>();
}

}  // namespace

Dataset read_csv(std::istream& in, const std::string& label) {
  Dataset data;
  data.label = label;
  std::string raw;
  std::size_t line = 0;
  bool header_seen = false;
  while (std::getline(in, raw)) {
    ++line;
    const std::string text = trim(raw);
    if (text.empty() || text.front() == '#') continue;
    if (!header_seen) {
      std::string compact;
      for (char ch : text) {
        if (ch != ' ' && ch != '\t') compact += ch;
      }
      if (compact != "H,B") {
        throw ParseError("line " + std::to_string(line) + ": expected header \"H,B\"", line);
      }
      header_seen = true;
      continue;
    }
    const auto comma = text.find(',');
    if (comma == std::string::npos || text.find(',', comma + 1) != std::string::npos) {
      throw ParseError("line " + std::to_string(line) + ": expected two comma-separated values",
                       line);
    }
    Sample s{parse_number(text.substr(0, comma), line), parse_number(text.substr(comma + 1), line)};
    if (!data.samples.empty() && !(s.h > data.samples.back().h)) {
      throw ParseError("line " + std::to_string(line) + ": H must be strictly increasing (row " +
                           std::to_string(data.samples.size() + 1) + ")",
                       line);
    }
    data.samples.push_back(s);
  }
  if (data.samples.empty()) throw ParseError("no samples");
  if (data.samples.size() < 4) {
    throw ParseError("need at least 4 samples, got " + std::to_string(data.samples.size()));
  }
  return data;
}

Dataset read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return read_csv(in, path);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what(), e.line());
  }
}

void write_csv(std::ostream& out, const Dataset& data) {
  out << "H,B\n";
  char buf[64];
  for (const Sample& s : data.samples) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", s.h, s.b);
    out << buf;
  }
}

json to_json(const Superposition& sup) {
  json comps = json::array();
  for (const Component& c : sup.components) {
    comps.push_back({{"p", c.p}, {"m", c.m}, {"x_c", c.x_c}, {"y_c", c.y_c}});
  }
  return json{{"a", sup.a}, {"components", comps}};
}

Superposition superposition_from_json(const json& doc) {
  if (!doc.is_object()) throw ParseError("model document must be a JSON object");
  Superposition sup;
  sup.a = number_field(doc, "a");
  if (!doc.contains("components") || !doc.at("components").is_array()) {
    throw ParseError("missing \"components\" array");
  }
  for (const json& c : doc.at("components")) {
    sup.components.push_back(
        {number_field(c, "p"), number_field(c, "m"), number_field(c, "x_c"), number_field(c, "y_c")});
  }
  try {
    validate(sup);
  } catch (const DomainError& e) {
    throw ParseError(std::string("invalid model: ") + e.what());
  }
  return sup;
}

ModelDocument model_from_json(const json& doc) {
  ModelDocument out;
  out.model = superposition_from_json(doc);
  if (doc.contains("h_range")) {
    const json& r = doc.at("h_range");
    if (!r.is_array() || r.size() != 2 || !r[0].is_number() || !r[1].is_number() ||
        !(r[0].get<double>() < r[1].get<double>())) {
      throw ParseError("\"h_range\" must be [lo, hi] with lo < hi");
    }
    out.h_range = std::make_pair(r[0].get<double>(), r[1].get<double>());
  }
  if (doc.contains("branch")) {
    try {
      out.branch = branch_from_string(doc.at("branch").get<std::string>());
    } catch (const std::exception& e) {
      throw ParseError(std::string("bad \"branch\": ") + e.what());
    }
  }
  if (doc.contains("label") && doc.at("label").is_string()) out.label = doc.at("label");
  return out;
}

ModelDocument read_model_file(const std::string& path) {
  try {
    return model_from_json(read_json_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

json fit_report(const FitResult& fit, const Dataset& data) {
  json doc = to_json(fit.model);
  const auto [lo, hi] = data.h_range();
  doc["h_range"] = {lo, hi};
  doc["branch"] = to_string(data.branch);
  doc["label"] = data.label;
  doc["rms_residual"] = round_sig(fit.rms_residual);
  doc["converged"] = fit.converged;
  doc["iterations"] = fit.iterations;
  return doc;
}

FitConfig fit_config_from_json(const json& doc) {
  if (!doc.is_object()) throw ParseError("config document must be a JSON object");
  FitConfig cfg;
  try {
    if (doc.contains("n_curves")) cfg.n_curves = doc.at("n_curves").get<std::size_t>();
    if (doc.contains("center_strategy")) {
      const std::string s = doc.at("center_strategy").get<std::string>();
      if (s == "quantile") {
        cfg.center_strategy = CenterStrategy::quantile;
      } else if (s == "user") {
        cfg.center_strategy = CenterStrategy::user;
      } else {
        throw ParseError("center_strategy must be \"quantile\" or \"user\"");
      }
    }
    if (doc.contains("centers")) {
      for (const json& c : doc.at("centers")) {
        cfg.centers.push_back({c.at(0).get<double>(), c.at(1).get<double>()});
      }
      if (!doc.contains("center_strategy")) cfg.center_strategy = CenterStrategy::user;
    }
    if (doc.contains("share_a") && !doc.at("share_a").get<bool>()) {
      throw ParseError("share_a must be true; every component shares one a");
    }
    if (doc.contains("max_iter")) cfg.max_iter = doc.at("max_iter").get<int>();
    if (doc.contains("residual_tol")) cfg.residual_tol = doc.at("residual_tol").get<double>();
    if (doc.contains("damping_init")) cfg.damping_init = doc.at("damping_init").get<double>();
    if (doc.contains("weight_range")) {
      const json& w = doc.at("weight_range");
      cfg.weight_range = std::make_pair(w.at(0).get<std::size_t>(), w.at(1).get<std::size_t>());
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad fit config: ") + e.what());
  }
  return cfg;
}

double round_sig(double v, int digits) {
  if (!std::isfinite(v) || v == 0.0) return v;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return std::strtod(buf, nullptr);
}

json to_json(const CurveProfile& p) {
  json doc;
  doc["x0"] = round_sig(p.x0);
  doc["y0"] = round_sig(p.y0);
  doc["m0"] = round_sig(p.m0);
  if (p.a_interval) {
    doc["a_interval"] = {round_sig(p.a_interval->a1), round_sig(p.a_interval->a2)};
    doc["a_interval_provenance"] = {{"x1", round_sig(p.a_interval->from_x1)},
                                    {"x2", round_sig(p.a_interval->from_x2)}};
  } else {
    doc["a_interval"] = "unavailable";
    doc["a_interval_reason"] = p.a_interval_reason;
  }
  doc["pct_nonlinearity"] = round_sig(p.pct_nonlinearity);
  doc["damped_measure"] = round_sig(p.damped_measure);
  if (p.knee) {
    doc["knee"] = {{"x_k", round_sig(p.knee->x_k)},
                   {"y_k", round_sig(p.knee->y_k)},
                   {"at_endpoint", p.knee->at_endpoint},
                   {"flat", p.knee->flat}};
  } else {
    doc["knee"] = nullptr;
  }
  doc["relative_permeability"] = round_sig(p.relative_permeability());
  doc["units"] = {{"x0", "A/m"}, {"y0", "T"}, {"m0", "H/m"}, {"a_interval", "T^-2"},
                  {"damped_measure", "H/m"}};
  doc["warnings"] = p.warnings;
  return doc;
}

json to_json(const LoopAnalysis& loop, const HysteresisLoop& branches) {
  json doc;
  doc["left"] = {{"x", round_sig(loop.left.x)}, {"y", round_sig(loop.left.y)}};
  doc["right"] = {{"x", round_sig(loop.right.x)}, {"y", round_sig(loop.right.y)}};
  doc["area"] = round_sig(loop.area);
  doc["area_units"] = "J";
  doc["h_range"] = {branches.h_lo, branches.h_hi};
  doc["upper"] = to_json(branches.upper);
  doc["lower"] = to_json(branches.lower);
  return doc;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << doc.dump(2) << '\n';
  if (!out) throw Error("failed writing " + path);
}

}  // namespace scurve::io
