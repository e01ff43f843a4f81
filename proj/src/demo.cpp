#include "scurve/demo.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "scurve/errors.hpp"
#include "scurve/hysteresis.hpp"
#include "scurve/io.hpp"
#include "scurve/profiling.hpp"

namespace scurve::demo {

namespace {

using Clock = std::chrono::steady_clock;

Check within(std::string name, double expected, double actual, double tol) {
  Check c{std::move(name), expected, actual, tol, false, {}};
  c.pass = std::isfinite(actual) && std::fabs(actual - expected) <= tol;
  return c;
}

Check failed(std::string name, double expected, double tol, const std::string& why) {
  Check c{std::move(name), expected, std::nan(""), tol, false, why};
  return c;
}

Check runtime(std::string name, Clock::time_point start, double limit_s) {
  const double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
  Check c{std::move(name), limit_s, elapsed, limit_s, elapsed < limit_s, {}};
  c.show_values = false;
  return c;
}

Point point_from(const io::json& v) { return Point{v.at(0).get<double>(), v.at(1).get<double>()}; }

void representative(const std::string& dir, std::vector<Check>& out) {
  const std::string area_name = "representative loop area (a=0.002, m=41)";
  const auto start = Clock::now();
  try {
    const io::json doc = io::read_json_file(dir + "/representative_loop.json");
    const HysteresisLoop loop =
        representative_loop(doc.at("a").get<double>(), doc.at("m").get<double>(),
                            point_from(doc.at("upper_center")), point_from(doc.at("lower_center")));
    const LoopAnalysis res = analyze(loop);
    out.push_back(within(area_name, 1033.57, res.area, 0.005 * 1033.57));
  } catch (const std::exception& e) {
    out.push_back(failed(area_name, 1033.57, 0.005 * 1033.57,
                         std::string("representative_loop.json: ") + e.what()));
  }
  out.push_back(runtime("representative loop runtime < 1 s", start, 1.0));
}

void fitted_loop(const std::string& dir, std::vector<Check>& out) {
  const auto start = Clock::now();
  std::string stage = "mnzn_upper.json";
  try {
    const io::ModelDocument upper = io::read_model_file(dir + "/mnzn_upper.json");
    stage = "mnzn_lower.json";
    const io::ModelDocument lower = io::read_model_file(dir + "/mnzn_lower.json");
    stage = "loop";
    const auto range = default_h_range(upper.h_range.value_or(std::make_pair(-120.0, 120.0)),
                                       lower.h_range.value_or(std::make_pair(-120.0, 120.0)));
    const HysteresisLoop loop = make_loop(upper.model, lower.model, range.first, range.second);
    const LoopAnalysis res = analyze(loop);
    out.push_back(within("Mn-Zn left intersection H", -106.093, res.left.x, 0.01 * 106.093));
    out.push_back(within("Mn-Zn left intersection B", -0.346, res.left.y, 0.005));
    out.push_back(within("Mn-Zn right intersection H", 105.503, res.right.x, 0.01 * 105.503));
    out.push_back(within("Mn-Zn right intersection B", 0.346, res.right.y, 0.005));
    out.push_back(within("Mn-Zn loop area", 14.74, res.area, 0.02 * 14.74));
  } catch (const std::exception& e) {
    const std::string why = stage + ": " + e.what();
    out.push_back(failed("Mn-Zn left intersection H", -106.093, 0.01 * 106.093, why));
    out.push_back(failed("Mn-Zn left intersection B", -0.346, 0.005, why));
    out.push_back(failed("Mn-Zn right intersection H", 105.503, 0.01 * 105.503, why));
    out.push_back(failed("Mn-Zn right intersection B", 0.346, 0.005, why));
    out.push_back(failed("Mn-Zn loop area", 14.74, 0.02 * 14.74, why));
  }
  out.push_back(runtime("Mn-Zn loop runtime < 1 s", start, 1.0));
}

void permeability(const std::string& dir, const std::string& file, const std::string& tag,
                  Range window, double m0, double x0, std::vector<Check>& out) {
  const std::string value_name = tag + " max permeability";
  const std::string where_name = tag + " max permeability location";
  try {
    const io::ModelDocument doc = io::read_model_file(dir + "/" + file);
    const Inflection inf = inflection(doc.model, window);
    out.push_back(within(value_name, m0, inf.m0, 0.01 * m0));
    out.push_back(within(where_name, x0, inf.x0, 0.5));
  } catch (const std::exception& e) {
    const std::string why = file + ": " + e.what();
    out.push_back(failed(value_name, m0, 0.01 * m0, why));
    out.push_back(failed(where_name, x0, 0.5, why));
  }
}

}  // namespace

std::vector<Check> run(const std::string& fixture_dir) {
  std::vector<Check> out;
  representative(fixture_dir, out);
  fitted_loop(fixture_dir, out);
  permeability(fixture_dir, "mnzn_upper.json", "Mn-Zn upper", Range{-40.0, 20.0}, 0.00976, -11.99,
               out);
  permeability(fixture_dir, "mnzn_lower.json", "Mn-Zn lower", Range{-20.0, 40.0}, 0.0099, 11.698,
               out);
  return out;
}

void print(std::ostream& out, const std::vector<Check>& checks) {
  char line[512];
  for (const Check& c : checks) {
    if (!c.show_values) {
      std::snprintf(line, sizeof line, "%-4s  %s\n", c.pass ? "PASS" : "FAIL", c.name.c_str());
    } else if (!c.detail.empty()) {
      std::snprintf(line, sizeof line, "%-4s  %-44s  expected %.9g +/- %.3g; %s\n", "FAIL",
                    c.name.c_str(), c.expected, c.tolerance, c.detail.c_str());
    } else {
      std::snprintf(line, sizeof line, "%-4s  %-44s  expected %.9g +/- %.3g, got %.9g\n",
                    c.pass ? "PASS" : "FAIL", c.name.c_str(), c.expected, c.tolerance, c.actual);
    }
    out << line;
  }
  std::size_t passed = 0;
  for (const Check& c : checks) passed += c.pass ? 1 : 0;
  out << passed << "/" << checks.size() << " checks passed\n";
}

bool all_pass(const std::vector<Check>& checks) {
  for (const Check& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

}  // namespace scurve::demo
