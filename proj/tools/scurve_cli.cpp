// Command-line front end: fit, profile, hysteresis, eval, demo.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "scurve/demo.hpp"
#include "scurve/errors.hpp"
#include "scurve/fitting.hpp"
#include "scurve/hysteresis.hpp"
#include "scurve/io.hpp"
#include "scurve/profiling.hpp"
#include "scurve/svg.hpp"

#ifndef SCURVE_FIXTURE_DIR
#define SCURVE_FIXTURE_DIR "fixtures"
#endif

namespace {

using namespace scurve;

bool ends_with(const std::string& s, const std::string& tail) {
  return s.size() >= tail.size() && s.compare(s.size() - tail.size(), tail.size(), tail) == 0;
}

std::vector<double> parse_list(const std::string& text, char sep) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    std::size_t used = 0;
    const double v = std::stod(item, &used);
    if (used != item.size()) throw ParseError("bad number '" + item + "'");
    out.push_back(v);
  }
  return out;
}

Point parse_point(const std::string& text) {
  const std::vector<double> v = parse_list(text, ',');
  if (v.size() != 2) throw ParseError("expected x,y but got '" + text + "'");
  return {v[0], v[1]};
}

// "x1,y1;x2,y2;..."
std::vector<Center> parse_centers(const std::string& text) {
  std::vector<Center> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    const Point p = parse_point(item);
    out.push_back({p.x, p.y});
  }
  return out;
}

struct FitOptions {
  std::string config;
  std::size_t n = 0;
  std::string centers;
  std::string branch;
};

FitConfig build_config(const FitOptions& o) {
  FitConfig cfg = o.config.empty() ? FitConfig{} : io::fit_config_from_json(io::read_json_file(o.config));
  if (!o.centers.empty()) {
    cfg.centers = parse_centers(o.centers);
    cfg.center_strategy = CenterStrategy::user;
    cfg.n_curves = cfg.centers.size();
  }
  if (o.n > 0) cfg.n_curves = o.n;
  return cfg;
}

Dataset load_dataset(const std::string& path, const std::string& branch) {
  Dataset d = io::read_csv_file(path);
  if (!branch.empty()) d.branch = branch_from_string(branch);
  return d;
}

FitResult fit_or_fail(const Dataset& data, const FitConfig& cfg) {
  FitResult fit = fit_superposition(data, cfg);
  if (!fit.converged) throw Error("fit of " + data.label + " did not converge: " + fit.diagnostics);
  return fit;
}

void plot_fit(const std::string& path, const Dataset& data, const Superposition& model,
              const std::string& title) {
  svg::Plot plot(title, "H (A/m)", "B (T)");
  std::vector<svg::XY> pts;
  for (const Sample& s : data.samples) pts.push_back({s.h, s.b});
  plot.add_points(pts, "#1f77b4", "data");
  const auto [lo, hi] = data.h_range();
  plot.add_line(svg::sample([&](double x) { return eval(model, x); }, lo, hi), "#d62728", "fit");
  plot.write_file(path);
}

int cmd_fit(const std::string& data_path, const FitOptions& fo, const std::string& out_path,
            const std::string& plot_path) {
  const Dataset data = load_dataset(data_path, fo.branch);
  const FitConfig cfg = build_config(fo);
  const FitResult fit = fit_or_fail(data, cfg);
  io::write_json_file(out_path, io::fit_report(fit, data));
  if (!plot_path.empty()) plot_fit(plot_path, data, fit.model, data.label);
  std::printf("n = %zu, rms residual = %.9g T, iterations = %d, converged = %s\n",
              fit.model.components.size(), fit.rms_residual, fit.iterations,
              fit.converged ? "yes" : "no");
  return 0;
}

int cmd_profile(const std::string& model_path, const std::string& data_path, const FitOptions& fo,
                const std::string& range_text, bool knee, const std::string& out_path,
                const std::string& plot_path) {
  Superposition model;
  std::optional<std::pair<double, double>> range;
  std::optional<Branch> branch;
  std::size_t n_samples = 0;
  std::optional<Dataset> data;
  if (!model_path.empty()) {
    io::ModelDocument doc = io::read_model_file(model_path);
    model = doc.model;
    range = doc.h_range;
    branch = doc.branch;
  } else {
    data = load_dataset(data_path, fo.branch);
    const FitResult fit = fit_or_fail(*data, build_config(fo));
    model = fit.model;
    range = data->h_range();
    branch = data->branch;
    n_samples = data->samples.size();
  }
  if (!range_text.empty()) {
    const std::vector<double> r = parse_list(range_text, ',');
    if (r.size() != 2 || !(r[0] < r[1])) throw ParseError("--range expects lo,hi with lo < hi");
    range = std::make_pair(r[0], r[1]);
  }
  if (!range) throw ParseError("no H range: the model has no \"h_range\"; pass --range lo,hi");

  ProfileOptions opt;
  opt.with_knee = knee || branch == Branch::demagnetization;
  opt.n_samples = n_samples;
  const CurveProfile prof = profile(model, Range{range->first, range->second}, opt);
  io::write_json_file(out_path, io::to_json(prof));

  if (!plot_path.empty()) {
    svg::Plot plot("profile", "H (A/m)", "B (T)");
    if (data) {
      std::vector<svg::XY> pts;
      for (const Sample& s : data->samples) pts.push_back({s.h, s.b});
      plot.add_points(pts, "#1f77b4", "data");
    }
    plot.add_line(svg::sample([&](double x) { return eval(model, x); }, range->first, range->second),
                  "#d62728", "model");
    plot.add_marker({prof.x0, prof.y0}, "#2ca02c", "inflection");
    if (prof.knee) plot.add_marker({prof.knee->x_k, prof.knee->y_k}, "#9467bd", "knee");
    plot.write_file(plot_path);
  }
  std::printf("x0 = %.9g A/m, y0 = %.9g T, m0 = %.9g H/m (relative %.9g)\n", prof.x0, prof.y0,
              prof.m0, prof.relative_permeability());
  if (prof.a_interval) {
    std::printf("a0 in [%.9g, %.9g] T^-2\n", prof.a_interval->a1, prof.a_interval->a2);
  } else {
    std::printf("a0 interval unavailable: %s\n", prof.a_interval_reason.c_str());
  }
  for (const std::string& w : prof.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
  return 0;
}

struct Branches {
  Superposition model;
  std::pair<double, double> range;
  std::optional<Dataset> data;
};

Branches load_branch(const std::string& path, const FitOptions& fo, Branch default_branch) {
  Branches b;
  if (ends_with(path, ".json")) {
    io::ModelDocument doc = io::read_model_file(path);
    if (!doc.h_range) throw ParseError(path + ": branch model needs \"h_range\"");
    b.model = doc.model;
    b.range = *doc.h_range;
  } else {
    Dataset d = io::read_csv_file(path);
    d.branch = default_branch;
    b.model = fit_or_fail(d, build_config(fo)).model;
    b.range = d.h_range();
    b.data = std::move(d);
  }
  return b;
}

int cmd_hysteresis(const std::string& upper_path, const std::string& lower_path,
                   const FitOptions& fo, double a, double m, const std::string& upper_center,
                   const std::string& lower_center, const std::string& out_path,
                   const std::string& plot_path) {
  HysteresisLoop loop;
  std::optional<Dataset> upper_data;
  std::optional<Dataset> lower_data;
  if (!upper_path.empty() || !lower_path.empty()) {
    if (upper_path.empty() || lower_path.empty()) {
      throw ParseError("--upper and --lower must be given together");
    }
    Branches up = load_branch(upper_path, fo, Branch::hysteresis_upper);
    Branches lo = load_branch(lower_path, fo, Branch::hysteresis_lower);
    const auto window = default_h_range(up.range, lo.range);
    loop = make_loop(std::move(up.model), std::move(lo.model), window.first, window.second);
    upper_data = std::move(up.data);
    lower_data = std::move(lo.data);
  } else {
    if (upper_center.empty() || lower_center.empty() || std::isnan(a) || std::isnan(m)) {
      throw ParseError("give --upper/--lower, or --a, --m, --upper-center and --lower-center");
    }
    loop = representative_loop(a, m, parse_point(upper_center), parse_point(lower_center));
  }
  const LoopAnalysis res = analyze(loop);
  io::write_json_file(out_path, io::to_json(res, loop));

  if (!plot_path.empty()) {
    svg::Plot plot("hysteresis loop", "H (A/m)", "B (T)");
    for (const auto* d : {&upper_data, &lower_data}) {
      if (!*d) continue;
      std::vector<svg::XY> pts;
      for (const Sample& s : (*d)->samples) pts.push_back({s.h, s.b});
      plot.add_points(pts, "#7f7f7f", "data");
    }
    const double pad = 0.1 * (res.right.x - res.left.x);
    const double lo = res.left.x - pad;
    const double hi = res.right.x + pad;
    plot.add_line(svg::sample([&](double x) { return eval(loop.upper, x); }, lo, hi), "#d62728",
                  "upper");
    plot.add_line(svg::sample([&](double x) { return eval(loop.lower, x); }, lo, hi), "#1f77b4",
                  "lower");
    plot.add_marker({res.left.x, res.left.y}, "#2ca02c", "left crossing");
    plot.add_marker({res.right.x, res.right.y}, "#2ca02c", "right crossing");
    plot.write_file(plot_path);
  }
  std::printf("left = (%.9g, %.9g), right = (%.9g, %.9g), area = %.9g J\n", res.left.x, res.left.y,
              res.right.x, res.right.y, res.area);
  return 0;
}

int cmd_eval(const std::string& model_path, const std::vector<double>& at, bool derivatives) {
  const Superposition model = io::read_model_file(model_path).model;
  for (double x : at) {
    if (derivatives) {
      const Jet j = jet(model, x);
      std::printf("%.17g %.17g %.17g %.17g %.17g\n", x, j.y, j.d1, j.d2, j.d3);
    } else {
      std::printf("%.17g %.17g\n", x, eval(model, x));
    }
  }
  return 0;
}

int cmd_demo(const std::string& fixture_dir) {
  const std::vector<demo::Check> checks = demo::run(fixture_dir);
  demo::print(std::cout, checks);
  return demo::all_pass(checks) ? 0 : 1;
}

void add_fit_options(CLI::App* cmd, FitOptions& fo) {
  cmd->add_option("--n", fo.n, "number of S-curves");
  cmd->add_option("--centers", fo.centers, "fixed centers as \"x1,y1;x2,y2;...\"");
  cmd->add_option("--config", fo.config, "fit configuration (JSON)");
  cmd->add_option("--branch", fo.branch,
                  "initial | hysteresis-upper | hysteresis-lower | demagnetization");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"S-curve superposition modelling of B-H curves"};
  app.require_subcommand(1);

  FitOptions fo;
  std::string data_path, model_path, out_path, plot_path, range_text;
  std::string upper_path, lower_path, upper_center, lower_center;
  std::string fixture_dir = SCURVE_FIXTURE_DIR;
  std::vector<double> at;
  bool knee = false;
  bool derivatives = false;
  double a = std::nan("");
  double m = std::nan("");

  CLI::App* fit = app.add_subcommand("fit", "fit a superposition to a B-H dataset");
  fit->add_option("--data", data_path, "CSV with header H,B")->required();
  fit->add_option("--out", out_path, "model JSON to write")->required();
  fit->add_option("--plot", plot_path, "SVG overlay of data and fit");
  add_fit_options(fit, fo);

  CLI::App* prof = app.add_subcommand("profile", "inflection, permeability, a0 interval, knee");
  auto* model_opt = prof->add_option("--model", model_path, "model JSON");
  auto* data_opt = prof->add_option("--data", data_path, "CSV to fit first");
  model_opt->excludes(data_opt);
  prof->add_option("--out", out_path, "profile JSON to write")->required();
  prof->add_option("--range", range_text, "H range lo,hi (defaults to the model's h_range)");
  prof->add_flag("--knee", knee, "also locate the knee point");
  prof->add_option("--plot", plot_path, "SVG of the model with profile markers");
  add_fit_options(prof, fo);

  CLI::App* hyst = app.add_subcommand("hysteresis", "branch intersections and loop area");
  hyst->add_option("--upper", upper_path, "upper branch (CSV to fit, or model JSON)");
  hyst->add_option("--lower", lower_path, "lower branch (CSV to fit, or model JSON)");
  hyst->add_option("--a", a, "representative loop: shared a");
  hyst->add_option("--m", m, "representative loop: shared m");
  hyst->add_option("--upper-center", upper_center, "representative loop: x,y");
  hyst->add_option("--lower-center", lower_center, "representative loop: x,y");
  hyst->add_option("--out", out_path, "loop JSON to write")->required();
  hyst->add_option("--plot", plot_path, "SVG of the loop");
  add_fit_options(hyst, fo);

  CLI::App* ev = app.add_subcommand("eval", "evaluate a model");
  ev->add_option("--model", model_path, "model JSON")->required();
  ev->add_option("--at", at, "abscissa(e)")->required();
  ev->add_flag("--derivatives", derivatives, "also print d1, d2, d3");

  CLI::App* dm = app.add_subcommand("demo", "check the reference hysteresis numbers");
  dm->add_option("--fixtures", fixture_dir, "fixture directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*fit) return cmd_fit(data_path, fo, out_path, plot_path);
    if (*prof) {
      if (model_path.empty() && data_path.empty()) throw ParseError("give --model or --data");
      return cmd_profile(model_path, data_path, fo, range_text, knee, out_path, plot_path);
    }
    if (*hyst) {
      return cmd_hysteresis(upper_path, lower_path, fo, a, m, upper_center, lower_center, out_path,
                            plot_path);
    }
    if (*ev) return cmd_eval(model_path, at, derivatives);
    if (*dm) return cmd_demo(fixture_dir);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
