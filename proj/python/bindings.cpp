#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <utility>
#include <vector>

#include "scurve/errors.hpp"
#include "scurve/fitting.hpp"
#include "scurve/hysteresis.hpp"
#include "scurve/io.hpp"
#include "scurve/profiling.hpp"
#include "scurve/scurve.hpp"
#include "scurve/superposition.hpp"

namespace py = pybind11;
using namespace scurve;

namespace {

Dataset to_dataset(const std::vector<double>& h, const std::vector<double>& b) {
  if (h.size() != b.size()) throw DomainError("h and b must have the same length");
  Dataset d;
  for (std::size_t i = 0; i < h.size(); ++i) d.samples.push_back({h[i], b[i]});
  return d;
}

}  // namespace

PYBIND11_MODULE(_scurve, m) {
  m.doc() = "S-curve superposition models of magnetization curves";

  static py::exception<Error> error(m, "Error", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      error(e.what());
    }
  });

  py::class_<Component>(m, "Component")
      .def(py::init<double, double, double, double>(), py::arg("p"), py::arg("m"), py::arg("x_c"),
           py::arg("y_c"))
      .def_readwrite("p", &Component::p)
      .def_readwrite("m", &Component::m)
      .def_readwrite("x_c", &Component::x_c)
      .def_readwrite("y_c", &Component::y_c)
      .def("__repr__", [](const Component& c) {
        return "Component(p=" + std::to_string(c.p) + ", m=" + std::to_string(c.m) +
               ", x_c=" + std::to_string(c.x_c) + ", y_c=" + std::to_string(c.y_c) + ")";
      });

  py::class_<Superposition>(m, "Superposition")
      .def(py::init([](double a, std::vector<Component> comps) {
             Superposition s{a, std::move(comps)};
             validate(s);
             return s;
           }),
           py::arg("a"), py::arg("components"))
      .def_readwrite("a", &Superposition::a)
      .def_readwrite("components", &Superposition::components)
      .def("__call__", [](const Superposition& s, double x) { return eval(s, x); })
      .def("to_json", [](const Superposition& s) { return io::to_json(s).dump(); })
      .def_static("from_json",
                  [](const std::string& text) { return io::superposition_from_json(io::json::parse(text)); });

  m.def("solve_cubic", &solve_cubic, py::arg("a"), py::arg("c"), "real root of a u^3 + u = c");
  m.def(
      "eval_forward",
      [](double a, double mm, double x_c, double y_c, double x) { return eval_forward({a, mm, x_c, y_c}, x); },
      py::arg("a"), py::arg("m"), py::arg("x_c"), py::arg("y_c"), py::arg("x"));
  m.def(
      "eval_inverse",
      [](double a, double mm, double x_c, double y_c, double y) { return eval_inverse({a, mm, x_c, y_c}, y); },
      py::arg("a"), py::arg("m"), py::arg("x_c"), py::arg("y_c"), py::arg("y"));
  m.def("d1", py::overload_cast<const Superposition&, double>(&d1));
  m.def("d2", py::overload_cast<const Superposition&, double>(&d2));
  m.def("d3", py::overload_cast<const Superposition&, double>(&d3));
  m.def("decompose_subprocesses", [](const Superposition& s, double x) {
    const SubprocessValues v = decompose_subprocesses(s, x);
    return py::make_tuple(v.s_one, v.s_two, v.offset);
  });

  py::class_<FitResult>(m, "FitResult")
      .def_readonly("model", &FitResult::model)
      .def_readonly("rms_residual", &FitResult::rms_residual)
      .def_readonly("iterations", &FitResult::iterations)
      .def_readonly("converged", &FitResult::converged)
      .def_readonly("cost_history", &FitResult::cost_history)
      .def_readonly("diagnostics", &FitResult::diagnostics);

  m.def(
      "fit",
      [](const std::vector<double>& h, const std::vector<double>& b, std::size_t n,
         std::optional<std::vector<std::pair<double, double>>> centers) {
        FitConfig cfg;
        cfg.n_curves = n;
        if (centers) {
          cfg.center_strategy = CenterStrategy::user;
          for (const auto& [x, y] : *centers) cfg.centers.push_back({x, y});
        }
        return fit_superposition(to_dataset(h, b), cfg);
      },
      py::arg("h"), py::arg("b"), py::arg("n") = 1, py::arg("centers") = py::none());

  m.def("read_csv", [](const std::string& path) {
    const Dataset d = io::read_csv_file(path);
    std::vector<double> h, b;
    for (const Sample& s : d.samples) {
      h.push_back(s.h);
      b.push_back(s.b);
    }
    return py::make_tuple(h, b);
  });

  py::class_<Inflection>(m, "Inflection")
      .def_readonly("x0", &Inflection::x0)
      .def_readonly("y0", &Inflection::y0)
      .def_readonly("m0", &Inflection::m0);
  m.def(
      "inflection", [](const Superposition& s, double lo, double hi) { return inflection(s, Range{lo, hi}); },
      py::arg("model"), py::arg("lo"), py::arg("hi"));

  py::class_<CurveProfile>(m, "CurveProfile")
      .def_readonly("x0", &CurveProfile::x0)
      .def_readonly("y0", &CurveProfile::y0)
      .def_readonly("m0", &CurveProfile::m0)
      .def_property_readonly("a_interval",
                             [](const CurveProfile& p) -> std::optional<std::pair<double, double>> {
                               if (!p.a_interval) return std::nullopt;
                               return std::make_pair(p.a_interval->a1, p.a_interval->a2);
                             })
      .def_readonly("a_interval_reason", &CurveProfile::a_interval_reason)
      .def_readonly("pct_nonlinearity", &CurveProfile::pct_nonlinearity)
      .def_readonly("damped_measure", &CurveProfile::damped_measure)
      .def_readonly("warnings", &CurveProfile::warnings)
      .def_property_readonly("relative_permeability", &CurveProfile::relative_permeability)
      .def("to_json", [](const CurveProfile& p) { return io::to_json(p).dump(); });
  m.def(
      "profile", [](const Superposition& s, double lo, double hi) { return profile(s, Range{lo, hi}); },
      py::arg("model"), py::arg("lo"), py::arg("hi"));

  py::class_<HysteresisLoop>(m, "HysteresisLoop")
      .def_readonly("upper", &HysteresisLoop::upper)
      .def_readonly("lower", &HysteresisLoop::lower)
      .def_readonly("h_lo", &HysteresisLoop::h_lo)
      .def_readonly("h_hi", &HysteresisLoop::h_hi);
  m.def("make_loop", &make_loop, py::arg("upper"), py::arg("lower"), py::arg("h_lo"), py::arg("h_hi"));
  m.def(
      "representative_loop",
      [](double a, double mm, std::pair<double, double> upper, std::pair<double, double> lower) {
        return representative_loop(a, mm, {upper.first, upper.second}, {lower.first, lower.second});
      },
      py::arg("a"), py::arg("m"), py::arg("upper_center"), py::arg("lower_center"));

  py::class_<LoopAnalysis>(m, "LoopAnalysis")
      .def_property_readonly("left", [](const LoopAnalysis& l) { return py::make_tuple(l.left.x, l.left.y); })
      .def_property_readonly("right", [](const LoopAnalysis& l) { return py::make_tuple(l.right.x, l.right.y); })
      .def_readonly("area", &LoopAnalysis::area);
  m.def("analyze_loop", [](const HysteresisLoop& loop) { return analyze(loop); }, py::arg("loop"));
}
