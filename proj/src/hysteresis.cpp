#include "scurve/hysteresis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "scurve/errors.hpp"

namespace scurve {

namespace {

constexpr std::size_t kMonotoneGrid = 512;

void check_non_decreasing(const Superposition& sup, double lo, double hi, const char* name) {
  double max_slope = 0.0;
  std::vector<double> slopes(kMonotoneGrid);
  for (std::size_t i = 0; i < kMonotoneGrid; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / (kMonotoneGrid - 1);
    slopes[i] = d1(sup, x);
    max_slope = std::max(max_slope, std::fabs(slopes[i]));
  }
  for (std::size_t i = 0; i < kMonotoneGrid; ++i) {
    if (slopes[i] < -1e-12 * max_slope) {
      std::ostringstream msg;
      msg << name << " branch decreases near H = "
          << lo + (hi - lo) * static_cast<double>(i) / (kMonotoneGrid - 1);
      throw DomainError(msg.str());
    }
  }
}

std::size_t count_crossings(const Superposition& upper, const Superposition& lower, double lo,
                            double hi, std::size_t n_grid) {
  const ScalarFn diff = [&](double x) { return eval(upper, x) - eval(lower, x); };
  return scan_sign_changes(diff, lo, hi, n_grid).size();
}

struct SimpsonState {
  const ScalarFn& f;
  int max_depth;
  bool failed = false;
  double error_bound = 0.0;
};

double simpson_step(SimpsonState& st, double a, double b, double fa, double fm, double fb,
                    double whole, double eps, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = st.f(lm);
  const double frm = st.f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (std::fabs(delta) <= 15.0 * eps) return left + right + delta / 15.0;
  if (depth >= st.max_depth) {
    st.failed = true;
    st.error_bound += std::fabs(delta) / 15.0;
    return left + right + delta / 15.0;
  }
  return simpson_step(st, a, m, fa, flm, fm, left, 0.5 * eps, depth + 1) +
         simpson_step(st, m, b, fm, frm, fb, right, 0.5 * eps, depth + 1);
}

}  // namespace

double adaptive_simpson(const ScalarFn& f, double lo, double hi, double rel_tol, int max_depth) {
  if (lo == hi) return 0.0;
  // coarse composite pass sets the absolute tolerance
  constexpr int kPanels = 64;
  const double h = (hi - lo) / kPanels;
  std::vector<double> nodes(2 * kPanels + 1);
  for (int i = 0; i <= 2 * kPanels; ++i) nodes[i] = f(lo + 0.5 * h * i);
  double coarse = 0.0;
  for (int p = 0; p < kPanels; ++p) {
    coarse += h / 6.0 * (nodes[2 * p] + 4.0 * nodes[2 * p + 1] + nodes[2 * p + 2]);
  }
  const double scale = std::max(std::fabs(coarse), 1e-300);
  const double eps = rel_tol * scale / kPanels;

  SimpsonState st{f, max_depth};
  double total = 0.0;
  for (int p = 0; p < kPanels; ++p) {
    const double a = lo + h * p;
    const double b = (p + 1 == kPanels) ? hi : lo + h * (p + 1);
    const double whole = (b - a) / 6.0 * (nodes[2 * p] + 4.0 * nodes[2 * p + 1] + nodes[2 * p + 2]);
    total += simpson_step(st, a, b, nodes[2 * p], nodes[2 * p + 1], nodes[2 * p + 2], whole, eps, 0);
  }
  if (st.failed) {
    std::ostringstream msg;
    msg << "adaptive Simpson hit depth " << max_depth << "; estimate " << total
        << ", error bound " << st.error_bound;
    throw QuadratureError(msg.str(), total, st.error_bound);
  }
  return total;
}

HysteresisLoop make_loop(Superposition upper, Superposition lower, double h_lo, double h_hi) {
  validate(upper);
  validate(lower);
  if (!std::isfinite(h_lo) || !std::isfinite(h_hi) || !(h_lo < h_hi)) {
    throw DomainError("loop window needs finite h_lo < h_hi");
  }
  check_non_decreasing(upper, h_lo, h_hi, "upper");
  check_non_decreasing(lower, h_lo, h_hi, "lower");
  return HysteresisLoop{std::move(upper), std::move(lower), h_lo, h_hi};
}

HysteresisLoop representative_loop(double a, double m, Point upper_center, Point lower_center) {
  if (!(a > 0.0) || !(m > 0.0) || !std::isfinite(a) || !std::isfinite(m)) {
    throw DomainError("representative loop needs a > 0 and m > 0");
  }
  Superposition upper{a, {{1.0, m, upper_center.x, upper_center.y}}};
  Superposition lower{a, {{1.0, m, lower_center.x, lower_center.y}}};
  const double x_min = std::min(upper_center.x, lower_center.x);
  const double x_max = std::max(upper_center.x, lower_center.x);
  double w = std::max(x_max - x_min, 1.0);
  for (int i = 0; i < 64; ++i) {
    if (count_crossings(upper, lower, x_min - w, x_max + w, 1024) >= 2) break;
    w *= 2.0;
  }
  const double pad = 0.05 * (x_max - x_min + 2.0 * w);
  return make_loop(std::move(upper), std::move(lower), x_min - w - pad, x_max + w + pad);
}

std::pair<double, double> default_h_range(std::pair<double, double> upper_data,
                                          std::pair<double, double> lower_data) {
  const double lo = std::min(upper_data.first, lower_data.first);
  const double hi = std::max(upper_data.second, lower_data.second);
  const double pad = 0.05 * (hi - lo);
  return {lo - pad, hi + pad};
}

LoopIntersections intersections(const HysteresisLoop& loop, const LoopOptions& opt) {
  const ScalarFn diff = [&](double x) { return eval(loop.upper, x) - eval(loop.lower, x); };
  const ScalarFn slope = [&](double x) { return d1(loop.upper, x) - d1(loop.lower, x); };
  const std::vector<Bracket> brackets = scan_sign_changes(diff, loop.h_lo, loop.h_hi, opt.n_grid);
  if (brackets.size() != 2) {
    std::ostringstream msg;
    msg << "expected the branches to cross exactly twice on [" << loop.h_lo << ", " << loop.h_hi
        << "], found " << brackets.size() << " crossing(s)";
    if (!brackets.empty() && brackets.size() <= 8) {
      msg << " near";
      for (const Bracket& b : brackets) msg << " " << 0.5 * (b.lo + b.hi);
    }
    throw TopologyError(msg.str(), brackets.size());
  }
  LoopIntersections out;
  const double xl = newton_safeguarded(diff, slope, brackets[0], opt.root).x;
  const double xr = newton_safeguarded(diff, slope, brackets[1], opt.root).x;
  out.left = {xl, eval(loop.upper, xl)};
  out.right = {xr, eval(loop.upper, xr)};
  return out;
}

double loop_area_closed_form(const HysteresisLoop& loop, const LoopIntersections& pts) {
  auto antiderivative = [](const Superposition& s, double y) {
    // x(y) = x_c + (a u^3 + u)/m with u = y/p - y_c; dy = p du
    const Component& c = s.components.front();
    const double u = y / c.p - c.y_c;
    return c.x_c * y + c.p / c.m * (s.a * u * u * u * u / 4.0 + u * u / 2.0);
  };
  for (const Superposition* s : {&loop.upper, &loop.lower}) {
    if (s->components.size() != 1 || s->components.front().p == 0.0 ||
        s->components.front().m == 0.0) {
      throw DomainError("closed-form area needs single-component branches with p, m != 0");
    }
  }
  const double y0 = pts.left.y;
  const double y1 = pts.right.y;
  const double lower_int = antiderivative(loop.lower, y1) - antiderivative(loop.lower, y0);
  const double upper_int = antiderivative(loop.upper, y1) - antiderivative(loop.upper, y0);
  return std::fabs(lower_int - upper_int);
}

double loop_area_quadrature(const HysteresisLoop& loop, const LoopIntersections& pts,
                            const LoopOptions& opt) {
  const ScalarFn diff = [&](double x) { return eval(loop.upper, x) - eval(loop.lower, x); };
  return std::fabs(adaptive_simpson(diff, pts.left.x, pts.right.x, opt.quad_rel_tol,
                                    opt.quad_max_depth));
}

double loop_area(const HysteresisLoop& loop, const LoopIntersections& pts,
                 const LoopOptions& opt) {
  const bool single = loop.upper.components.size() == 1 && loop.lower.components.size() == 1 &&
                      loop.upper.components.front().p != 0.0 &&
                      loop.lower.components.front().p != 0.0 &&
                      loop.upper.components.front().m != 0.0 &&
                      loop.lower.components.front().m != 0.0;
  return single ? loop_area_closed_form(loop, pts) : loop_area_quadrature(loop, pts, opt);
}

LoopAnalysis analyze(const HysteresisLoop& loop, const LoopOptions& opt) {
  const LoopIntersections pts = intersections(loop, opt);
  return LoopAnalysis{pts.left, pts.right, loop_area(loop, pts, opt)};
}

std::pair<SubprocessValues, SubprocessValues> branch_subprocesses(const HysteresisLoop& loop,
                                                                  double x) {
  return {decompose_subprocesses(loop.upper, x), decompose_subprocesses(loop.lower, x)};
}

}  // namespace scurve
