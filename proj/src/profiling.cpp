#include "scurve/profiling.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "scurve/errors.hpp"

namespace scurve {

namespace {

void check_range(Range r) {
  if (!std::isfinite(r.lo) || !std::isfinite(r.hi) || !(r.lo < r.hi)) {
    throw DomainError("profiling range needs finite lo < hi");
  }
}

std::string describe(const std::vector<Bracket>& bs) {
  std::ostringstream out;
  out.precision(9);
  for (std::size_t i = 0; i < bs.size(); ++i) {
    if (i) out << ", ";
    out << "[" << bs[i].lo << ", " << bs[i].hi << "]";
  }
  return out.str();
}

double refine(const ScalarFn& f, const ScalarFn& df, Bracket b, const RootConfig& cfg) {
  return newton_safeguarded(f, df, b, cfg).x;
}

// Refined roots of d3 inside the range, ascending.
std::vector<double> d3_roots(const Superposition& sup, Range range, const ProfileOptions& opt) {
  const ScalarFn f = [&](double x) { return d3(sup, x); };
  const ScalarFn df = [&](double x) { return d4(sup, x); };
  std::vector<double> roots;
  for (const Bracket& b : scan_sign_changes(f, range.lo, range.hi, opt.n_grid)) {
    roots.push_back(refine(f, df, b, opt.root));
  }
  return roots;
}

constexpr std::size_t kLowSampleCount = 10;

}  // namespace

Inflection inflection(const Superposition& sup, Range range, const ProfileOptions& opt) {
  validate(sup);
  check_range(range);
  const ScalarFn f = [&](double x) { return d2(sup, x); };
  const ScalarFn df = [&](double x) { return d3(sup, x); };
  const std::vector<Bracket> brackets = scan_sign_changes(f, range.lo, range.hi, opt.n_grid);
  if (brackets.size() != 1) {
    std::vector<std::pair<double, double>> found;
    for (const Bracket& b : brackets) found.emplace_back(b.lo, b.hi);
    std::ostringstream msg;
    msg << "expected exactly one sign change of d2y/dx2 on [" << range.lo << ", " << range.hi
        << "], found " << brackets.size();
    if (!brackets.empty()) msg << ": " << describe(brackets);
    throw AmbiguousInflectionError(msg.str(), std::move(found));
  }
  const double x0 = refine(f, df, brackets.front(), opt.root);
  const Jet j = jet(sup, x0);
  return Inflection{x0, j.y, j.d1};
}

CurvatureExtrema curvature_extrema(const Superposition& sup, Range range, double x0,
                                   const ProfileOptions& opt) {
  validate(sup);
  check_range(range);
  const ScalarFn f = [&](double x) { return d3(sup, x); };
  const ScalarFn df = [&](double x) { return d4(sup, x); };
  const std::vector<Bracket> brackets = scan_sign_changes(f, range.lo, range.hi, opt.n_grid);

  // nearest sign change on each side of the inflection
  const Bracket* left = nullptr;
  const Bracket* right = nullptr;
  for (const Bracket& b : brackets) {
    if (b.hi < x0 && !(b.degenerate() && b.lo == x0)) left = &b;
    if (b.lo > x0 && right == nullptr) right = &b;
  }
  if (left == nullptr || right == nullptr) {
    std::ostringstream msg;
    msg << "curvature extremum " << (left == nullptr ? "left" : "right") << " of x0 = " << x0
        << " lies outside [" << range.lo << ", " << range.hi << "]";
    throw ExtremaNotInDataError(msg.str());
  }
  return CurvatureExtrema{refine(f, df, *left, opt.root), refine(f, df, *right, opt.root)};
}

CurvatureExtrema curvature_extrema(const Superposition& sup, Range range,
                                   const ProfileOptions& opt) {
  return curvature_extrema(sup, range, inflection(sup, range, opt).x0, opt);
}

AInterval a0_interval(const Superposition& sup, double x0, double y0, double m0, double x1,
                      double x2) {
  validate(sup);
  const double y1 = eval(sup, x1);
  const double y2 = eval(sup, x2);
  const double tol = 1e-9 * std::fabs(y2 - y1);
  const double dy1 = y1 - y0;
  const double dy2 = y2 - y0;
  if (!(std::fabs(dy1) > tol) || !(std::fabs(dy2) > tol)) {
    throw SingularIntervalError("curvature extrema too close to the inflection ordinate");
  }
  AInterval out;
  out.from_x1 = (m0 * (x1 - x0) - dy1) / (dy1 * dy1 * dy1);
  out.from_x2 = (m0 * (x2 - x0) - dy2) / (dy2 * dy2 * dy2);
  out.a1 = std::min(out.from_x1, out.from_x2);
  out.a2 = std::max(out.from_x1, out.from_x2);
  return out;
}

double pct_nonlinearity(const Superposition& sup, double m0) {
  if (!std::isfinite(m0) || !(m0 > 0.0)) {
    throw DomainError("percentage nonlinearity needs m0 > 0");
  }
  return std::fabs(slope_sum(sup) - m0) / m0;
}

double damped_measure(double m, double a) {
  if (!(a >= 0.0)) throw DomainError("damped measure needs a >= 0");
  return m / (1.0 + a);
}

KneePoint knee_point(const Superposition& sup, Range range, const ProfileOptions& opt) {
  validate(sup);
  check_range(range);
  KneePoint best{range.lo, 0.0, true, false};
  double best_curv = std::fabs(d2(sup, range.lo));
  auto consider = [&](double x, bool endpoint) {
    const double c = std::fabs(d2(sup, x));
    if (c > best_curv) {
      best_curv = c;
      best.x_k = x;
      best.at_endpoint = endpoint;
    }
  };
  consider(range.hi, true);
  for (double x : d3_roots(sup, range, opt)) consider(x, false);
  best.flat = best_curv == 0.0;
  best.y_k = eval(sup, best.x_k);
  return best;
}

CurveProfile profile(const Superposition& sup, Range data_range, const ProfileOptions& opt) {
  const Inflection inf = inflection(sup, data_range, opt);
  CurveProfile out;
  out.x0 = inf.x0;
  out.y0 = inf.y0;
  out.m0 = inf.m0;
  try {
    const CurvatureExtrema ext = curvature_extrema(sup, data_range, inf.x0, opt);
    out.a_interval = a0_interval(sup, inf.x0, inf.y0, inf.m0, ext.x1, ext.x2);
    if (opt.n_samples > 0 && opt.n_samples < kLowSampleCount) {
      out.warnings.push_back("a0 interval estimated from only " + std::to_string(opt.n_samples) +
                             " samples; treat it as approximate");
    }
  } catch (const ExtremaNotInDataError& e) {
    out.a_interval_reason = e.what();
  } catch (const SingularIntervalError& e) {
    out.a_interval_reason = e.what();
  }
  out.pct_nonlinearity = pct_nonlinearity(sup, inf.m0);
  out.damped_measure = damped_measure(inf.m0, sup.a);
  if (opt.with_knee) out.knee = knee_point(sup, data_range, opt);
  return out;
}

}  // namespace scurve
