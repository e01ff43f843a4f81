#pragma once

// Test-only reference computations. None of these call into the library's
// evaluation paths; they exist to check them.

#include <cmath>
#include <functional>
#include <random>
#include <utility>
#include <vector>

namespace oracle {

/// Root of a u^3 + u = c by plain bisection on [min(0,c), max(0,c)].
inline double bisect_cubic(double a, double c) {
  double lo = std::min(0.0, c);
  double hi = std::max(0.0, c);
  for (int i = 0; i < 400 && lo < hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (a * mid * mid * mid + mid - c < 0.0) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

/// Hyperbolic-sine form of the single real root of a u^3 + u = c (a > 0).
inline double sinh_cubic(double a, double c) {
  const double k = std::sqrt(3.0 * a);
  return 2.0 / k * std::sinh(std::asinh(1.5 * c * k) / 3.0);
}

/// y of the S-curve through the bisection root.
inline double scurve_y(double a, double m, double xc, double yc, double x) {
  return yc + bisect_cubic(a, m * (x - xc));
}

// Both use the step actually representable at x, not the nominal h.
inline double fd_central(const std::function<double(double)>& f, double x, double h) {
  const double hi = x + h;
  const double lo = x - h;
  return (f(hi) - f(lo)) / (hi - lo);
}

inline double fd5(const std::function<double(double)>& f, double x, double h) {
  h = (x + h) - x;
  return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12.0 * h);
}

/// Argmax of g on a uniform grid of n nodes.
inline std::pair<double, double> grid_argmax(const std::function<double(double)>& g, double lo,
                                             double hi, int n) {
  double best_x = lo;
  double best = g(lo);
  for (int i = 1; i < n; ++i) {
    const double x = lo + (hi - lo) * i / (n - 1);
    const double v = g(x);
    if (v > best) {
      best = v;
      best_x = x;
    }
  }
  return {best_x, best};
}

/// Composite Simpson with a fixed, even number of panels.
inline double simpson(const std::function<double(double)>& f, double lo, double hi, int panels) {
  if (panels % 2) ++panels;
  const double h = (hi - lo) / panels;
  double s = f(lo) + f(hi);
  for (int i = 1; i < panels; ++i) s += (i % 2 ? 4.0 : 2.0) * f(lo + h * i);
  return s * h / 3.0;
}

/// Plain bisection for a sign change on [lo, hi].
inline double bisect(const std::function<double(double)>& f, double lo, double hi) {
  double flo = f(lo);
  for (int i = 0; i < 300; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    const double fm = f(mid);
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Crossings of two single S-curves sharing (a, m) with centers (x1, y1)
/// (upper) and (x2, y2) (lower). Equating the inverses gives
/// a d (3 z^2 + d^2/4) + d = m (x2 - x1), d = y2 - y1, z = y - (y1 + y2)/2.
/// Returns the two crossing ordinates (ascending).
inline std::pair<double, double> representative_crossings_y(double a, double m, double x1,
                                                            double y1, double x2, double y2) {
  const double d = y2 - y1;
  const double z2 = ((m * (x2 - x1) / d - 1.0) / a - d * d / 4.0) / 3.0;
  const double z = std::sqrt(z2);
  const double mid = 0.5 * (y1 + y2);
  return {mid - z, mid + z};
}

/// Closed-form area of the representative loop along y (independent algebra:
/// integrates the difference of the two cubic inverses term by term).
inline double representative_area(double a, double m, double x1, double y1, double x2, double y2) {
  const auto [ylo, yhi] = representative_crossings_y(a, m, x1, y1, x2, y2);
  auto width = [&](double y) {
    const double u1 = y - y1;
    const double u2 = y - y2;
    const double xu = (a * u1 * u1 * u1 + u1) / m + x1;
    const double xl = (a * u2 * u2 * u2 + u2) / m + x2;
    return xl - xu;
  };
  // the width is a quadratic in y, so Simpson with two panels is exact
  return std::fabs(simpson(width, ylo, yhi, 2));
}

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(unsigned long long seed) : gen(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen); }
  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }
  double sign() { return uniform(0.0, 1.0) < 0.5 ? -1.0 : 1.0; }
  double normal(double sd) { return std::normal_distribution<double>(0.0, sd)(gen); }
};

}  // namespace oracle
