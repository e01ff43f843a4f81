#include "scurve/scurve.hpp"

#include <cmath>
#include <string>

#include "scurve/errors.hpp"

namespace scurve {

namespace {

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw DomainError(std::string("non-finite ") + what);
}

}  // namespace

void validate(const SCurveParams& params) {
  require_finite(params.a, "a");
  require_finite(params.m, "m");
  require_finite(params.x_c, "x_c");
  require_finite(params.y_c, "y_c");
  if (params.a < 0.0) throw DomainError("a must be >= 0, got " + std::to_string(params.a));
}

// In the scaled unknown v = sqrt(a) u the cubic becomes v^3 + v = w with
// w = sqrt(a) c, whose Cardano terms are t = cbrt(w/2 + sqrt(w^2/4 + 1/27))
// and s = 1/(3t). Then v = t - s = w / (t^2 + t s + s^2), so
// u = c / (t^2 + t s + s^2).
double solve_cubic(double a, double c) {
  if (a == 0.0 || c == 0.0) return c;
  const double w = std::fabs(c) * std::sqrt(a);
  const double t = std::cbrt(0.5 * w + std::hypot(0.5 * w, 1.0 / std::sqrt(27.0)));
  const double s = 1.0 / (3.0 * t);
  return c / (t * t + t * s + s * s);
}

double eval_forward(const SCurveParams& params, double x) {
  validate(params);
  require_finite(x, "x");
  const double c = params.m * (x - params.x_c);
  if (params.a == 0.0) return params.y_c + c;
  return params.y_c + solve_cubic(params.a, c);
}

double eval_inverse(const SCurveParams& params, double y) {
  validate(params);
  require_finite(y, "y");
  if (params.m == 0.0) throw SingularSlopeError("inverse evaluation needs m != 0");
  const double u = y - params.y_c;
  return (params.a * u * u * u + u) / params.m + params.x_c;
}

Jet jet_from_offset(double a, double m, double u) {
  Jet j;
  const double w = 1.0 + 3.0 * a * u * u;
  j.d1 = m / w;
  j.d2 = -6.0 * a * u * j.d1 * j.d1 / w;
  j.d3 = -(6.0 * a / w) * j.d1 * (j.d1 * j.d1 + 3.0 * u * j.d2);
  j.d4 = -(6.0 * a / w) *
         (6.0 * j.d1 * j.d1 * j.d2 + 3.0 * u * j.d2 * j.d2 + 4.0 * u * j.d1 * j.d3);
  return j;
}

Jet jet(const SCurveParams& params, double x) {
  const double y = eval_forward(params, x);
  Jet j = jet_from_offset(params.a, params.m, y - params.y_c);
  j.y = y;
  return j;
}

double d1(const SCurveParams& params, double x) { return jet(params, x).d1; }
double d2(const SCurveParams& params, double x) { return jet(params, x).d2; }
double d3(const SCurveParams& params, double x) { return jet(params, x).d3; }
double d4(const SCurveParams& params, double x) { return jet(params, x).d4; }

Radicals radicals(double a, double m, double dx) {
  require_finite(a, "a");
  require_finite(m, "m");
  require_finite(dx, "x - x_c");
  if (!(a > 0.0)) throw DomainError("radicals need a > 0");
  const double c = m * dx;
  const double half = 27.0 * c / (2.0 * a);
  // sqrt(half^2 + 27/a^3) without forming 27/a^3 directly
  const double root = std::hypot(half, std::sqrt(27.0 / a) / a);
  // D = root - half cancels for c > 0; use the conjugate (27/a^3) / (root + half).
  double d;
  if (half > 0.0) {
    const double k = std::sqrt(27.0 / a) / a;
    d = k / (root + half) * k;
  } else {
    d = root - half;
  }
  const double cr = std::cbrt(d);
  return Radicals{-cr / 3.0, 1.0 / (a * cr)};
}

}  // namespace scurve
