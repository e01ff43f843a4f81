#pragma once

// Two-parameter S-curve: the real root y of
//
//     a (y - y_c)^3 + (y - y_c) = m (x - x_c)
//
// i.e. the fixed point of the continued fraction
// y - y_c = m (x - x_c) / (1 + a (y - y_c)^2).

namespace scurve {

struct SCurveParams {
  double a = 0.0;    // dissipation, T^-2
  double m = 1.0;    // slope at the inflection, H/m
  double x_c = 0.0;  // inflection abscissa, A/m
  double y_c = 0.0;  // inflection ordinate, T
};

/// Value and x-derivatives at one abscissa. d4 is only used as the
/// Newton slope when solving d3 = 0.
struct Jet {
  double y = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  double d3 = 0.0;
  double d4 = 0.0;
};

/// The two cube-root terms of the closed form, y = s1 + s2 + y_c.
struct Radicals {
  double s1 = 0.0;
  double s2 = 0.0;
};

/// Throws DomainError on non-finite fields or a < 0.
void validate(const SCurveParams& params);

/// Real root u of a u^3 + u = c for a >= 0. Closed form, no iteration.
double solve_cubic(double a, double c);

double eval_forward(const SCurveParams& params, double x);

/// x = (a u^3 + u) / m + x_c with u = y - y_c. Throws SingularSlopeError for m == 0.
double eval_inverse(const SCurveParams& params, double y);

double d1(const SCurveParams& params, double x);
double d2(const SCurveParams& params, double x);
double d3(const SCurveParams& params, double x);
double d4(const SCurveParams& params, double x);

/// y and its derivatives from a single forward evaluation.
Jet jet(const SCurveParams& params, double x);

/// Derivatives given the offset u = y - y_c already solved.
Jet jet_from_offset(double a, double m, double u);

/// S1 = -(1/3) D^(1/3), S2 = D^(-1/3) / a with
/// D = -27c/(2a) + sqrt((27c/(2a))^2 + 27/a^3), c = m dx.
/// Requires a > 0 (throws DomainError otherwise).
Radicals radicals(double a, double m, double dx);

}  // namespace scurve
