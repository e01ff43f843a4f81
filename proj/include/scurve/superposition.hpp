#pragma once

#include <vector>

#include "scurve/scurve.hpp"

namespace scurve {

/// One weighted term p * y(a, m, x - x_c, y_c) of a superposition.
struct Component {
  double p = 1.0;
  double m = 1.0;
  double x_c = 0.0;
  double y_c = 0.0;

  /// Components with p*m >= 0 magnetize, the rest dissipate.
  bool magnetizing() const { return p * m >= 0.0; }
};

/// y_net(x) = sum_i p_i y(a, m_i, x - x_ci, y_ci), every term sharing one a.
struct Superposition {
  double a = 0.0;
  std::vector<Component> components;

  SCurveParams term(std::size_t i) const {
    const Component& c = components[i];
    return SCurveParams{a, c.m, c.x_c, c.y_c};
  }
};

struct SubprocessValues {
  double s_one = 0.0;
  double s_two = 0.0;
  double offset = 0.0;
};

struct SignSplit {
  Superposition magnetizing;
  Superposition dissipative;  // may hold no components
};

/// Throws DomainError unless a >= 0, n >= 1 and every field is finite.
void validate(const Superposition& sup);

double eval(const Superposition& sup, double x);
double d1(const Superposition& sup, double x);
double d2(const Superposition& sup, double x);
double d3(const Superposition& sup, double x);
double d4(const Superposition& sup, double x);
Jet jet(const Superposition& sup, double x);

/// S_I = sum p_i S1_i, S_II = sum p_i S2_i, offset = sum p_i y_ci.
/// Throws DecompositionError for a == 0.
SubprocessValues decompose_subprocesses(const Superposition& sup, double x);

/// Partition by sign of p_i m_i. Each part keeps its own y_ci, so
/// eval(magnetizing) + eval(dissipative) == eval(sup).
SignSplit split_by_sign(const Superposition& sup);

/// sum_i p_i m_i
double slope_sum(const Superposition& sup);

}  // namespace scurve
