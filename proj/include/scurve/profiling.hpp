#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "scurve/rootfind.hpp"
#include "scurve/superposition.hpp"

namespace scurve {

inline constexpr double kVacuumPermeability = 4.0e-7 * 3.14159265358979323846;  // H/m

struct Range {
  double lo = 0.0;
  double hi = 0.0;
};

struct Inflection {
  double x0 = 0.0;  // A/m
  double y0 = 0.0;  // T
  double m0 = 0.0;  // H/m
};

/// Roots of d3 flanking the inflection: x1 < x0 < x2.
struct CurvatureExtrema {
  double x1 = 0.0;
  double x2 = 0.0;
};

/// Interval of the representative dissipation a0, with provenance:
/// from_x1 / from_x2 are the raw values solved at x1 and x2.
struct AInterval {
  double a1 = 0.0;
  double a2 = 0.0;
  double from_x1 = 0.0;
  double from_x2 = 0.0;
};

struct KneePoint {
  double x_k = 0.0;
  double y_k = 0.0;
  bool at_endpoint = false;
  bool flat = false;  // |d2| vanishes on the whole range
};

struct CurveProfile {
  double x0 = 0.0;
  double y0 = 0.0;
  double m0 = 0.0;
  std::optional<AInterval> a_interval;
  std::string a_interval_reason;  // why a_interval is missing
  double pct_nonlinearity = 0.0;
  double damped_measure = 0.0;
  std::optional<KneePoint> knee;
  std::vector<std::string> warnings;

  double relative_permeability() const { return m0 / kVacuumPermeability; }
};

struct ProfileOptions {
  std::size_t n_grid = 2048;
  bool with_knee = false;
  /// Sample count of the fitted data; 0 = unknown. Sparse data gets a warning
  /// on the a0 interval instead of suppressing it.
  std::size_t n_samples = 0;
  RootConfig root{};
};

Inflection inflection(const Superposition& sup, Range range, const ProfileOptions& opt = {});

CurvatureExtrema curvature_extrema(const Superposition& sup, Range range, double x0,
                                   const ProfileOptions& opt = {});
CurvatureExtrema curvature_extrema(const Superposition& sup, Range range,
                                   const ProfileOptions& opt = {});

/// a_i = (m0 (x_i - x0) - (y_i - y0)) / (y_i - y0)^3, returned as (min, max).
AInterval a0_interval(const Superposition& sup, double x0, double y0, double m0, double x1,
                      double x2);

/// |sum p_i m_i - m0| / m0
double pct_nonlinearity(const Superposition& sup, double m0);

/// m / (1 + a)
double damped_measure(double m, double a);

/// Maximizer of |d2| on the range: interior d3 roots compared against the endpoints.
KneePoint knee_point(const Superposition& sup, Range range, const ProfileOptions& opt = {});

CurveProfile profile(const Superposition& sup, Range data_range, const ProfileOptions& opt = {});

}  // namespace scurve
