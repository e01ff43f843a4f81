#pragma once

#include <utility>

#include "scurve/rootfind.hpp"
#include "scurve/superposition.hpp"

namespace scurve {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct HysteresisLoop {
  Superposition upper;
  Superposition lower;
  double h_lo = 0.0;  // search window for the crossings, A/m
  double h_hi = 0.0;
};

struct LoopIntersections {
  Point left;
  Point right;
};

struct LoopAnalysis {
  Point left;
  Point right;
  double area = 0.0;  // "J" as the field reports it; B*H integrates to J/m^3
};

struct LoopOptions {
  std::size_t n_grid = 4096;
  double quad_rel_tol = 1e-8;
  int quad_max_depth = 50;
  RootConfig root{};
};

/// Validates both branches and checks each is non-decreasing on a grid over
/// [h_lo, h_hi]. Throws DomainError otherwise.
HysteresisLoop make_loop(Superposition upper, Superposition lower, double h_lo, double h_hi);

/// Two single-curve branches sharing (a, m), differing only in center. The
/// search window is widened until the branches cross (or a fixed cap).
HysteresisLoop representative_loop(double a, double m, Point upper_center, Point lower_center);

/// Window spanning both data ranges, widened by 5% on each side.
std::pair<double, double> default_h_range(std::pair<double, double> upper_data,
                                          std::pair<double, double> lower_data);

/// Throws TopologyError unless upper - lower changes sign exactly twice.
LoopIntersections intersections(const HysteresisLoop& loop, const LoopOptions& opt = {});

/// Closed-form y-axis integral for single-curve branches, adaptive Simpson
/// along x otherwise.
double loop_area(const HysteresisLoop& loop, const LoopIntersections& pts,
                 const LoopOptions& opt = {});

/// Always integrates upper - lower along x with adaptive Simpson.
double loop_area_quadrature(const HysteresisLoop& loop, const LoopIntersections& pts,
                            const LoopOptions& opt = {});

/// Closed-form area; both branches must be single components with p != 0, m != 0.
double loop_area_closed_form(const HysteresisLoop& loop, const LoopIntersections& pts);

LoopAnalysis analyze(const HysteresisLoop& loop, const LoopOptions& opt = {});

std::pair<SubprocessValues, SubprocessValues> branch_subprocesses(const HysteresisLoop& loop,
                                                                  double x);

/// Recursive adaptive Simpson with Richardson correction. Throws
/// QuadratureError carrying the estimate when max_depth is hit.
double adaptive_simpson(const ScalarFn& f, double lo, double hi, double rel_tol, int max_depth);

}  // namespace scurve
