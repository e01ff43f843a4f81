#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace scurve {

using ScalarFn = std::function<double(double)>;

struct RootConfig {
  double abs_tol = 1e-12;   // on |f|, relative to the bracket's end values
  double step_tol = 1e-14;  // on |dx|, relative to max(|x|, initial width)
  int max_iter = 100;
};

/// Interval with f(lo) * f(hi) <= 0. lo == hi marks an exact grid zero.
struct Bracket {
  double lo = 0.0;
  double hi = 0.0;

  bool degenerate() const { return lo == hi; }
};

struct Root {
  double x = 0.0;
  double f = 0.0;
  int iterations = 0;
};

/// Uniform grid of n_grid nodes over [lo, hi]; one bracket per adjacent sign
/// change, and a degenerate bracket for every node where f is exactly zero.
/// Throws ScanError at the first non-finite node value.
std::vector<Bracket> scan_sign_changes(const ScalarFn& f, double lo, double hi,
                                       std::size_t n_grid);

/// Newton-Raphson confined to the bracket: any iterate that would leave it,
/// or that fails to shrink |f| fast enough, is replaced by bisection.
/// Throws ConvergenceError after cfg.max_iter iterations.
Root newton_safeguarded(const ScalarFn& f, const ScalarFn& df, Bracket bracket,
                        const RootConfig& cfg = {});

/// max(256, 4 * n_samples)
std::size_t default_grid_size(std::size_t n_samples);

}  // namespace scurve
