#include "scurve/rootfind.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "scurve/errors.hpp"

namespace scurve {

std::vector<Bracket> scan_sign_changes(const ScalarFn& f, double lo, double hi,
                                       std::size_t n_grid) {
  if (!(lo < hi)) throw DomainError("scan needs lo < hi");
  if (n_grid < 2) throw DomainError("scan needs at least two grid nodes");

  std::vector<double> xs(n_grid);
  std::vector<double> fs(n_grid);
  const double step = (hi - lo) / static_cast<double>(n_grid - 1);
  for (std::size_t i = 0; i < n_grid; ++i) {
    xs[i] = (i + 1 == n_grid) ? hi : lo + step * static_cast<double>(i);
    fs[i] = f(xs[i]);
    if (!std::isfinite(fs[i])) {
      std::ostringstream msg;
      msg << "non-finite function value at grid node " << i << " (x = " << xs[i] << ")";
      throw ScanError(msg.str(), xs[i]);
    }
  }

  std::vector<Bracket> out;
  for (std::size_t i = 0; i < n_grid; ++i) {
    if (fs[i] == 0.0) {
      out.push_back({xs[i], xs[i]});
    } else if (i + 1 < n_grid && fs[i + 1] != 0.0 && (fs[i] < 0.0) != (fs[i + 1] < 0.0)) {
      out.push_back({xs[i], xs[i + 1]});
    }
  }
  return out;
}

Root newton_safeguarded(const ScalarFn& f, const ScalarFn& df, Bracket bracket,
                        const RootConfig& cfg) {
  if (bracket.degenerate()) return Root{bracket.lo, f(bracket.lo), 0};
  if (!(bracket.lo < bracket.hi)) throw DomainError("bracket needs lo < hi");

  double lo = bracket.lo;
  double hi = bracket.hi;
  const double f_lo = f(lo);
  const double f_hi = f(hi);
  if (f_lo == 0.0) return Root{lo, 0.0, 0};
  if (f_hi == 0.0) return Root{hi, 0.0, 0};
  if ((f_lo < 0.0) == (f_hi < 0.0)) {
    std::ostringstream msg;
    msg << "no sign change on [" << lo << ", " << hi << "]";
    throw DomainError(msg.str());
  }
  // orient so that f(lo) < 0 < f(hi)
  if (f_lo > 0.0) std::swap(lo, hi);

  const double f_tol = cfg.abs_tol * std::max(std::fabs(f_lo), std::fabs(f_hi));
  const double width0 = std::fabs(hi - lo);

  double x = 0.5 * (lo + hi);
  double dx_old = width0;
  double dx = dx_old;
  double fx = f(x);
  double dfx = df(x);
  double best_x = x;
  double best_f = fx;

  for (int it = 1; it <= cfg.max_iter; ++it) {
    if (std::fabs(fx) < std::fabs(best_f)) {
      best_x = x;
      best_f = fx;
    }
    if (fx == 0.0) return Root{x, fx, it - 1};
    if (std::fabs(fx) <= f_tol &&
        std::fabs(fx / dfx) <= cfg.step_tol * std::max(std::fabs(x), width0)) {
      return Root{x, fx, it - 1};
    }
    if (fx < 0.0) lo = x; else hi = x;

    const double newton = x - fx / dfx;
    const bool outside = !std::isfinite(newton) ||
                         (newton - lo) * (newton - hi) >= 0.0;
    const bool slow = std::fabs(2.0 * fx) > std::fabs(dx_old * dfx);
    dx_old = dx;
    double next;
    if (outside || slow) {
      next = 0.5 * (lo + hi);
    } else {
      next = newton;
    }
    dx = next - x;

    const double x_tol = cfg.step_tol * std::max(std::fabs(next), width0);
    if (std::fabs(dx) <= x_tol || next == lo || next == hi) {
      const double fn = f(next);
      return Root{next, fn, it};
    }
    x = next;
    fx = f(x);
    dfx = df(x);
  }
  std::ostringstream msg;
  msg << "Newton-Raphson did not converge in " << cfg.max_iter << " iterations";
  throw ConvergenceError(msg.str(), best_x, best_f);
}

std::size_t default_grid_size(std::size_t n_samples) {
  return std::max<std::size_t>(256, 4 * n_samples);
}

}  // namespace scurve
