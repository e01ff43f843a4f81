#include "scurve/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include <Eigen/Dense>

namespace scurve {

const char* to_string(Branch b) {
  switch (b) {
    case Branch::initial: return "initial";
    case Branch::hysteresis_upper: return "hysteresis-upper";
    case Branch::hysteresis_lower: return "hysteresis-lower";
    case Branch::demagnetization: return "demagnetization";
  }
  return "initial";
}

Branch branch_from_string(const std::string& s) {
  if (s == "initial") return Branch::initial;
  if (s == "hysteresis-upper") return Branch::hysteresis_upper;
  if (s == "hysteresis-lower") return Branch::hysteresis_lower;
  if (s == "demagnetization") return Branch::demagnetization;
  throw DomainError("unknown branch '" + s + "'");
}

void Dataset::validate() const {
  if (samples.size() < 4) {
    throw DomainError("dataset needs at least 4 samples, got " + std::to_string(samples.size()));
  }
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!std::isfinite(samples[i].h) || !std::isfinite(samples[i].b)) {
      throw DomainError("sample " + std::to_string(i) + " is not finite");
    }
    if (i > 0 && !(samples[i].h > samples[i - 1].h)) {
      throw DomainError("H must be strictly increasing (sample " + std::to_string(i) + ")");
    }
  }
}

std::pair<double, double> Dataset::h_range() const {
  return {samples.front().h, samples.back().h};
}

std::pair<double, double> Dataset::b_range() const {
  auto [lo, hi] = std::minmax_element(samples.begin(), samples.end(),
                                      [](const Sample& l, const Sample& r) { return l.b < r.b; });
  return {lo->b, hi->b};
}

void FitConfig::validate(std::size_t n_samples) const {
  if (n_curves < 1) throw DomainError("n_curves must be >= 1");
  if (n_curves > n_samples / 2) {
    throw DomainError("n_curves = " + std::to_string(n_curves) + " exceeds floor(samples/2) = " +
                      std::to_string(n_samples / 2));
  }
  if (center_strategy == CenterStrategy::user && centers.size() != n_curves) {
    throw DomainError("user-supplied centers (" + std::to_string(centers.size()) +
                      ") do not match n_curves (" + std::to_string(n_curves) + ")");
  }
  if (!(damping_init > 0.0)) throw DomainError("damping_init must be > 0");
  if (max_iter < 1) throw DomainError("max_iter must be >= 1");
  if (!(residual_tol > 0.0)) throw DomainError("residual_tol must be > 0");
  if (weight_range) {
    const auto [first, last] = *weight_range;
    if (first > last || last >= n_samples || last - first + 1 < 2) {
      throw DomainError("weight_range must select at least two samples inside the dataset");
    }
  }
}

std::vector<Center> select_centers(const Dataset& data, std::size_t n) {
  const std::size_t count = data.samples.size();
  if (n < 1 || n > count / 2) {
    throw SelectionError("cannot select " + std::to_string(n) + " centers from " +
                         std::to_string(count) + " samples");
  }
  std::vector<double> sorted_b;
  sorted_b.reserve(count);
  for (const Sample& s : data.samples) sorted_b.push_back(s.b);
  std::sort(sorted_b.begin(), sorted_b.end());
  const std::size_t distinct =
      static_cast<std::size_t>(std::unique(sorted_b.begin(), sorted_b.end()) - sorted_b.begin());
  if (distinct < n) {
    throw SelectionError("only " + std::to_string(distinct) + " distinct B values for " +
                         std::to_string(n) + " centers");
  }
  sorted_b.clear();
  for (const Sample& s : data.samples) sorted_b.push_back(s.b);
  std::sort(sorted_b.begin(), sorted_b.end());

  std::vector<bool> taken(count, false);
  std::vector<Center> out;
  for (std::size_t k = 0; k < n; ++k) {
    // linear-interpolated empirical quantile
    const double level = static_cast<double>(k + 1) / static_cast<double>(n + 1);
    const double pos = level * static_cast<double>(count - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, count - 1);
    const double target = sorted_b[lo] + (pos - static_cast<double>(lo)) * (sorted_b[hi] - sorted_b[lo]);

    std::size_t best = count;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < count; ++i) {
      if (taken[i]) continue;
      bool dup_b = false;
      for (const Center& c : out) dup_b = dup_b || c.y_c == data.samples[i].b;
      if (dup_b) continue;
      const double dist = std::fabs(data.samples[i].b - target);
      if (dist < best_dist) {
        best_dist = dist;
        best = i;
      }
    }
    if (best == count) throw SelectionError("ran out of distinct samples while selecting centers");
    taken[best] = true;
    out.push_back({data.samples[best].h, data.samples[best].b});
  }
  std::sort(out.begin(), out.end(), [](const Center& l, const Center& r) { return l.y_c < r.y_c; });
  return out;
}

double rms_residual(const Superposition& model, const Dataset& data) {
  double sum = 0.0;
  for (const Sample& s : data.samples) {
    const double r = eval(model, s.h) - s.b;
    sum += r * r;
  }
  return std::sqrt(sum / static_cast<double>(data.samples.size()));
}

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Damped Gauss-Newton (Levenberg-Marquardt with Marquardt's diagonal scaling)
// on a residual vector, forward-difference Jacobian.
struct LmProblem {
  std::function<void(const VectorXd&, VectorXd&)> residuals;
  std::size_t n_residuals = 0;
  VectorXd theta0;
  VectorXd lower;
  VectorXd upper;
  std::vector<bool> absolute_step;  // finite-difference step is absolute, not relative
  double floor_rms = 0.0;           // rms at or below this counts as an exact fit
};

struct LmOutcome {
  VectorXd theta;
  double cost = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> history;
  std::string diagnostics;
};

constexpr double kFdStep = 1e-7;
constexpr double kDampingCap = 1e16;

VectorXd clamp(const VectorXd& theta, const LmProblem& prob) {
  return theta.cwiseMax(prob.lower).cwiseMin(prob.upper);
}

double half_sq(const VectorXd& r) { return 0.5 * r.squaredNorm(); }

LmOutcome levenberg_marquardt(const LmProblem& prob, const FitConfig& cfg) {
  const auto n_par = static_cast<Eigen::Index>(prob.theta0.size());
  const auto n_res = static_cast<Eigen::Index>(prob.n_residuals);
  const double floor_cost = 0.5 * static_cast<double>(n_res) * prob.floor_rms * prob.floor_rms;

  LmOutcome out;
  VectorXd theta = clamp(prob.theta0, prob);
  VectorXd r(n_res);
  prob.residuals(theta, r);
  double cost = half_sq(r);
  if (!std::isfinite(cost)) {
    out.theta = theta;
    out.cost = cost;
    out.diagnostics = "initial guess gives a non-finite cost";
    return out;
  }
  out.history.push_back(cost);

  double lambda = cfg.damping_init;
  MatrixXd jac(n_res, n_par);
  VectorXd r_step(n_res);
  VectorXd r_trial(n_res);

  for (int it = 1; it <= cfg.max_iter; ++it) {
    out.iterations = it;
    if (cost <= floor_cost) {
      out.converged = true;
      out.diagnostics = "exact fit (cost at rounding floor)";
      break;
    }

    for (Eigen::Index j = 0; j < n_par; ++j) {
      const auto ju = static_cast<std::size_t>(j);
      const double scale = prob.absolute_step[ju]
                               ? 1.0
                               : std::max({std::fabs(theta[j]), std::fabs(prob.theta0[j]), 1e-300});
      double h = kFdStep * scale;
      VectorXd shifted = theta;
      shifted[j] += h;
      if (shifted[j] > prob.upper[j]) {
        h = -h;
        shifted[j] = theta[j] + h;
      }
      prob.residuals(shifted, r_step);
      jac.col(j) = (r_step - r) / h;
    }
    const MatrixXd normal = jac.transpose() * jac;
    const VectorXd grad = jac.transpose() * r;
    VectorXd diag = normal.diagonal();
    for (Eigen::Index j = 0; j < n_par; ++j) {
      if (!(diag[j] > 0.0)) diag[j] = 1e-300;
    }

    bool accepted = false;
    while (!accepted) {
      MatrixXd damped = normal;
      damped.diagonal() += lambda * diag;
      Eigen::LDLT<MatrixXd> ldlt(damped);
      VectorXd step = ldlt.solve(-grad);
      const bool solvable = ldlt.info() == Eigen::Success && step.allFinite();

      if (solvable) {
        const VectorXd trial = clamp(theta + step, prob);
        prob.residuals(trial, r_trial);
        const double trial_cost = half_sq(r_trial);
        if (std::isfinite(trial_cost) && trial_cost < cost) {
          const double rel = (cost - trial_cost) / cost;
          theta = trial;
          r = r_trial;
          cost = trial_cost;
          out.history.push_back(cost);
          lambda = std::max(lambda / 10.0, 1e-15);
          accepted = true;
          if (rel < cfg.residual_tol) {
            out.converged = true;
            out.diagnostics = "relative cost decrease below tolerance";
          }
          continue;
        }
      }

      lambda *= 10.0;
      if (lambda > kDampingCap) {
        // No damped step reduces the cost. Converged if the undamped
        // Gauss-Newton model predicts no meaningful reduction either.
        Eigen::LDLT<MatrixXd> gn(normal + 1e-12 * MatrixXd(diag.asDiagonal()));
        const VectorXd gn_step = gn.solve(-grad);
        const double predicted = gn_step.allFinite() ? -0.5 * grad.dot(gn_step) : cost;
        out.converged = cost <= floor_cost || predicted <= 10.0 * cfg.residual_tol * cost;
        std::ostringstream msg;
        msg << "damping escalation cap reached at iteration " << it << " (cost " << cost
            << ", predicted reduction " << predicted << ")";
        out.diagnostics = msg.str();
        out.theta = theta;
        out.cost = cost;
        return out;
      }
    }
    if (out.converged) break;
  }
  if (!out.converged && out.diagnostics.empty()) {
    std::ostringstream msg;
    msg << "no convergence after " << cfg.max_iter << " iterations (cost " << cost << ")";
    out.diagnostics = msg.str();
  }
  out.theta = theta;
  out.cost = cost;
  return out;
}

// Slope of the data near h: central secant through the neighbours of the
// sample closest to h, falling back to the overall secant.
double secant_slope_near(const std::vector<Sample>& s, double h) {
  std::size_t k = 0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (std::fabs(s[i].h - h) < std::fabs(s[k].h - h)) k = i;
  }
  const std::size_t lo = k == 0 ? 0 : k - 1;
  const std::size_t hi = std::min(k + 1, s.size() - 1);
  double slope = (s[hi].b - s[lo].b) / (s[hi].h - s[lo].h);
  if (slope == 0.0 || !std::isfinite(slope)) {
    slope = (s.back().b - s.front().b) / (s.back().h - s.front().h);
  }
  if (slope == 0.0 || !std::isfinite(slope)) slope = 1.0 / (s.back().h - s.front().h);
  return slope;
}

double spread(const std::vector<Sample>& s) {
  double lo = s.front().b;
  double hi = lo;
  for (const Sample& x : s) {
    lo = std::min(lo, x.b);
    hi = std::max(hi, x.b);
  }
  const double r = hi - lo;
  return r > 0.0 ? r : 1.0;
}

struct InitialGuess {
  double log_a = 0.0;
  std::vector<double> p;
};

// With a and the m_i fixed the model is linear in the p_i. Solve for them
// by least squares on a coarse grid of a and keep the best.
InitialGuess initial_guess(const std::vector<Sample>& s, const std::vector<Center>& centers,
                           const std::vector<double>& slopes, double log_a0) {
  const std::size_t n = centers.size();
  const auto rows = static_cast<Eigen::Index>(s.size());
  const auto cols = static_cast<Eigen::Index>(n);
  VectorXd b(rows);
  for (Eigen::Index r = 0; r < rows; ++r) b[r] = s[static_cast<std::size_t>(r)].b;

  InitialGuess best{log_a0, std::vector<double>(n, 1.0 / static_cast<double>(n))};
  double best_cost = std::numeric_limits<double>::infinity();
  for (int k = -8; k <= 8; ++k) {
    const double log_a = log_a0 + 0.5 * k * 2.302585092994046;
    const double a = std::exp(log_a);
    MatrixXd design(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
      for (Eigen::Index c = 0; c < cols; ++c) {
        const Center& ctr = centers[static_cast<std::size_t>(c)];
        design(r, c) = eval_forward({a, slopes[static_cast<std::size_t>(c)], ctr.x_c, ctr.y_c},
                                    s[static_cast<std::size_t>(r)].h);
      }
    }
    const VectorXd p = design.colPivHouseholderQr().solve(b);
    if (!p.allFinite()) continue;
    const double cost = (design * p - b).squaredNorm();
    if (cost < best_cost) {
      best_cost = cost;
      best.log_a = log_a;
      best.p.assign(p.data(), p.data() + p.size());
    }
  }
  return best;
}

constexpr double kLogABound = 14.0 * 2.302585092994046;  // a within 1e-14..1e14 of 1/range^2

}  // namespace

SCurveParams fit_two_param(const Dataset& data, Center center, const FitConfig& cfg) {
  data.validate();
  cfg.validate(data.samples.size());
  std::vector<Sample> sel = data.samples;
  if (cfg.weight_range) {
    const auto [first, last] = *cfg.weight_range;
    sel.assign(data.samples.begin() + static_cast<std::ptrdiff_t>(first),
               data.samples.begin() + static_cast<std::ptrdiff_t>(last) + 1);
  }
  const double yr = spread(sel);
  const double log_a0 = -2.0 * std::log(yr);

  LmProblem prob;
  prob.n_residuals = sel.size();
  prob.theta0 = VectorXd(2);
  prob.theta0 << log_a0, secant_slope_near(sel, center.x_c);
  prob.lower = VectorXd(2);
  prob.upper = VectorXd(2);
  const double inf = std::numeric_limits<double>::infinity();
  prob.lower << log_a0 - kLogABound, -inf;
  prob.upper << log_a0 + kLogABound, inf;
  prob.absolute_step = {true, false};
  prob.floor_rms = 1e-13 * yr;
  prob.residuals = [&](const VectorXd& th, VectorXd& r) {
    const SCurveParams p{std::exp(th[0]), th[1], center.x_c, center.y_c};
    for (std::size_t i = 0; i < sel.size(); ++i) {
      r[static_cast<Eigen::Index>(i)] = eval_forward(p, sel[i].h) - sel[i].b;
    }
  };

  const LmOutcome res = levenberg_marquardt(prob, cfg);
  const SCurveParams best{std::exp(res.theta[0]), res.theta[1], center.x_c, center.y_c};
  if (!res.converged) throw FitError("two-parameter fit failed: " + res.diagnostics, best);
  return best;
}

FitResult fit_superposition(const Dataset& data, const FitConfig& cfg) {
  data.validate();
  cfg.validate(data.samples.size());
  const std::vector<Center> centers = cfg.center_strategy == CenterStrategy::user
                                          ? cfg.centers
                                          : select_centers(data, cfg.n_curves);
  const std::size_t n = centers.size();
  const std::vector<Sample>& s = data.samples;
  const double yr = spread(s);
  const double log_a0 = -2.0 * std::log(yr);

  LmProblem prob;
  prob.n_residuals = s.size();
  const auto n_par = static_cast<Eigen::Index>(1 + 2 * n);
  std::vector<double> slopes(n);
  for (std::size_t i = 0; i < n; ++i) slopes[i] = secant_slope_near(s, centers[i].x_c);
  const InitialGuess guess = initial_guess(s, centers, slopes, log_a0);
  prob.theta0 = VectorXd(n_par);
  prob.theta0[0] = guess.log_a;
  for (std::size_t i = 0; i < n; ++i) {
    const auto k = static_cast<Eigen::Index>(1 + 2 * i);
    prob.theta0[k] = guess.p[i];
    prob.theta0[k + 1] = slopes[i];
  }
  const double inf = std::numeric_limits<double>::infinity();
  prob.lower = VectorXd::Constant(n_par, -inf);
  prob.upper = VectorXd::Constant(n_par, inf);
  prob.lower[0] = log_a0 - kLogABound;
  prob.upper[0] = log_a0 + kLogABound;
  prob.absolute_step.assign(static_cast<std::size_t>(n_par), false);
  prob.absolute_step[0] = true;
  prob.floor_rms = 1e-13 * yr;

  auto to_model = [&](const VectorXd& th) {
    Superposition sup;
    sup.a = std::exp(th[0]);
    sup.components.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto k = static_cast<Eigen::Index>(1 + 2 * i);
      sup.components.push_back({th[k], th[k + 1], centers[i].x_c, centers[i].y_c});
    }
    return sup;
  };
  prob.residuals = [&](const VectorXd& th, VectorXd& r) {
    const Superposition sup = to_model(th);
    for (std::size_t i = 0; i < s.size(); ++i) {
      r[static_cast<Eigen::Index>(i)] = eval(sup, s[i].h) - s[i].b;
    }
  };

  const LmOutcome res = levenberg_marquardt(prob, cfg);
  FitResult out;
  out.model = to_model(res.theta);
  out.rms_residual = std::sqrt(2.0 * res.cost / static_cast<double>(s.size()));
  out.iterations = res.iterations;
  out.converged = res.converged;
  out.cost_history = res.history;
  out.diagnostics = res.diagnostics;
  return out;
}

}  // namespace scurve
