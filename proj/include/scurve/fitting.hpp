#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "scurve/errors.hpp"
#include "scurve/scurve.hpp"
#include "scurve/superposition.hpp"

namespace scurve {

enum class Branch { initial, hysteresis_upper, hysteresis_lower, demagnetization };

const char* to_string(Branch b);
/// Accepts "initial", "hysteresis-upper", "hysteresis-lower", "demagnetization".
Branch branch_from_string(const std::string& s);

struct Sample {
  double h = 0.0;  // A/m
  double b = 0.0;  // T
};

/// Ordered samples of one magnetization branch.
struct Dataset {
  std::vector<Sample> samples;
  std::string label;
  Branch branch = Branch::initial;

  /// Throws DomainError unless >= 4 finite samples with strictly increasing h.
  void validate() const;
  std::pair<double, double> h_range() const;
  std::pair<double, double> b_range() const;
};

struct Center {
  double x_c = 0.0;
  double y_c = 0.0;
};

enum class CenterStrategy { quantile, user };

struct FitConfig {
  std::size_t n_curves = 1;
  CenterStrategy center_strategy = CenterStrategy::quantile;
  std::vector<Center> centers;  // used when center_strategy == user
  int max_iter = 200;
  double residual_tol = 1e-10;  // relative cost decrease on an accepted step
  double damping_init = 1e-3;
  /// Inclusive 0-based sample index range for the two-parameter fit.
  std::optional<std::pair<std::size_t, std::size_t>> weight_range;

  void validate(std::size_t n_samples) const;
};

struct FitResult {
  Superposition model;
  double rms_residual = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> cost_history;  // cost after each accepted step, starting with the initial guess
  std::string diagnostics;
};

/// Two-parameter fit that did not converge; carries the best parameters seen.
class FitError : public Error {
 public:
  FitError(const std::string& what, SCurveParams best) : Error(what), best_(best) {}
  const SCurveParams& best() const { return best_; }

 private:
  SCurveParams best_;
};

/// n data samples nearest the (k+1)/(n+1) quantiles of the sample b-values,
/// without repeats, returned in increasing b order.
std::vector<Center> select_centers(const Dataset& data, std::size_t n);

/// Least-squares (a, m) for a fixed center; a > 0 via log a.
SCurveParams fit_two_param(const Dataset& data, Center center, const FitConfig& cfg = {});

/// Damped least squares over log a and (p_i, m_i) with centers held fixed.
FitResult fit_superposition(const Dataset& data, const FitConfig& cfg);

double rms_residual(const Superposition& model, const Dataset& data);

}  // namespace scurve
