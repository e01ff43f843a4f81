#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace scurve {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-finite or out-of-domain input (NaN, inf, negative a, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Inverse evaluation with a zero slope.
class SingularSlopeError : public Error {
 public:
  using Error::Error;
};

/// The S_I/S_II split needs the radicals, which do not exist for a = 0.
class DecompositionError : public Error {
 public:
  using Error::Error;
};

/// A grid scan hit a non-finite function value.
class ScanError : public Error {
 public:
  ScanError(const std::string& what, double node) : Error(what), node_(node) {}
  double node() const { return node_; }

 private:
  double node_;
};

/// Root finder ran out of iterations; carries the best iterate seen.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double best_x, double best_f)
      : Error(what), best_x_(best_x), best_f_(best_f) {}
  double best_x() const { return best_x_; }
  double best_f() const { return best_f_; }

 private:
  double best_x_;
  double best_f_;
};

/// Zero or several sign changes of d2 where exactly one was expected.
class AmbiguousInflectionError : public Error {
 public:
  AmbiguousInflectionError(const std::string& what,
                           std::vector<std::pair<double, double>> brackets)
      : Error(what), brackets_(std::move(brackets)) {}
  const std::vector<std::pair<double, double>>& brackets() const { return brackets_; }

 private:
  std::vector<std::pair<double, double>> brackets_;
};

/// One or both curvature extrema flanking the inflection lie outside the range.
class ExtremaNotInDataError : public Error {
 public:
  using Error::Error;
};

/// |y_i - y0| too small to solve for a0.
class SingularIntervalError : public Error {
 public:
  using Error::Error;
};

/// Branches do not cross exactly twice.
class TopologyError : public Error {
 public:
  TopologyError(const std::string& what, std::size_t crossings)
      : Error(what), crossings_(crossings) {}
  std::size_t crossings() const { return crossings_; }

 private:
  std::size_t crossings_;
};

class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, double estimate, double error_bound)
      : Error(what), estimate_(estimate), error_bound_(error_bound) {}
  double estimate() const { return estimate_; }
  double error_bound() const { return error_bound_; }

 private:
  double estimate_;
  double error_bound_;
};

class SelectionError : public Error {
 public:
  using Error::Error;
};

/// Malformed input document; line is 1-based, 0 when not applicable.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0) : Error(what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace scurve
