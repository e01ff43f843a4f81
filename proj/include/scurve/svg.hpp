#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace scurve::svg {

struct XY {
  double x = 0.0;
  double y = 0.0;
};

/// Minimal static line/scatter chart. Plots are views only: nothing here
/// feeds back into any computed value.
class Plot {
 public:
  Plot(std::string title, std::string x_label, std::string y_label);

  void add_points(std::vector<XY> pts, std::string color, std::string name);
  void add_line(std::vector<XY> pts, std::string color, std::string name);
  void add_marker(XY at, std::string color, std::string name);

  void write(std::ostream& out) const;
  void write_file(const std::string& path) const;

 private:
  enum class Kind { points, line, marker };
  struct Series {
    Kind kind;
    std::vector<XY> pts;
    std::string color;
    std::string name;
  };

  std::string title_;
  std::string x_label_;
  std::string y_label_;
  std::vector<Series> series_;
};

/// Uniform samples of f on [lo, hi].
template <class F>
std::vector<XY> sample(F&& f, double lo, double hi, int n = 400) {
  std::vector<XY> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double x = lo + (hi - lo) * i / (n - 1);
    out.push_back({x, f(x)});
  }
  return out;
}

}  // namespace scurve::svg
