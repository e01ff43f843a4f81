#include "scurve/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>

#include "scurve/errors.hpp"

namespace scurve::svg {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 160.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", std::fabs(v) < 1e-12 ? 0.0 : v);
  return buf;
}

// 1-2-5 step giving roughly `target` ticks
double nice_step(double span, int target) {
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double r = raw / mag;
  const double step = r < 1.5 ? 1.0 : r < 3.5 ? 2.0 : r < 7.5 ? 5.0 : 10.0;
  return step * mag;
}

}  // namespace

Plot::Plot(std::string title, std::string x_label, std::string y_label)
    : title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label)) {}

void Plot::add_points(std::vector<XY> pts, std::string color, std::string name) {
  series_.push_back({Kind::points, std::move(pts), std::move(color), std::move(name)});
}

void Plot::add_line(std::vector<XY> pts, std::string color, std::string name) {
  series_.push_back({Kind::line, std::move(pts), std::move(color), std::move(name)});
}

void Plot::add_marker(XY at, std::string color, std::string name) {
  series_.push_back({Kind::marker, {at}, std::move(color), std::move(name)});
}

void Plot::write(std::ostream& out) const {
  double x_lo = std::numeric_limits<double>::infinity();
  double x_hi = -x_lo;
  double y_lo = x_lo;
  double y_hi = -x_lo;
  for (const Series& s : series_) {
    for (const XY& p : s.pts) {
      if (!std::isfinite(p.x) || !std::isfinite(p.y)) continue;
      x_lo = std::min(x_lo, p.x);
      x_hi = std::max(x_hi, p.x);
      y_lo = std::min(y_lo, p.y);
      y_hi = std::max(y_hi, p.y);
    }
  }
  if (!(x_lo < x_hi)) {
    x_lo = std::isfinite(x_lo) ? x_lo - 1.0 : 0.0;
    x_hi = x_lo + 2.0;
  }
  if (!(y_lo < y_hi)) {
    y_lo = std::isfinite(y_lo) ? y_lo - 1.0 : 0.0;
    y_hi = y_lo + 2.0;
  }
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - x_lo) / (x_hi - x_lo) * pw; };
  auto py = [&](double y) { return kTop + (y_hi - y) / (y_hi - y_lo) * ph; };

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"15\">" << escape(title_) << "</text>\n";

  // axes and ticks
  out << "<g stroke=\"#444\" stroke-width=\"1\" font-family=\"sans-serif\" font-size=\"11\">\n"
      << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(pw)
      << "\" height=\"" << num(ph) << "\" fill=\"none\"/>\n";
  const double xs = nice_step(x_hi - x_lo, 6);
  for (double t = std::ceil(x_lo / xs) * xs; t <= x_hi + 1e-9 * xs; t += xs) {
    out << "<line x1=\"" << num(px(t)) << "\" y1=\"" << num(kTop + ph) << "\" x2=\"" << num(px(t))
        << "\" y2=\"" << num(kTop + ph + 5) << "\"/>"
        << "<text stroke=\"none\" x=\"" << num(px(t)) << "\" y=\"" << num(kTop + ph + 18)
        << "\" text-anchor=\"middle\">" << tick_label(t) << "</text>\n";
  }
  const double ys = nice_step(y_hi - y_lo, 6);
  for (double t = std::ceil(y_lo / ys) * ys; t <= y_hi + 1e-9 * ys; t += ys) {
    out << "<line x1=\"" << num(kLeft - 5) << "\" y1=\"" << num(py(t)) << "\" x2=\"" << num(kLeft)
        << "\" y2=\"" << num(py(t)) << "\"/>"
        << "<text stroke=\"none\" x=\"" << num(kLeft - 8) << "\" y=\"" << num(py(t) + 4)
        << "\" text-anchor=\"end\">" << tick_label(t) << "</text>\n";
  }
  out << "</g>\n";
  out << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"" << num(kHeight - 15)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
      << escape(x_label_) << "</text>\n"
      << "<text transform=\"translate(18," << num(kTop + ph / 2)
      << ") rotate(-90)\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
      << escape(y_label_) << "</text>\n";

  int legend_row = 0;
  for (const Series& s : series_) {
    switch (s.kind) {
      case Kind::line: {
        out << "<polyline fill=\"none\" stroke=\"" << escape(s.color)
            << "\" stroke-width=\"1.5\" points=\"";
        for (const XY& p : s.pts) {
          if (std::isfinite(p.x) && std::isfinite(p.y)) out << num(px(p.x)) << ',' << num(py(p.y)) << ' ';
        }
        out << "\"/>\n";
        break;
      }
      case Kind::points:
        for (const XY& p : s.pts) {
          if (!std::isfinite(p.x) || !std::isfinite(p.y)) continue;
          out << "<circle cx=\"" << num(px(p.x)) << "\" cy=\"" << num(py(p.y))
              << "\" r=\"2.5\" fill=\"" << escape(s.color) << "\" fill-opacity=\"0.5\"/>\n";
        }
        break;
      case Kind::marker: {
        const XY& p = s.pts.front();
        out << "<circle cx=\"" << num(px(p.x)) << "\" cy=\"" << num(py(p.y))
            << "\" r=\"5\" fill=\"none\" stroke=\"" << escape(s.color) << "\" stroke-width=\"2\"/>\n";
        break;
      }
    }
    const double ly = kTop + 14.0 + 18.0 * legend_row++;
    out << "<rect x=\"" << num(kWidth - kRight + 12) << "\" y=\"" << num(ly - 8)
        << "\" width=\"10\" height=\"10\" fill=\"" << escape(s.color) << "\"/>"
        << "<text x=\"" << num(kWidth - kRight + 28) << "\" y=\"" << num(ly)
        << "\" font-family=\"sans-serif\" font-size=\"11\">" << escape(s.name) << "</text>\n";
  }
  out << "</svg>\n";
}

void Plot::write_file(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  write(out);
}

}  // namespace scurve::svg
