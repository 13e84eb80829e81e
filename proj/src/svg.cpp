#include "ddent/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "ddent/errors.hpp"

namespace ddent {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};
constexpr const char* kDashes[] = {"", "8 4", "2 3", "10 3 2 3", "4 2", "1 2"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", std::abs(v) < 1e-12 ? 0.0 : v);
  return buf;
}

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

double nice_step(double span, int target) {
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double f = raw / mag;
  return (f < 1.5 ? 1.0 : f < 3.0 ? 2.0 : f < 7.0 ? 5.0 : 10.0) * mag;
}

}  // namespace

void render_svg(std::ostream& os, const std::vector<Series>& series, const AxesSpec& axes) {
  if (series.empty()) throw ConfigError("cannot plot an empty series list");
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const auto& s : series) {
    if (s.x.empty() || s.x.size() != s.y.size()) throw ConfigError("series '" + s.name + "' is empty or ragged");
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      x0 = std::min(x0, s.x[i]);
      x1 = std::max(x1, s.x[i]);
      y0 = std::min(y0, s.y[i]);
      y1 = std::max(y1, s.y[i]);
    }
  }
  if (axes.y_min) y0 = *axes.y_min;
  if (axes.y_max) y1 = *axes.y_max;
  if (x1 <= x0) x1 = x0 + 1.0;
  if (y1 <= y0) {
    y0 -= 0.5;
    y1 += 0.5;
  }
  const double left = 70, right = 20, top = 40, bottom = 55;
  const double pw = axes.width - left - right;
  const double ph = axes.height - top - bottom;
  auto px = [&](double x) { return left + (x - x0) / (x1 - x0) * pw; };
  auto py = [&](double y) { return top + (y1 - y) / (y1 - y0) * ph; };

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << axes.width << "\" height=\"" << axes.height
     << "\" viewBox=\"0 0 " << axes.width << ' ' << axes.height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << fmt(left + pw / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << escape(axes.title)
     << "</text>\n";
  os << "<g stroke=\"#dddddd\" stroke-width=\"1\">\n";
  const double xs = nice_step(x1 - x0, 8);
  const double ys = nice_step(y1 - y0, 6);
  std::vector<double> xt, yt;
  for (double v = std::ceil(x0 / xs) * xs; v <= x1 + 1e-9 * xs; v += xs) xt.push_back(v);
  for (double v = std::ceil(y0 / ys) * ys; v <= y1 + 1e-9 * ys; v += ys) yt.push_back(v);
  for (double v : xt) os << "<line x1=\"" << fmt(px(v)) << "\" y1=\"" << fmt(top) << "\" x2=\"" << fmt(px(v)) << "\" y2=\"" << fmt(top + ph) << "\"/>\n";
  for (double v : yt) os << "<line x1=\"" << fmt(left) << "\" y1=\"" << fmt(py(v)) << "\" x2=\"" << fmt(left + pw) << "\" y2=\"" << fmt(py(v)) << "\"/>\n";
  os << "</g>\n";
  os << "<rect x=\"" << fmt(left) << "\" y=\"" << fmt(top) << "\" width=\"" << fmt(pw) << "\" height=\"" << fmt(ph)
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (double v : xt) {
    os << "<text x=\"" << fmt(px(v)) << "\" y=\"" << fmt(top + ph + 18) << "\" text-anchor=\"middle\">" << tick_label(v)
       << "</text>\n";
  }
  for (double v : yt) {
    os << "<text x=\"" << fmt(left - 8) << "\" y=\"" << fmt(py(v) + 4) << "\" text-anchor=\"end\">" << tick_label(v)
       << "</text>\n";
  }
  os << "<text x=\"" << fmt(left + pw / 2) << "\" y=\"" << fmt(axes.height - 12.0) << "\" text-anchor=\"middle\">"
     << escape(axes.x_label) << "</text>\n";
  os << "<text x=\"18\" y=\"" << fmt(top + ph / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
     << fmt(top + ph / 2) << ")\">" << escape(axes.y_label) << "</text>\n";

  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    os << "<polyline fill=\"none\" stroke=\"" << kPalette[k % 6] << "\" stroke-width=\"1.8\"";
    if (*kDashes[k % 6]) os << " stroke-dasharray=\"" << kDashes[k % 6] << '"';
    os << " points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      const double y = std::clamp(s.y[i], y0, y1);
      os << (i ? " " : "") << fmt(px(s.x[i])) << ',' << fmt(py(y));
    }
    os << "\"/>\n";
  }
  const double lx = left + pw - 190;
  for (std::size_t k = 0; k < series.size(); ++k) {
    const double ly = top + 18 + 18.0 * static_cast<double>(k);
    os << "<line x1=\"" << fmt(lx) << "\" y1=\"" << fmt(ly - 4) << "\" x2=\"" << fmt(lx + 28) << "\" y2=\"" << fmt(ly - 4)
       << "\" stroke=\"" << kPalette[k % 6] << "\" stroke-width=\"1.8\"";
    if (*kDashes[k % 6]) os << " stroke-dasharray=\"" << kDashes[k % 6] << '"';
    os << "/>\n";
    os << "<text x=\"" << fmt(lx + 34) << "\" y=\"" << fmt(ly) << "\">" << escape(series[k].name) << "</text>\n";
  }
  os << "</svg>\n";
}

void emit_svg(const std::vector<Series>& series, const AxesSpec& axes, const std::string& path) {
  if (series.empty()) throw ConfigError("cannot plot an empty series list");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  render_svg(out, series, axes);
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace ddent
