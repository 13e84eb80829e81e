#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ddent {

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

struct AxesSpec {
  std::string title;
  std::string x_label = "t";
  std::string y_label;
  std::optional<double> y_min;
  std::optional<double> y_max;
  int width = 720;
  int height = 480;
};

// Self-contained SVG line chart; the output depends only on the input.
void render_svg(std::ostream& os, const std::vector<Series>& series, const AxesSpec& axes);
void emit_svg(const std::vector<Series>& series, const AxesSpec& axes, const std::string& path);

}  // namespace ddent
