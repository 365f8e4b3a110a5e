#pragma once

#include <string>
#include <vector>

namespace bpdd::io {

struct Curve {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotSpec {
  std::string title;
  std::string x_label = "p";
  std::string y_label;
  bool log_y = false;  // x is always log10
};

/// Standalone SVG: log10 x-axis, one polyline per curve, legend from curve
/// labels. Throws DegeneratePlot when a curve has mismatched x/y lengths or
/// fewer than two points, IoError on write failure.
void emit_svg(const std::vector<Curve>& curves, const PlotSpec& spec,
              const std::string& path);

}  // namespace bpdd::io
