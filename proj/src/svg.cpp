#include "bpdd/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "bpdd/errors.hpp"

namespace bpdd::io {

namespace {

constexpr int kWidth = 760;
constexpr int kHeight = 500;
constexpr int kLeft = 70;
constexpr int kRight = 180;  // room for the legend
constexpr int kTop = 40;
constexpr int kBottom = 55;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                          "#9467bd", "#17becf", "#8c564b", "#7f7f7f",
                          "#bcbd22", "#e377c2"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

void emit_svg(const std::vector<Curve>& curves, const PlotSpec& spec,
              const std::string& path) {
  if (curves.empty()) throw DegeneratePlot("emit_svg: no curves");
  for (const Curve& c : curves) {
    if (c.x.size() != c.y.size())
      throw DegeneratePlot("emit_svg: mismatched curve lengths in " + c.label);
    if (c.x.size() < 2)
      throw DegeneratePlot("emit_svg: curve " + c.label + " has < 2 points");
  }

  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const Curve& c : curves) {
    for (double v : c.x) {
      if (v <= 0.0) throw DegeneratePlot("emit_svg: nonpositive x on log axis");
      xmin = std::min(xmin, v);
      xmax = std::max(xmax, v);
    }
    for (double v : c.y) {
      if (spec.log_y && v <= 0.0)
        throw DegeneratePlot("emit_svg: nonpositive y on log axis");
      ymin = std::min(ymin, v);
      ymax = std::max(ymax, v);
    }
  }
  const double lx0 = std::log10(xmin), lx1 = std::log10(xmax);
  double y0 = spec.log_y ? std::log10(ymin) : ymin;
  double y1 = spec.log_y ? std::log10(ymax) : ymax;
  if (y1 - y0 < 1e-12) {
    y0 -= 0.5;
    y1 += 0.5;
  }
  const double ypad = 0.05 * (y1 - y0);
  y0 -= ypad;
  y1 += ypad;

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const auto sx = [&](double v) {
    return kLeft + (std::log10(v) - lx0) / std::max(lx1 - lx0, 1e-12) * plot_w;
  };
  const auto sy = [&](double v) {
    const double t = spec.log_y ? std::log10(v) : v;
    return kTop + (y1 - t) / (y1 - y0) * plot_h;
  };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
      << kHeight << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"22\" font-size=\"15\" "
      << "text-anchor=\"middle\" font-family=\"sans-serif\">" << spec.title
      << "</text>\n";

  // frame
  out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << plot_w
      << "\" height=\"" << plot_h
      << "\" fill=\"none\" stroke=\"#333\" stroke-width=\"1\"/>\n";

  // x ticks at powers of ten
  for (int e = static_cast<int>(std::floor(lx0));
       e <= static_cast<int>(std::ceil(lx1)); ++e) {
    const double v = std::pow(10.0, e);
    if (v < xmin * 0.999 || v > xmax * 1.001) continue;
    const double X = sx(v);
    out << "<line x1=\"" << X << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << X
        << "\" y2=\"" << kTop + plot_h + 5
        << "\" stroke=\"#333\" stroke-width=\"1\"/>\n";
    out << "<text x=\"" << X << "\" y=\"" << kTop + plot_h + 20
        << "\" font-size=\"12\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\">1e"
        << e << "</text>\n";
  }
  // y ticks
  const int yticks = 6;
  for (int k = 0; k <= yticks; ++k) {
    const double t = y0 + (y1 - y0) * k / yticks;
    const double v = spec.log_y ? std::pow(10.0, t) : t;
    const double Y = kTop + (y1 - t) / (y1 - y0) * plot_h;
    out << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << Y << "\" x2=\"" << kLeft
        << "\" y2=\"" << Y << "\" stroke=\"#333\" stroke-width=\"1\"/>\n";
    out << "<text x=\"" << kLeft - 9 << "\" y=\"" << Y + 4
        << "\" font-size=\"11\" text-anchor=\"end\" "
           "font-family=\"sans-serif\">"
        << fmt(v) << "</text>\n";
  }
  // axis labels
  out << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 12
      << "\" font-size=\"13\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\">"
      << spec.x_label << " (log scale)</text>\n";
  out << "<text x=\"18\" y=\"" << kTop + plot_h / 2
      << "\" font-size=\"13\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" transform=\"rotate(-90 18 "
      << kTop + plot_h / 2 << ")\">" << spec.y_label << "</text>\n";

  for (std::size_t ci = 0; ci < curves.size(); ++ci) {
    const Curve& c = curves[ci];
    const char* color = kPalette[ci % (sizeof(kPalette) / sizeof(*kPalette))];
    out << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.6\" points=\"";
    for (std::size_t i = 0; i < c.x.size(); ++i)
      out << fmt(sx(c.x[i])) << "," << fmt(sy(c.y[i])) << " ";
    out << "\"/>\n";
    const double ly = kTop + 14 + 18.0 * ci;
    out << "<line x1=\"" << kWidth - kRight + 12 << "\" y1=\"" << ly
        << "\" x2=\"" << kWidth - kRight + 34 << "\" y2=\"" << ly
        << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << kWidth - kRight + 40 << "\" y=\"" << ly + 4
        << "\" font-size=\"11\" font-family=\"sans-serif\">" << c.label
        << "</text>\n";
  }
  out << "</svg>\n";

  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("emit_svg: cannot open " + path);
  const std::string text = out.str();
  file.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!file) throw IoError("emit_svg: write failed for " + path);
}

}  // namespace bpdd::io
