#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>
#include <vector>

namespace pep::tools {

struct SvgSeries {
  std::string label;
  std::vector<double> x;  // positive, drawn on a log axis
  std::vector<double> y;
};

/// Minimal static SVG 1.1 line chart: log-x axis, linear y, one polyline per
/// series. CSV stays the ground-truth artifact; this is a quick look.
inline void write_line_chart(const std::string& path, const std::string& title,
                             const std::string& x_label,
                             const std::string& y_label,
                             const std::vector<SvgSeries>& series,
                             double y_min = 0.0, double y_max = 1.05) {
  const int w = 760, h = 520;
  const int ml = 70, mr = 160, mt = 50, mb = 60;
  const double pw = w - ml - mr, ph = h - mt - mb;

  double x_min = 1e300, x_max = -1e300;
  for (const SvgSeries& s : series)
    for (double v : s.x) {
      x_min = std::min(x_min, v);
      x_max = std::max(x_max, v);
    }
  if (!(x_min > 0.0) || !(x_max > x_min)) {
    x_min = 1e-4;
    x_max = 1.0;
  }
  const double lx0 = std::log10(x_min), lx1 = std::log10(x_max);
  auto px = [&](double x) {
    return ml + pw * (std::log10(x) - lx0) / (lx1 - lx0);
  };
  auto py = [&](double y) { return mt + ph * (1.0 - (y - y_min) / (y_max - y_min)); };

  const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b"};
  std::ofstream out(path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
      << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << w / 2 << "\" y=\"28\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";

  // axes
  out << "<line x1=\"" << ml << "\" y1=\"" << mt + ph << "\" x2=\"" << ml + pw
      << "\" y2=\"" << mt + ph << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml
      << "\" y2=\"" << mt + ph << "\" stroke=\"black\"/>\n";

  // log-decade x ticks
  for (int d = static_cast<int>(std::floor(lx0));
       d <= static_cast<int>(std::ceil(lx1)); ++d) {
    const double x = std::pow(10.0, d);
    if (x < x_min * 0.999 || x > x_max * 1.001) continue;
    out << "<line x1=\"" << px(x) << "\" y1=\"" << mt + ph << "\" x2=\""
        << px(x) << "\" y2=\"" << mt + ph + 6 << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << px(x) << "\" y=\"" << mt + ph + 22
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        << "font-size=\"12\">1e" << d << "</text>\n";
  }
  for (int k = 0; k <= 5; ++k) {
    const double y = y_min + (y_max - y_min) * k / 5.0;
    out << "<line x1=\"" << ml - 6 << "\" y1=\"" << py(y) << "\" x2=\"" << ml
        << "\" y2=\"" << py(y) << "\" stroke=\"black\"/>\n";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", y);
    out << "<text x=\"" << ml - 10 << "\" y=\"" << py(y) + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
        << "font-size=\"12\">" << buf << "</text>\n";
  }
  out << "<text x=\"" << ml + pw / 2 << "\" y=\"" << h - 14
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      << "font-size=\"13\">" << x_label << "</text>\n";
  out << "<text x=\"18\" y=\"" << mt + ph / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\""
      << " transform=\"rotate(-90 18 " << mt + ph / 2 << ")\">" << y_label
      << "</text>\n";

  for (size_t s = 0; s < series.size(); ++s) {
    const char* color = colors[s % 6];
    out << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.8\" points=\"";
    for (size_t i = 0; i < series[s].x.size(); ++i)
      out << px(series[s].x[i]) << ',' << py(std::clamp(series[s].y[i], y_min,
                                                        y_max))
          << ' ';
    out << "\"/>\n";
    const double ly = mt + 16 + 20.0 * s;
    out << "<line x1=\"" << ml + pw + 12 << "\" y1=\"" << ly << "\" x2=\""
        << ml + pw + 38 << "\" y2=\"" << ly << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << ml + pw + 44 << "\" y=\"" << ly + 4
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << series[s].label
        << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace pep::tools
