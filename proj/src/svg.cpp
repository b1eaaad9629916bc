#include "banditlab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace banditlab::svg {

namespace {

constexpr double kWidth = 640;
constexpr double kHeight = 420;
constexpr double kLeft = 60;
constexpr double kRight = 20;
constexpr double kTop = 40;
constexpr double kBottom = 50;

struct Frame {
  double x0, x1, y0, y1;
  double px(double x) const { return kLeft + (x - x0) / (x1 - x0) * (kWidth - kLeft - kRight); }
  double py(double y) const { return kHeight - kBottom - (y - y0) / (y1 - y0) * (kHeight - kTop - kBottom); }
};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

void open_document(std::ostringstream& os, const std::string& title) {
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
     << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << escape(title)
     << "</text>\n";
}

void axes(std::ostringstream& os, const Frame& f, const std::string& x_label, const std::string& y_label) {
  os << "<g stroke=\"black\">\n";
  os << "<line x1=\"" << kLeft << "\" y1=\"" << f.py(f.y0) << "\" x2=\"" << kWidth - kRight << "\" y2=\""
     << f.py(f.y0) << "\"/>\n";
  os << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\"" << f.py(f.y0)
     << "\"/>\n</g>\n";
  for (int i = 0; i <= 5; ++i) {
    const double x = f.x0 + (f.x1 - f.x0) * i / 5.0;
    const double y = f.y0 + (f.y1 - f.y0) * i / 5.0;
    os << "<text x=\"" << f.px(x) << "\" y=\"" << kHeight - kBottom + 16 << "\" text-anchor=\"middle\">" << x
       << "</text>\n";
    os << "<text x=\"" << kLeft - 6 << "\" y=\"" << f.py(y) + 4 << "\" text-anchor=\"end\">" << y << "</text>\n";
  }
  os << "<text x=\"" << (kLeft + kWidth - kRight) / 2 << "\" y=\"" << kHeight - 12
     << "\" text-anchor=\"middle\">" << escape(x_label) << "</text>\n";
  if (!y_label.empty()) {
    os << "<text transform=\"translate(16," << (kTop + kHeight - kBottom) / 2
       << ") rotate(-90)\" text-anchor=\"middle\">" << escape(y_label) << "</text>\n";
  }
}

void polyline(std::ostringstream& os, const Frame& f, const Series& s) {
  os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"2\" points=\"";
  for (std::size_t i = 0; i < s.x.size(); ++i) {
    const double y = std::clamp(s.y[i], f.y0, f.y1);
    os << f.px(s.x[i]) << ',' << f.py(y) << ' ';
  }
  os << "\"/>\n";
}

}  // namespace

std::string render_histogram(const HistogramPlot& plot) {
  const auto& h = plot.histogram;
  double y_max = 0.0;
  for (std::size_t i = 0; i < h.counts.size(); ++i) y_max = std::max(y_max, h.density(i));
  if (plot.overlay) {
    for (double y : plot.overlay->y) y_max = std::max(y_max, y);
  }
  if (!(y_max > 0.0)) y_max = 1.0;
  const Frame f{h.lo, h.hi, 0.0, y_max * 1.05};

  std::ostringstream os;
  os.precision(6);
  open_document(os, plot.title);
  os << "<g fill=\"#1f77b4\" fill-opacity=\"0.7\">\n";
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    const double left = f.px(h.lo + static_cast<double>(i) * h.bin_width());
    const double right = f.px(h.lo + static_cast<double>(i + 1) * h.bin_width());
    const double top = f.py(h.density(i));
    os << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << std::max(right - left - 0.5, 0.5)
       << "\" height=\"" << f.py(0.0) - top << "\"/>\n";
  }
  os << "</g>\n";
  if (plot.overlay) polyline(os, f, *plot.overlay);
  for (const auto& [x, label] : plot.markers) {
    os << "<line x1=\"" << f.px(x) << "\" y1=\"" << kTop << "\" x2=\"" << f.px(x) << "\" y2=\"" << f.py(0.0)
       << "\" stroke=\"#2ca02c\" stroke-dasharray=\"6,3\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << f.px(x) + 4 << "\" y=\"" << kTop + 12 << "\" fill=\"#2ca02c\">" << escape(label)
       << "</text>\n";
  }
  axes(os, f, plot.x_label, "density");
  os << "</svg>\n";
  return os.str();
}

std::string render_lines(const LinePlot& plot) {
  double x0 = INFINITY, x1 = -INFINITY, y1 = 0.0;
  for (const auto& s : plot.series) {
    for (double x : s.x) {
      x0 = std::min(x0, x);
      x1 = std::max(x1, x);
    }
    for (double y : s.y) y1 = std::max(y1, y);
  }
  if (!(x1 > x0)) {
    x0 = 0.0;
    x1 = 1.0;
  }
  if (!(y1 > 0.0)) y1 = 1.0;
  const Frame f{x0, x1, 0.0, y1 * 1.1};

  std::ostringstream os;
  os.precision(6);
  open_document(os, plot.title);
  double legend_y = kTop + 10;
  for (const auto& s : plot.series) {
    polyline(os, f, s);
    os << "<text x=\"" << kWidth - kRight - 120 << "\" y=\"" << legend_y << "\" fill=\"" << s.color << "\">"
       << escape(s.label) << "</text>\n";
    legend_y += 16;
  }
  for (const auto& [x, y] : plot.points) {
    os << "<circle cx=\"" << f.px(x) << "\" cy=\"" << f.py(y) << "\" r=\"4\" fill=\"black\"/>\n";
  }
  axes(os, f, plot.x_label, plot.y_label);
  os << "</svg>\n";
  return os.str();
}

}  // namespace banditlab::svg
