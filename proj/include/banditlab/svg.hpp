#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "banditlab/stats.hpp"

namespace banditlab::svg {

struct Series {
  std::vector<double> x;
  std::vector<double> y;
  std::string label;
  std::string color = "#d62728";
};

struct HistogramPlot {
  std::string title;
  std::string x_label;
  Histogram histogram;
  // Drawn over the bars, in density units.
  std::optional<Series> overlay;
  // Vertical reference lines (e.g. a predicted limit).
  std::vector<std::pair<double, std::string>> markers;
};

/// Bars are drawn as densities so overlays share the y axis.
std::string render_histogram(const HistogramPlot& plot);

struct LinePlot {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
  std::vector<std::pair<double, double>> points;  // highlighted (x, y)
};

std::string render_lines(const LinePlot& plot);

}  // namespace banditlab::svg
