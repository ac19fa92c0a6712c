#pragma once

#include <string>
#include <utility>
#include <vector>

namespace qbc::svg {

struct Series {
  std::vector<std::pair<double, double>> points;
  std::string color = "#1f77b4";
  bool as_line = false;  // scatter circles by default
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  std::vector<Series> series;
};

/// Minimal plot: axes, tick labels, scatter points, optional fitted curves.
std::string render(const PlotSpec& spec);

}  // namespace qbc::svg
