#pragma once

// Minimal self-contained SVG line plots on log-log axes.

#include <string>
#include <vector>

namespace uadirac {

struct Curve {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

/// Nonpositive points are dropped. Throws NumericalError if the file cannot
/// be written.
void write_loglog_svg(const std::string& path, const std::string& title, const std::string& xlabel,
                      const std::string& ylabel, const std::vector<Curve>& curves);

std::string loglog_svg(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                       const std::vector<Curve>& curves);

} // namespace uadirac
