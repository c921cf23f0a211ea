#include "uadirac/svg_plot.hpp"
#include "uadirac/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace uadirac {

namespace {

constexpr double kWidth = 640, kHeight = 480;
constexpr double kLeft = 80, kRight = 160, kTop = 40, kBottom = 60;
constexpr std::array<const char*, 8> kColors{"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                             "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

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

} // namespace

std::string loglog_svg(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                       const std::vector<Curve>& curves) {
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
  for (const auto& c : curves)
    for (std::size_t i = 0; i < std::min(c.x.size(), c.y.size()); ++i) {
      if (!(c.x[i] > 0.0 && c.y[i] > 0.0)) continue;
      xmin = std::min(xmin, std::log10(c.x[i]));
      xmax = std::max(xmax, std::log10(c.x[i]));
      ymin = std::min(ymin, std::log10(c.y[i]));
      ymax = std::max(ymax, std::log10(c.y[i]));
    }
  if (!(xmin <= xmax)) xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  xmin = std::floor(xmin), xmax = std::max(std::ceil(xmax), xmin + 1);
  ymin = std::floor(ymin), ymax = std::max(std::ceil(ymax), ymin + 1);

  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  auto px = [&](double lx) { return kLeft + (lx - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double ly) { return kTop + (ymax - ly) / (ymax - ymin) * ph; };

  std::ostringstream os;
  os << R"(<svg xmlns="http://www.w3.org/2000/svg" width=")" << kWidth << R"(" height=")" << kHeight
     << R"(" font-family="sans-serif" font-size="12">)" << '\n';
  os << R"(<rect width="100%" height="100%" fill="white"/>)" << '\n';
  os << R"(<text x=")" << kLeft + pw / 2 << R"(" y="24" text-anchor="middle" font-size="14">)" << escape(title)
     << "</text>\n";
  for (double d = xmin; d <= xmax + 1e-9; d += 1.0) {
    os << R"(<line x1=")" << px(d) << R"(" y1=")" << kTop << R"(" x2=")" << px(d) << R"(" y2=")" << kTop + ph
       << R"(" stroke="#ddd"/>)" << '\n';
    os << R"(<text x=")" << px(d) << R"(" y=")" << kTop + ph + 18 << R"(" text-anchor="middle">1e)" << d
       << "</text>\n";
  }
  for (double d = ymin; d <= ymax + 1e-9; d += 1.0) {
    os << R"(<line x1=")" << kLeft << R"(" y1=")" << py(d) << R"(" x2=")" << kLeft + pw << R"(" y2=")" << py(d)
       << R"(" stroke="#ddd"/>)" << '\n';
    os << R"(<text x=")" << kLeft - 6 << R"(" y=")" << py(d) + 4 << R"(" text-anchor="end">1e)" << d
       << "</text>\n";
  }
  os << R"(<rect x=")" << kLeft << R"(" y=")" << kTop << R"(" width=")" << pw << R"(" height=")" << ph
     << R"(" fill="none" stroke="black"/>)" << '\n';
  os << R"(<text x=")" << kLeft + pw / 2 << R"(" y=")" << kHeight - 16 << R"(" text-anchor="middle">)"
     << escape(xlabel) << "</text>\n";
  os << R"(<text x="18" y=")" << kTop + ph / 2 << R"(" text-anchor="middle" transform="rotate(-90 18 )"
     << kTop + ph / 2 << R"lit()">)lit" << escape(ylabel) << "</text>\n";

  for (std::size_t k = 0; k < curves.size(); ++k) {
    const auto& c = curves[k];
    const char* color = kColors[k % kColors.size()];
    os << R"(<polyline fill="none" stroke=")" << color << R"(" stroke-width="1.5" points=")";
    for (std::size_t i = 0; i < std::min(c.x.size(), c.y.size()); ++i)
      if (c.x[i] > 0.0 && c.y[i] > 0.0) os << px(std::log10(c.x[i])) << ',' << py(std::log10(c.y[i])) << ' ';
    os << "\"/>\n";
    for (std::size_t i = 0; i < std::min(c.x.size(), c.y.size()); ++i)
      if (c.x[i] > 0.0 && c.y[i] > 0.0)
        os << R"(<circle cx=")" << px(std::log10(c.x[i])) << R"(" cy=")" << py(std::log10(c.y[i]))
           << R"(" r="2.5" fill=")" << color << R"("/>)" << '\n';
    const double ly = kTop + 14 + 18 * static_cast<double>(k);
    os << R"(<line x1=")" << kLeft + pw + 10 << R"(" y1=")" << ly - 4 << R"(" x2=")" << kLeft + pw + 30
       << R"(" y2=")" << ly - 4 << R"(" stroke=")" << color << R"(" stroke-width="2"/>)" << '\n';
    os << R"(<text x=")" << kLeft + pw + 36 << R"(" y=")" << ly << R"(">)" << escape(c.label) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

void write_loglog_svg(const std::string& path, const std::string& title, const std::string& xlabel,
                      const std::string& ylabel, const std::vector<Curve>& curves) {
  std::ofstream out(path);
  out << loglog_svg(title, xlabel, ylabel, curves);
  if (!out) throw NumericalError("cannot write " + path);
}

} // namespace uadirac
