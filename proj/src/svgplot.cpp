#include "specpert/svgplot.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "specpert/errors.hpp"

namespace specpert {

namespace {
constexpr double kWidth = 640.0, kHeight = 440.0;
constexpr double kLeft = 60.0, kRight = 20.0, kTop = 20.0, kBottom = 50.0;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}
}  // namespace

SvgPlot::SvgPlot(double x_lo, double x_hi, double y_lo, double y_hi, std::string x_label,
                 std::string y_label)
    : x_lo_(x_lo), x_hi_(x_hi), y_lo_(y_lo), y_hi_(y_hi),
      x_label_(std::move(x_label)), y_label_(std::move(y_label)) {}

double SvgPlot::px(double x) const {
  return kLeft + (x - x_lo_) / (x_hi_ - x_lo_) * (kWidth - kLeft - kRight);
}

double SvgPlot::py(double y) const {
  return kHeight - kBottom - (y - y_lo_) / (y_hi_ - y_lo_) * (kHeight - kTop - kBottom);
}

void SvgPlot::add_scatter(const std::vector<std::pair<double, double>>& pts,
                          const std::string& color, const std::string& label) {
  std::ostringstream os;
  for (const auto& [x, y] : pts) {
    if (x < x_lo_ || x > x_hi_ || y < y_lo_ || y > y_hi_) continue;
    os << "<circle cx=\"" << fmt(px(x)) << "\" cy=\"" << fmt(py(y))
       << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";
  }
  body_.push_back(os.str());
  if (!label.empty()) legend_.emplace_back(color, label);
}

void SvgPlot::add_errorbars(const std::vector<std::pair<double, double>>& pts,
                            const std::vector<double>& half_heights,
                            const std::string& color) {
  std::ostringstream os;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto [x, y] = pts[i];
    if (x < x_lo_ || x > x_hi_) continue;
    const double y1 = std::max(y - half_heights[i], y_lo_);
    const double y2 = std::min(y + half_heights[i], y_hi_);
    os << "<line x1=\"" << fmt(px(x)) << "\" y1=\"" << fmt(py(y1)) << "\" x2=\""
       << fmt(px(x)) << "\" y2=\"" << fmt(py(y2)) << "\" stroke=\"" << color
       << "\" stroke-width=\"1\"/>\n";
  }
  body_.push_back(os.str());
}

void SvgPlot::add_polyline(const std::vector<std::pair<double, double>>& pts,
                           const std::string& color, const std::string& label) {
  std::ostringstream os;
  os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
  for (const auto& [x, y] : pts)
    os << fmt(px(std::clamp(x, x_lo_, x_hi_))) << ',' << fmt(py(std::clamp(y, y_lo_, y_hi_)))
       << ' ';
  os << "\"/>\n";
  body_.push_back(os.str());
  if (!label.empty()) legend_.emplace_back(color, label);
}

void SvgPlot::write(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw SimError(Err::IoError, "SvgPlot: cannot open " + path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // axes
  out << "<line x1=\"" << kLeft << "\" y1=\"" << kHeight - kBottom << "\" x2=\""
      << kWidth - kRight << "\" y2=\"" << kHeight - kBottom
      << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  out << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
      << kHeight - kBottom << "\" stroke=\"black\" stroke-width=\"1\"/>\n";

  const int n_ticks = 6;
  for (int i = 0; i <= n_ticks; ++i) {
    const double x = x_lo_ + (x_hi_ - x_lo_) * i / n_ticks;
    const double y = y_lo_ + (y_hi_ - y_lo_) * i / n_ticks;
    out << "<line x1=\"" << fmt(px(x)) << "\" y1=\"" << kHeight - kBottom << "\" x2=\""
        << fmt(px(x)) << "\" y2=\"" << kHeight - kBottom + 5
        << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << fmt(px(x)) << "\" y=\"" << kHeight - kBottom + 18
        << "\" font-size=\"11\" text-anchor=\"middle\">" << fmt(x) << "</text>\n";
    out << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << fmt(py(y)) << "\" x2=\"" << kLeft
        << "\" y2=\"" << fmt(py(y)) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << kLeft - 8 << "\" y=\"" << fmt(py(y) + 4)
        << "\" font-size=\"11\" text-anchor=\"end\">" << fmt(y) << "</text>\n";
  }
  if (!x_label_.empty())
    out << "<text x=\"" << (kLeft + kWidth - kRight) / 2 << "\" y=\"" << kHeight - 10
        << "\" font-size=\"13\" text-anchor=\"middle\">" << x_label_ << "</text>\n";
  if (!y_label_.empty())
    out << "<text x=\"14\" y=\"" << (kTop + kHeight - kBottom) / 2
        << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
        << (kTop + kHeight - kBottom) / 2 << ")\">" << y_label_ << "</text>\n";

  for (const auto& chunk : body_) out << chunk;

  double ly = kTop + 14;
  for (const auto& [color, label] : legend_) {
    out << "<rect x=\"" << kWidth - kRight - 160 << "\" y=\"" << ly - 9
        << "\" width=\"10\" height=\"10\" fill=\"" << color << "\"/>\n";
    out << "<text x=\"" << kWidth - kRight - 145 << "\" y=\"" << ly
        << "\" font-size=\"12\">" << label << "</text>\n";
    ly += 16;
  }
  out << "</svg>\n";
}

}  // namespace specpert
