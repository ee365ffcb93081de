#pragma once

#include <string>
#include <utility>
#include <vector>

namespace specpert {

/// Minimal static scatter/line figure writer (axes, ticks, legend).
class SvgPlot {
 public:
  SvgPlot(double x_lo, double x_hi, double y_lo, double y_hi,
          std::string x_label = "", std::string y_label = "");

  void add_scatter(const std::vector<std::pair<double, double>>& pts,
                   const std::string& color, const std::string& label);
  void add_errorbars(const std::vector<std::pair<double, double>>& pts,
                     const std::vector<double>& half_heights, const std::string& color);
  void add_polyline(const std::vector<std::pair<double, double>>& pts,
                    const std::string& color, const std::string& label);

  void write(const std::string& path) const;

 private:
  double px(double x) const;
  double py(double y) const;

  double x_lo_, x_hi_, y_lo_, y_hi_;
  std::string x_label_, y_label_;
  std::vector<std::string> body_;
  std::vector<std::pair<std::string, std::string>> legend_;  // color, label
};

}  // namespace specpert
