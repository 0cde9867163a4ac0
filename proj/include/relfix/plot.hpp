#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace relfix {

/// Scientific notation with 17 significant digits, e.g. 7.5000000000000000e-01.
std::string format_real(double value);

/// Writes the `iteration,residual` CSV of a residual series, one row per step.
void write_trace_csv(std::ostream& out, std::span<const double> residuals);

/// Smallest value drawn on the log axis; nonpositive residuals are clamped here.
inline constexpr double kPlotFloor = 1e-18;

struct PlotSeries {
  std::string label;
  std::vector<double> values;  ///< values[n] is drawn at x = n
};

struct PlotLabels {
  std::string title = "Convergence";
  std::string x_axis = "iteration n";
  std::string y_axis = "residual";
};

/// Self-contained semilog-y SVG of one or more series against iteration.
/// A series with one point is drawn as a marker only. Throws
/// std::invalid_argument if there is nothing to plot.
void emit_plot(std::ostream& out, std::span<const PlotSeries> series, const PlotLabels& labels = {});

}  // namespace relfix
