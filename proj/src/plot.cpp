#include "relfix/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iterator>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace relfix {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 460.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 30.0;
constexpr double kTop = 50.0;
constexpr double kBottom = 60.0;

const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

std::string fixed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string format_real(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.16e", value);
  return buf;
}

void write_trace_csv(std::ostream& out, std::span<const double> residuals) {
  out << "iteration,residual\n";
  for (std::size_t n = 0; n < residuals.size(); ++n) out << n << ',' << format_real(residuals[n]) << '\n';
}

void emit_plot(std::ostream& out, std::span<const PlotSeries> series, const PlotLabels& labels) {
  std::size_t max_len = 0;
  for (const auto& s : series) max_len = std::max(max_len, s.values.size());
  if (max_len == 0) throw std::invalid_argument("emit_plot: empty trace");

  bool clamped = false;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  auto log_of = [&](double v) {
    if (!(v > kPlotFloor)) {
      clamped = clamped || v < kPlotFloor;
      v = kPlotFloor;
    }
    return std::log10(v);
  };
  for (const auto& s : series)
    for (double v : s.values) {
      const double l = log_of(v);
      lo = std::min(lo, l);
      hi = std::max(hi, l);
    }
  double decade_lo = std::floor(lo);
  double decade_hi = std::ceil(hi);
  if (decade_hi <= decade_lo) decade_hi = decade_lo + 1.0;

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const double x_span = max_len > 1 ? static_cast<double>(max_len - 1) : 1.0;
  auto px = [&](double n) { return kLeft + plot_w * n / x_span; };
  auto py = [&](double l) { return kTop + plot_h * (decade_hi - l) / (decade_hi - decade_lo); };

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
  out << "<text x=\"" << fixed(kWidth / 2) << "\" y=\"28\" text-anchor=\"middle\" font-size=\"15\">" << escape(labels.title)
      << "</text>\n";

  // Decade grid and y tick labels.
  const int step = std::max(1, static_cast<int>(std::ceil((decade_hi - decade_lo) / 10.0)));
  for (int d = static_cast<int>(decade_lo); d <= static_cast<int>(decade_hi); d += step) {
    const double y = py(d);
    out << "<line x1=\"" << fixed(kLeft) << "\" y1=\"" << fixed(y) << "\" x2=\"" << fixed(kLeft + plot_w) << "\" y2=\""
        << fixed(y) << "\" stroke=\"#dddddd\"/>\n";
    out << "<text x=\"" << fixed(kLeft - 8) << "\" y=\"" << fixed(y + 4) << "\" text-anchor=\"end\">1e" << d << "</text>\n";
  }
  // x ticks.
  const std::size_t x_step = std::max<std::size_t>(1, (max_len + 9) / 10);
  for (std::size_t n = 0; n < max_len; n += x_step) {
    const double x = px(static_cast<double>(n));
    out << "<line x1=\"" << fixed(x) << "\" y1=\"" << fixed(kTop + plot_h) << "\" x2=\"" << fixed(x) << "\" y2=\""
        << fixed(kTop + plot_h + 5) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << fixed(x) << "\" y=\"" << fixed(kTop + plot_h + 20) << "\" text-anchor=\"middle\">" << n
        << "</text>\n";
  }
  out << "<rect x=\"" << fixed(kLeft) << "\" y=\"" << fixed(kTop) << "\" width=\"" << fixed(plot_w) << "\" height=\""
      << fixed(plot_h) << "\" fill=\"none\" stroke=\"black\"/>\n";
  out << "<text x=\"" << fixed(kLeft + plot_w / 2) << "\" y=\"" << fixed(kHeight - 15)
      << "\" text-anchor=\"middle\">" << escape(labels.x_axis) << "</text>\n";
  out << "<text x=\"18\" y=\"" << fixed(kTop + plot_h / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << fixed(kTop + plot_h / 2) << ")\">" << escape(labels.y_axis) << " (log scale)</text>\n";

  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = kColors[k % std::size(kColors)];
    if (s.values.size() > 1) {
      out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
      for (std::size_t n = 0; n < s.values.size(); ++n) {
        if (n > 0) out << ' ';
        out << fixed(px(static_cast<double>(n))) << ',' << fixed(py(log_of(s.values[n])));
      }
      out << "\"/>\n";
    }
    for (std::size_t n = 0; n < s.values.size(); ++n) {
      out << "<circle cx=\"" << fixed(px(static_cast<double>(n))) << "\" cy=\"" << fixed(py(log_of(s.values[n])))
          << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";
    }
    const double ly = kTop + 16.0 + 16.0 * static_cast<double>(k);
    out << "<text x=\"" << fixed(kLeft + plot_w - 8) << "\" y=\"" << fixed(ly) << "\" text-anchor=\"end\" fill=\"" << color
        << "\">" << escape(s.label) << "</text>\n";
  }
  if (clamped) {
    out << "<text x=\"" << fixed(kLeft + 8) << "\" y=\"" << fixed(kTop + plot_h - 8)
        << "\" font-size=\"11\">zero residuals drawn at 1e-18</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace relfix
