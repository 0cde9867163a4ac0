#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

namespace relfix {

inline constexpr std::size_t kDefaultGridIntervals = 512;

/// Node values of a function on the uniform grid t_j = j / N, j = 0..N.
class GridFunction {
 public:
  /// Throws std::invalid_argument if values.size() < 2 or a value is not
  /// finite.
  explicit GridFunction(std::vector<double> values);

  /// Samples f at every node of an N-interval grid.
  static GridFunction sample(std::size_t n_intervals, const std::function<double(double)>& f);
  static GridFunction constant(std::size_t n_intervals, double value);

  std::size_t n_intervals() const { return values_.size() - 1; }
  double step() const { return 1.0 / static_cast<double>(n_intervals()); }
  double node(std::size_t j) const { return static_cast<double>(j) / static_cast<double>(n_intervals()); }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t j) const { return values_[j]; }
  std::size_t size() const { return values_.size(); }

  friend bool operator==(const GridFunction&, const GridFunction&) = default;

 private:
  std::vector<double> values_;
};

/// max_j |u_j - v_j|. Throws std::invalid_argument on mismatched grids.
double sup_diff(const GridFunction& u, const GridFunction& v);

/// max_j (u_j - v_j); the order-like g of the function-space application.
/// May be negative. Throws std::invalid_argument on mismatched grids.
double g_order(const GridFunction& u, const GridFunction& v);

/// u_j <= v_j at every node. Throws std::invalid_argument on mismatched grids.
bool pointwise_leq(const GridFunction& u, const GridFunction& v);

/// Piecewise-linear evaluation. Throws std::domain_error for t outside [0,1].
double interpolate(const GridFunction& u, double t);

/// Composite trapezoid rule over [0,1].
double trapezoid(const GridFunction& u);

/// Writes `t,value` CSV with a header row.
void write_csv(std::ostream& out, const GridFunction& u);

}  // namespace relfix
