#include "relfix/grid_fn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

#include "relfix/plot.hpp"

namespace relfix {

namespace {

void require_same_grid(const GridFunction& u, const GridFunction& v) {
  if (u.n_intervals() != v.n_intervals()) {
    throw std::invalid_argument("grid mismatch: " + std::to_string(u.n_intervals()) + " vs " +
                                std::to_string(v.n_intervals()) + " intervals");
  }
}

}  // namespace

GridFunction::GridFunction(std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() < 2) throw std::invalid_argument("grid function needs at least one interval");
  for (std::size_t j = 0; j < values_.size(); ++j) {
    if (!std::isfinite(values_[j])) throw std::invalid_argument("grid function value at node " + std::to_string(j) + " is not finite");
  }
}

GridFunction GridFunction::sample(std::size_t n_intervals, const std::function<double(double)>& f) {
  if (n_intervals < 1) throw std::invalid_argument("grid needs at least one interval");
  std::vector<double> values(n_intervals + 1);
  for (std::size_t j = 0; j <= n_intervals; ++j) values[j] = f(static_cast<double>(j) / static_cast<double>(n_intervals));
  return GridFunction(std::move(values));
}

GridFunction GridFunction::constant(std::size_t n_intervals, double value) {
  if (n_intervals < 1) throw std::invalid_argument("grid needs at least one interval");
  return GridFunction(std::vector<double>(n_intervals + 1, value));
}

double sup_diff(const GridFunction& u, const GridFunction& v) {
  require_same_grid(u, v);
  double out = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) out = std::max(out, std::abs(u[j] - v[j]));
  return out;
}

double g_order(const GridFunction& u, const GridFunction& v) {
  require_same_grid(u, v);
  double out = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < u.size(); ++j) out = std::max(out, u[j] - v[j]);
  return out;
}

bool pointwise_leq(const GridFunction& u, const GridFunction& v) {
  require_same_grid(u, v);
  for (std::size_t j = 0; j < u.size(); ++j)
    if (!(u[j] <= v[j])) return false;
  return true;
}

double interpolate(const GridFunction& u, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw std::domain_error("interpolate: t outside [0,1]");
  const std::size_t n = u.n_intervals();
  const double x = t * static_cast<double>(n);
  const std::size_t j = std::min(static_cast<std::size_t>(x), n - 1);
  const double w = x - static_cast<double>(j);
  if (w == 0.0) return u[j];
  return (1.0 - w) * u[j] + w * u[j + 1];
}

double trapezoid(const GridFunction& u) {
  double inner = 0.0;
  for (std::size_t j = 1; j + 1 < u.size(); ++j) inner += u[j];
  return u.step() * (0.5 * (u[0] + u[u.size() - 1]) + inner);
}

void write_csv(std::ostream& out, const GridFunction& u) {
  out << "t,value\n";
  for (std::size_t j = 0; j < u.size(); ++j) out << format_real(u.node(j)) << ',' << format_real(u[j]) << '\n';
}

}  // namespace relfix
