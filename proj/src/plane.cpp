#include "relfix/plane.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "relfix/gspace.hpp"

namespace relfix::plane {

namespace {

// Runs exactly n steps: only an exactly-zero residual stops early.
StoppingPolicy exact_steps(std::size_t n) {
  if (n < 1) throw std::invalid_argument("plane example: need at least one iteration");
  return {std::numeric_limits<double>::min(), n};
}

}  // namespace

RelationView<PlanePoint> same_first_coordinate() {
  return [](const PlanePoint& p, const PlanePoint& q) { return p.first == q.first; };
}

GFunctional<PlanePoint> second_difference_g() {
  return {[](const PlanePoint& p, const PlanePoint& q) { return p.second - q.second; }, DomainMode::relation_restricted};
}

GFunctional<PlanePoint> l1_g() {
  return {[](const PlanePoint& p, const PlanePoint& q) { return std::abs(p.first - q.first) + std::abs(p.second - q.second); },
          DomainMode::relation_restricted};
}

SelfMap<PlanePoint> shrink_second_map() {
  return [](const PlanePoint& p) { return PlanePoint{p.first, p.second / 4.0}; };
}

SelfMap<PlanePoint> square_shrink_map() {
  return [](const PlanePoint& p) { return PlanePoint{p.first * p.first / 4.0, p.second / 4.0}; };
}

IterationTrace<PlanePoint> example1_run(double y0, std::size_t n) {
  return iterate(shrink_second_map(), second_difference_g(), same_first_coordinate(), PlanePoint{0.0, y0},
                 exact_steps(n), kPlaneAlpha);
}

std::pair<PlanePoint, PlanePoint> example1_g1_violation_witness() { return {{1.0, 5.0}, {2.0, 5.0}}; }

IterationTrace<PlanePoint> example2_run(double u0, double y0, std::size_t n) {
  if (!(std::abs(u0) < 4.0)) throw std::domain_error("example2_run: |u0| must be below 4");
  return iterate(square_shrink_map(), l1_g(), same_first_coordinate(), PlanePoint{u0, y0}, exact_steps(n), kPlaneAlpha);
}

NoncontractionWitness example2_noncontraction_witness(double scale) {
  if (!(scale >= 2.0)) throw std::domain_error("example2_noncontraction_witness: scale must be at least 2");
  const PlanePoint u{scale, 0.0};
  const PlanePoint v{scale + 1.0, 0.0};
  const auto g = l1_g();
  const auto map = square_shrink_map();
  return {u, v, std::abs(g(map(u), map(v))) / std::abs(g(u, v))};
}

std::vector<std::pair<PlanePoint, PlanePoint>> shared_first_pairs(std::size_t count, double half_width) {
  std::vector<std::pair<PlanePoint, PlanePoint>> out;
  out.reserve(count);
  auto coord = [&](std::size_t i, unsigned base) { return half_width * (2.0 * radical_inverse(i, base) - 1.0); };
  for (std::size_t i = 1; i <= count; ++i) {
    const double a = coord(i, 2);
    out.emplace_back(PlanePoint{a, coord(i, 3)}, PlanePoint{a, coord(i, 5)});
  }
  return out;
}

std::vector<PlanePoint> halton_points(std::size_t count, double half_width) {
  std::vector<PlanePoint> out;
  out.reserve(count);
  for (std::size_t i = 1; i <= count; ++i) {
    out.push_back({half_width * (2.0 * radical_inverse(i, 2) - 1.0), half_width * (2.0 * radical_inverse(i, 3) - 1.0)});
  }
  return out;
}

}  // namespace relfix::plane
