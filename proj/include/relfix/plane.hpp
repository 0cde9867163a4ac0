#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "relfix/picard.hpp"
#include "relfix/types.hpp"

namespace relfix::plane {

/// A point of R^2.
struct PlanePoint {
  double first = 0.0;
  double second = 0.0;

  friend bool operator==(const PlanePoint&, const PlanePoint&) = default;
};

/// Points are related iff their first coordinates agree.
RelationView<PlanePoint> same_first_coordinate();

/// g(p, q) = p.second - q.second. Blind to the first coordinate, so (g1)
/// fails off the relation.
GFunctional<PlanePoint> second_difference_g();

/// g(p, q) = |p.first - q.first| + |p.second - q.second| (the l1 metric).
GFunctional<PlanePoint> l1_g();

/// (u, a) -> (u, a / 4)
SelfMap<PlanePoint> shrink_second_map();

/// (u, a) -> (u^2 / 4, a / 4)
SelfMap<PlanePoint> square_shrink_map();

/// Contraction constant claimed for both plane examples.
inline constexpr double kPlaneAlpha = 0.5;

/// Picard trace of shrink_second_map from (0, y0) under second_difference_g,
/// run for exactly n steps unless a residual is exactly zero.
/// Throws std::invalid_argument if n < 1.
IterationTrace<PlanePoint> example1_run(double y0, std::size_t n);

/// Two distinct points on which second_difference_g vanishes.
std::pair<PlanePoint, PlanePoint> example1_g1_violation_witness();

/// Picard trace of square_shrink_map from (u0, y0) under l1_g.
/// Throws std::domain_error unless |u0| < 4, the basin where the first
/// coordinate contracts too.
IterationTrace<PlanePoint> example2_run(double u0, double y0, std::size_t n);

struct NoncontractionWitness {
  PlanePoint u;
  PlanePoint v;
  double ratio = 0.0;  ///< |g(Su, Sv)| / |g(u, v)| = (2 scale + 1) / 4
};

/// Unrelated points (scale, 0), (scale + 1, 0) on which square_shrink_map
/// expands l1_g. Throws std::domain_error if scale < 2.
NoncontractionWitness example2_noncontraction_witness(double scale);

/// Deterministic related pairs ((a, y1), (a, y2)) from a Halton sequence over
/// [-half_width, half_width]^3.
std::vector<std::pair<PlanePoint, PlanePoint>> shared_first_pairs(std::size_t count, double half_width);

/// Deterministic Halton points over [-half_width, half_width]^2.
std::vector<PlanePoint> halton_points(std::size_t count, double half_width);

}  // namespace relfix::plane
