#pragma once

#include "covfun/body.hpp"

#include <random>

namespace covfun {

using Rng = std::mt19937_64;

// Unit directions: equally spaced angles in 2-D, a Fibonacci sphere in 3-D.
Points direction_grid(int dim, int count);
// Angular resolution (largest gap to the nearest grid direction, radians)
// of direction_grid(dim, count).
double direction_grid_resolution(int dim, int count);

Vec random_direction(int dim, Rng& rng);
// Axis-aligned bounding box from support values.
std::pair<Vec, Vec> bounding_box(const ConvexBody& K);
// Uniform point of K by rejection from the bounding box.
Vec random_point(const ConvexBody& K, Rng& rng);
Points random_points(const ConvexBody& K, int count, Rng& rng);
// Points on ∂K along the rays from the reference point through a grid.
Points boundary_sample(const ConvexBody& K, int count);
// Support points of K over a direction grid.
Points support_sample(const ConvexBody& K, int count);

// Default smooth-body grid sizes.
inline constexpr int kGrid2 = 1 << 14;
inline constexpr int kGrid3 = 100000;
inline int default_grid(int dim) { return dim == 2 ? kGrid2 : kGrid3; }

}  // namespace covfun
