#pragma once

#include "covfun/types.hpp"

#include <array>
#include <vector>

namespace covfun {

// A full-dimensional convex polytope in dimension 2 or 3 with both
// representations and a boundary triangulation.
struct Polytope {
  int dim = 0;
  Points vertices;               // extreme points only
  Points normals;                // unit outward facet normals
  std::vector<double> offsets;   // normals[j]·x <= offsets[j]
  // Boundary simplices (edges in 2-D, triangles in 3-D) as indices into
  // `vertices`; entries past `dim` are unused.
  std::vector<std::array<int, 3>> boundary;

  double max_violation(const Vec& p) const;  // max_j normals[j]·p − offsets[j]
};

// Convex hull of a point set. Throws Error("empty interior") if the points
// do not span the space.
Polytope convex_hull(const Points& points);

// Intersection of half-spaces a_j·x <= b_j (normals need not be unit).
// Redundant constraints are dropped. Throws if the intersection is empty,
// unbounded or lower-dimensional.
Polytope halfspace_intersection(const Points& normals,
                                const std::vector<double>& offsets);

// Indices of the 2-D convex hull in counter-clockwise order, collinear
// points removed.
std::vector<int> hull2d_indices(const Points& points, double eps);

}  // namespace covfun
