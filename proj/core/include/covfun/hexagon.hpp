#pragma once

#include "covfun/body.hpp"

#include <array>

namespace covfun {

// Affine regular hexagon o ± a, o ± b, o ± (b − a) inscribed in a planar
// body, listed as v1 = o+a, v2 = o+b, v3 = o+b−a, v4 = o−a, v5 = o−b,
// v6 = o−b+a.
struct AffineHexagon {
  std::array<Vec, 6> vertices;
  Vec center;
  double boundary_residual = 0.0;  // max |gauge(v_i) − 1|
  double symmetry_residual = 0.0;  // max |v_i + v_{i+3} − 2o|
  double diagonal_angle = 0.0;     // direction of v4 → v1
};

// One-parameter bisection over the direction of the diagonal v4v1: for each
// direction the parallel chords of half the central chord's length are found
// and the mismatch of their midpoints along the diagonal changes sign when
// the direction is reversed.
AffineHexagon inscribe_affine_hexagon(const ConvexBody& D);

}  // namespace covfun
