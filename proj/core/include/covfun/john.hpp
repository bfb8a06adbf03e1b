#pragma once

#include "covfun/body.hpp"

namespace covfun {

// {x : (x − center)ᵀ shape (x − center) <= 1}
struct Ellipsoid {
  Vec center;
  Mat shape;
};

struct AffineCert {
  Mat matrix;
  Vec shift;
  bool verified_inner = false;
  bool verified_outer = false;
  int sample_count = 0;
  double inner_radius = 0.0;  // min support of T(K) over the checked directions
  double outer_radius = 0.0;  // max point norm of T(K)
};

// Minimum-volume enclosing ellipsoid of a point set (Khachiyan iteration
// with away steps); stops when every point satisfies the optimality bound
// within relative tolerance `tol`.
Ellipsoid lowner_ellipsoid(const Points& pts, double tol = 1e-12);

struct JohnResult {
  AffineCert cert;
  ConvexBody body;  // T(K), reference point at the origin
};

// Affine map T with Bⁿ ⊆ T(K) ⊆ nBⁿ, verified. Throws Error naming the
// violating direction if verification fails.
JohnResult john_normalize(const ConvexBody& K);

// Sandwich checks used by john_normalize, exposed for tests.
double inner_radius_about_origin(const ConvexBody& K, int grid);
double outer_radius_about_origin(const ConvexBody& K, int grid);

}  // namespace covfun
