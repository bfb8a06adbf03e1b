#pragma once

#include "covfun/body.hpp"
#include "covfun/john.hpp"

namespace covfun {

// Verified sandwich K1 ⊆ map·K2 + shift ⊆ ratio·K1 + outer_shift, where
// ratio·K1 is the plain scaling of the point set K1.
struct BmResult {
  double distance = 0.0;  // log(ratio), clamped at 0
  double ratio = 1.0;
  Mat map;
  Vec shift;
  Vec outer_shift;
  AffineCert cert;  // map/shift with the verification flags
  int evaluations = 0;
  int starts = 0;
};

// Upper bound on the Banach–Mazur distance: both bodies are John-normalized,
// then the linear part is searched by Nelder–Mead from budget.starts seeded
// starts; for a fixed linear part the best scale and translations come from
// a linear program over facet (or direction-grid) support constraints. The
// returned sandwich is re-verified by gauge checks (exact on polytopes, a
// 10⁴-point boundary sample otherwise) and the ratio is inflated by any
// measured violation.
BmResult bm_distance_upper(const ConvexBody& K1, const ConvexBody& K2,
                           const SearchBudget& budget);

// max over p in A (vertices, or a boundary sample of the given size) of
// gauge_B(p) with B's reference point as anchor.
double containment_factor(const ConvexBody& A, const ConvexBody& B, int sample = 10000);

}  // namespace covfun
