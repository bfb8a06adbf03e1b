#pragma once

#include "covfun/cover.hpp"
#include "covfun/hexagon.hpp"

#include <cstdint>

namespace covfun {

// Eight translates of (2/3)K covering a cone K over a planar base D.
// With o the centre of an affine regular hexagon v1..v6 inscribed in D and
// m1..m6 the midpoints of its sides, the homothets are (2/3)K + (2/3)m_i
// about o for m0 = o, m1..m6 and m7 = the midpoint of o and the apex;
// centers are converted to the body's reference-point anchor.
struct ConeCover {
  CoverConfig config;
  AffineHexagon hexagon;  // in base-plane coordinates
  Points midpoints;       // m0..m7 in space
};
ConeCover cone_cover_thm1(const ConvexBody& cone);

// Translates of sqrt(2/3)·K_p covering the unit ℓp ball in R³: the six points
// ±(1/3)^(1/p) e_i for p < 2 and the eight points (±1/3, ±1/3, ±1/3) for
// p >= 2 (p = inf allowed).
CoverConfig lpball_cover_thm2(double p);

// The two scalar inequalities behind the p >= 2 case:
//   (2/3)^p + 2(1/3)^p <= (2/3)^(p/2)
//   3((1/3)^(1/p) − 1/3)^p <= (2/3)^(p/2)
// evaluated in log space (p = inf by limits).
struct Thm2Check {
  bool first = false;
  bool second = false;
  double log_gap_first = 0.0;   // log rhs − log lhs (>= 0 when it holds)
  double log_gap_second = 0.0;
  // Exact rational comparison of the first inequality for even integer p
  // (p <= 38): +1 strict, 0 equality, −1 violated; 2 when not applicable.
  int first_exact = 2;
};
Thm2Check thm2_inequalities(double p);

// Whether the boundary arc of D from x1 through x2 to x3 (counter-clockwise
// about the reference point) lies in ref + λ(D − ref) + y. Decided by the
// three points; 100 arc samples are spot-checked and a failure throws.
bool arc_covered(const ConvexBody& D, const Vec& x1, const Vec& x2, const Vec& x3,
                 double lambda, const Vec& y);

// Levi's covering number of a planar body: 4 for parallelograms, else 3.
int levi_c(const ConvexBody& D);

// ceil(C·(n ln n + n ln ln n + 5n)) with C = binom(2n, n), or 2ⁿ when
// symmetric.
std::int64_t rogers_zong_bound(int n, bool symmetric);

// log(1 + (1 − c)/2): the Banach–Mazur radius that keeps γ within (1 − c)/2.
double beta_for_gap(double c);

// Cover of K′ ⊇ K with K′ ⊆ ref + (1+ε)(K − ref), obtained from a cover of
// K: ratio (1+ε)r and centers (1+ε)x_i.
CoverConfig transfer_config(const CoverConfig& cfg, double eps);

}  // namespace covfun
