#pragma once

#include "covfun/body.hpp"

#include <array>
#include <cstdint>

namespace covfun {

// Points x_i on the sphere of radius n whose caps (θBⁿ + x_i) ∩ ∂(nBⁿ)
// cover it. θ′ = 2·arcsin(θ/(2n)) is the angular cap radius.
struct CapCover {
  int n = 0;
  double theta = 0.0;
  double theta_prime = 0.0;
  Points points;
  int count = 0;
  // Largest angle from a sampled direction to its nearest point (exact in
  // 2-D), and the sample size used.
  double measured_angle = 0.0;
  int sample_count = 0;
  // Böröczky–Wintsche style count c·n^(3/2)·cos θ′·sin^(−n) θ′·log(2 + n cos²θ′)
  // with c = 1, for comparison only.
  double reference_count = 0.0;
};

// 2-D: ⌈2π/θ′⌉ equally spaced points. 3-D: a Fibonacci sphere grown until
// 10⁵ random directions are all within θ′/1.2 of a point. θ′ >= π returns a
// single point.
CapCover cap_cover(int n, double theta, std::uint64_t seed = 1);

// Largest angle from `samples` random directions to the nearest cap point.
double cap_cover_max_angle(const CapCover& caps, int samples, std::uint64_t seed);

// {(1/n)x + j(n−1)/(mn)·x : j = 0..m}; |x| must equal n.
Points radial_grid(const Vec& x, int n, int m);

struct FBound {
  double value = 0.0;
  double theta_prime = 0.0;
  // The five summands in printed order: s·tan(arccos((n−θ)/n²) + θ′),
  // −√(n² − s²), (n−1)/m, √((n − (n−1)/m)² − s²),
  // −s·tan(arccos(s/(n − (n−1)/m)) − θ′), with s = 1 − θ/n.
  std::array<double, 5> terms{};
  double asymptotic = 0.0;  // 2nθ + (n−1)/m
  double envelope = 0.0;    // 3n(θ + 1/m)
};

// Outer approximation error of the radial-grid polytope. Throws naming the
// offending term when an arccos, square root or tangent leaves its domain.
FBound f_bound(int n, int m, double theta);

struct NetParams {
  int n = 0;
  double beta = 0.0;
  double theta = 0.0;
  int m = 0;
  double f = 0.0;
  double ratio = 0.0;  // f/(1 − θ/n), at most β
};

// θ = β/(7n), m = ⌊7n/β⌋, with f/(1 − θ/n) <= β checked.
NetParams net_params(int n, double beta);

struct SnapResult {
  Polytope P;
  Points grid_points;          // p_i, one per cap point
  double inner_radius = 0.0;   // min distance from the origin to a facet of P
  double inner_target = 0.0;   // 1 − θ/n
  double sigma = 0.0;          // K ⊆ (1 + σ)P
  double sigma_bound = 0.0;    // f/(1 − θ/n)
  bool sigma_exact = false;    // from K's vertices rather than a direction grid
  double bm_log_bound = 0.0;   // log(1 + σ) >= ‖K, P‖
  NetParams params;
};

// For John-normalized K (Bⁿ ⊆ K ⊆ nBⁿ about the origin) picks the furthest
// radial grid point inside K on each cap ray and returns their hull with a
// checked sandwich (1 − θ/n)Bⁿ ⊆ P ⊆ K ⊆ (1 + σ)P.
SnapResult snap_to_net(const ConvexBody& K, const NetParams& params, const CapCover& caps);

// log10 of ⌊7n/β⌋^(c·14ⁿ·n^(2n+3)·β^(−n)), computed without forming the power.
double net_cardinality_log_bound(int n, double beta, double c = 1.0);

}  // namespace covfun
