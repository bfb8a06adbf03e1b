#pragma once

#include "covfun/body.hpp"

#include <optional>

namespace covfun {

struct PointCloud {
  Points points;
  int dim() const { return points.empty() ? 0 : static_cast<int>(points.front().size()); }
};

struct PartitionResult {
  std::vector<int> assignment;  // part index 1..m per point
  double r_ratio = 1.0;
  double diameter = 0.0;        // d(X)
  bool exact = false;           // every coloring decision was exhaustive
};

struct ColoringResult {
  bool colorable = false;
  bool exact = false;           // false: heuristic, and false means "not found"
  std::optional<std::vector<int>> coloring;  // colors 0..m−1 per point
};

// Largest pairwise distance of the cloud.
double cloud_diameter(const PointCloud& X);

// m-colorability of the graph joining points farther apart than r·d(X).
// Exhaustive when at most 25 vertices have an edge; DSATUR with 1000
// seeded random restarts otherwise.
ColoringResult conflict_colorable(const PointCloud& X, double r, int m,
                                  std::uint64_t seed = 1);

// Upper bound on φ_m of the cloud: the smallest pairwise-distance ratio r
// (or 0) at which the conflict graph is found m-colorable, by bisection
// over the sorted distinct distances.
PartitionResult phi_upper(const PointCloud& X, int m, const SearchBudget& budget = {});

// Width-1 Reuleaux polygon over a regular k-gon, k odd in [3, 21].
ConvexBody reuleaux_polygon(int k);

struct RadiiCheck {
  bool holds = false;
  double r = 0.0;
  double R = 0.0;
  double mu = 0.0;      // (√(2n²+2n) + n)/(n+2)
  double lower = 0.0;   // 1 − √(n/(2n+2))
  double upper = 0.0;   // √(n/(2n+2))
  double width_min = 0.0;
  double width_max = 0.0;
};

double mu_n(int n);

// For a body of constant width 1 (checked on a direction grid within
// 1e−4), whether 1 − √(n/(2n+2)) <= r <= R <= √(n/(2n+2)) holds with
// slack 1e−6.
RadiiCheck constant_width_radii_check(const ConvexBody& K, int n);

// max over a direction grid of |h_K1(u) − h_K2(u)|.
double hausdorff_distance(const ConvexBody& K1, const ConvexBody& K2, int grid = 0);

}  // namespace covfun
