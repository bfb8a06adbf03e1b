#pragma once

#include "covfun/body.hpp"

namespace covfun {

struct DiameterResult {
  double value = 0.0;
  bool exact = false;
  double resolution = 0.0;  // angular grid spacing when not exact
};

struct Radii {
  double r = 0.0;       // insphere radius
  Vec in_center;
  double R = 0.0;       // circumsphere radius
  Vec circ_center;
  bool exact = false;
  double resolution = 0.0;
};

struct Ball {
  Vec center;
  double radius = -1.0;
};

DiameterResult diameter(const ConvexBody& K);
Radii euclidean_radii(const ConvexBody& K);
double volume(const ConvexBody& K);

// Smallest enclosing Euclidean ball (Welzl). Deterministic for a fixed seed.
Ball min_enclosing_ball(const Points& pts, std::uint64_t seed = 1);
// Largest ball inside {x : u·x <= h} over the given directions.
Ball max_inscribed_ball(const Points& dirs, const std::vector<double>& h);

}  // namespace covfun
