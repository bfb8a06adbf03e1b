#pragma once

#include "covfun/cover.hpp"

#include <optional>
#include <string>

namespace covfun::cli {

// Boundary of a planar body as a counter-clockwise polygon (exact vertices
// for polytopes, 720 ray samples otherwise).
Points planar_outline(const ConvexBody& K);

// Planar section of a 3-D body by the plane z = level, in (x, y)
// coordinates; empty when the plane misses the interior.
Points section_outline(const ConvexBody& K, double level);

// 800×800 SVG of the body, its translates ref + r(K − ref) + x_i and an
// optional witness (red marker). 3-D bodies need a slice level.
std::string render_svg(const ConvexBody& K, const CoverConfig& cfg,
                       const std::optional<Vec>& witness,
                       std::optional<double> slice_z);

}  // namespace covfun::cli
