#pragma once

#include "covfun/body.hpp"

#include <optional>
#include <string>

namespace covfun::cli {

struct NamedBody {
  std::string name;
  ConvexBody body;
};

ConvexBody regular_polygon(int k, double radius = 1.0);
ConvexBody regular_tetrahedron();
ConvexBody cone_over(const ConvexBody& base, double height = 1.0);
// Convex hull of `vertices` random points at sorted random angles, radii in
// [0.6, 1].
ConvexBody random_polygon(int vertices, std::uint64_t seed);

// Triangle, square, disc, regular hexagon and six random polygons.
std::vector<NamedBody> planar_battery();
// Octahedron K1, ball K2, ℓ4 ball K4, cube, regular tetrahedron and the
// cone over a square.
std::vector<NamedBody> space_battery();

// Body files of a directory (*.json, sorted by name); unreadable files are
// returned with an error instead of a body.
struct BodyFile {
  std::string name;
  std::optional<ConvexBody> body;
  std::string error;
};
std::vector<BodyFile> load_body_dir(const std::string& dir);
void write_body_dir(const std::string& dir, const std::vector<NamedBody>& bodies);

}  // namespace covfun::cli
