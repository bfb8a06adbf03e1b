#include "covfun/cli/bodies.hpp"

#include "covfun/io.hpp"
#include "covfun/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numbers>

namespace covfun::cli {

ConvexBody regular_polygon(int k, double radius) {
  Points v;
  for (int i = 0; i < k; ++i) {
    double a = 2.0 * std::numbers::pi * i / k + std::numbers::pi / 2;
    v.push_back(make_vec({radius * std::cos(a), radius * std::sin(a)}));
  }
  return ConvexBody::vpolytope(v);
}

ConvexBody regular_tetrahedron() {
  return ConvexBody::vpolytope({make_vec({1, 1, 1}), make_vec({1, -1, -1}), make_vec({-1, 1, -1}),
                                make_vec({-1, -1, 1})});
}

ConvexBody cone_over(const ConvexBody& base, double height) {
  Vec apex = Vec::Zero(3);
  apex.head(2) = base.reference();
  apex[2] = height;
  return ConvexBody::cone(base, apex);
}

ConvexBody random_polygon(int vertices, std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi), radius(0.6, 1.0);
  std::vector<double> a(vertices);
  for (double& x : a) x = angle(rng);
  std::sort(a.begin(), a.end());
  Points v;
  for (double x : a) {
    double r = radius(rng);
    v.push_back(make_vec({r * std::cos(x), r * std::sin(x)}));
  }
  return ConvexBody::vpolytope(v);
}

std::vector<NamedBody> planar_battery() {
  std::vector<NamedBody> out = {
      {"triangle", regular_polygon(3)},
      {"square", ConvexBody::lp_ball(std::numeric_limits<double>::infinity(), 2)},
      {"disc", ConvexBody::lp_ball(2.0, 2)},
      {"hexagon", regular_polygon(6)},
  };
  for (int i = 0; i < 6; ++i)
    out.push_back({"polygon" + std::to_string(i + 1), random_polygon(5 + i % 4, 1000 + i)});
  return out;
}

std::vector<NamedBody> space_battery() {
  return {
      {"K1", ConvexBody::lp_ball(1.0, 3)},
      {"K2", ConvexBody::lp_ball(2.0, 3)},
      {"K4", ConvexBody::lp_ball(4.0, 3)},
      {"cube", ConvexBody::lp_ball(std::numeric_limits<double>::infinity(), 3)},
      {"tetrahedron", regular_tetrahedron()},
      {"square_cone", cone_over(ConvexBody::lp_ball(std::numeric_limits<double>::infinity(), 2))},
  };
}

std::vector<BodyFile> load_body_dir(const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw IoError("not a directory: " + dir);
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  std::vector<BodyFile> out;
  for (const auto& path : files) {
    BodyFile f;
    f.name = path.stem().string();
    try {
      f.body = load_body(path.string());
    } catch (const Error& e) {
      f.error = e.what();
    }
    out.push_back(std::move(f));
  }
  return out;
}

void write_body_dir(const std::string& dir, const std::vector<NamedBody>& bodies) {
  std::filesystem::create_directories(dir);
  for (const auto& b : bodies)
    write_text_file((std::filesystem::path(dir) / (b.name + ".json")).string(),
                    body_to_json(b.body).dump(2) + "\n");
}

}  // namespace covfun::cli
