#include "covfun/borsuk.hpp"
#include "covfun/metrics.hpp"
#include "covfun/sampling.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

using namespace covfun;

namespace {

// Plain backtracking over colors in index order, no heuristics.
bool brute_colorable(const PointCloud& X, double threshold, int m) {
  const int n = static_cast<int>(X.points.size());
  std::vector<int> color(n, -1);
  auto conflict = [&](int a, int b) { return (X.points[a] - X.points[b]).norm() > threshold; };
  std::function<bool(int)> place = [&](int i) {
    if (i == n) return true;
    for (int c = 0; c < m; ++c) {
      bool ok = true;
      for (int j = 0; j < i && ok; ++j) ok = !(color[j] == c && conflict(i, j));
      if (!ok) continue;
      color[i] = c;
      if (place(i + 1)) return true;
      color[i] = -1;
      if (c > 0 && std::all_of(color.begin(), color.begin() + i, [&](int k) { return k < c; })) break;
    }
    return false;
  };
  return place(0);
}

PointCloud random_cloud(int count, int dim, Rng& rng) {
  PointCloud X;
  std::uniform_real_distribution<> u(-1, 1);
  for (int i = 0; i < count; ++i) {
    Vec p(dim);
    for (int k = 0; k < dim; ++k) p[k] = u(rng);
    X.points.push_back(p);
  }
  return X;
}

double part_diameter(const PointCloud& X, const std::vector<int>& assignment, int part) {
  double d = 0.0;
  for (std::size_t i = 0; i < X.points.size(); ++i)
    for (std::size_t j = i + 1; j < X.points.size(); ++j)
      if (assignment[i] == part && assignment[j] == part) d = std::max(d, (X.points[i] - X.points[j]).norm());
  return d;
}

}  // namespace

TEST(Borsuk, EquilateralTriangleNeedsThreeParts) {
  PointCloud X;
  for (int i = 0; i < 3; ++i) {
    double a = 2 * std::numbers::pi * i / 3;
    X.points.push_back(make_vec({std::cos(a), std::sin(a)}));
  }
  EXPECT_EQ(phi_upper(X, 2).r_ratio, 1.0);
  EXPECT_LT(phi_upper(X, 3).r_ratio, 1.0);
}

TEST(Borsuk, ColoringMatchesBruteForce) {
  Rng rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    const int count = 4 + trial % 14;
    PointCloud X = random_cloud(count, 2 + trial % 2, rng);
    const double d = cloud_diameter(X);
    const int m = 2 + trial % 3;
    const double r = 0.3 + 0.6 * std::uniform_real_distribution<>(0, 1)(rng);
    ColoringResult got = conflict_colorable(X, r, m, 1);
    ASSERT_TRUE(got.exact);
    EXPECT_EQ(got.colorable, brute_colorable(X, r * d, m)) << "trial " << trial;
    if (got.colorable) {
      ASSERT_TRUE(got.coloring);
      for (int i = 0; i < count; ++i)
        for (int j = i + 1; j < count; ++j)
          if ((*got.coloring)[i] == (*got.coloring)[j]) EXPECT_LE((X.points[i] - X.points[j]).norm(), r * d);
    }
  }
}

TEST(Borsuk, PartitionRespectsReportedRatio) {
  Rng rng(7);
  PointCloud X = random_cloud(40, 2, rng);
  PartitionResult res = phi_upper(X, 3);
  ASSERT_EQ(res.assignment.size(), X.points.size());
  for (int part = 1; part <= 3; ++part) EXPECT_LE(part_diameter(X, res.assignment, part), res.r_ratio * res.diameter + 1e-12);
  EXPECT_LT(res.r_ratio, 1.0);
}

TEST(Borsuk, ReuleauxTriangleThreeParts) {
  PointCloud X{boundary_sample(reuleaux_polygon(3), 200)};
  PartitionResult res = phi_upper(X, 3);
  EXPECT_LE(res.r_ratio, std::sqrt(3.0) / 2 + 0.01);
}

TEST(Borsuk, ReuleauxPolygonValidation) {
  EXPECT_THROW(reuleaux_polygon(4), Error);
  EXPECT_THROW(reuleaux_polygon(1), Error);
  EXPECT_NO_THROW(reuleaux_polygon(21));
}

TEST(Borsuk, ConstantWidthRadii) {
  for (int k : {3, 5, 7}) {
    RadiiCheck c = constant_width_radii_check(reuleaux_polygon(k), 2);
    EXPECT_TRUE(c.holds) << "k=" << k;
    EXPECT_NEAR(c.width_min, 1.0, 1e-4);
    EXPECT_NEAR(c.width_max, 1.0, 1e-4);
    EXPECT_NEAR(c.r + c.R, 1.0, 1e-6);  // insphere and circumsphere are concentric for constant width
  }
  RadiiCheck tri = constant_width_radii_check(reuleaux_polygon(3), 2);
  EXPECT_NEAR(tri.r, 1 - std::sqrt(2.0 / 6.0), 1e-6);
  EXPECT_NEAR(tri.R, std::sqrt(2.0 / 6.0), 1e-6);
  EXPECT_THROW(constant_width_radii_check(ConvexBody::lp_ball(std::numeric_limits<double>::infinity(), 2), 2), Error);
}

TEST(Borsuk, MuN) {
  EXPECT_NEAR(mu_n(3), (std::sqrt(24.0) + 3) / 5, 1e-15);
  EXPECT_NEAR(mu_n(3), 1.57980, 1e-5);
  EXPECT_NEAR(mu_n(2), (std::sqrt(12.0) + 2) / 4, 1e-15);
}

TEST(Borsuk, Hausdorff) {
  const double inf = std::numeric_limits<double>::infinity();
  EXPECT_NEAR(hausdorff_distance(ConvexBody::lp_ball(inf, 2), ConvexBody::lp_ball(2, 2)), std::sqrt(2.0) - 1, 1e-6);
  EXPECT_NEAR(hausdorff_distance(ConvexBody::lp_ball(2, 3), ConvexBody::lp_ball(2, 3)), 0.0, 1e-12);
  Mat twice = 2.0 * Mat::Identity(2, 2);
  EXPECT_NEAR(hausdorff_distance(ConvexBody::lp_ball(2, 2), transform(ConvexBody::lp_ball(2, 2), twice, Vec::Zero(2))), 1.0, 1e-6);
}
