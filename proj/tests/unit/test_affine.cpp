#include "covfun/banach_mazur.hpp"
#include "covfun/hexagon.hpp"
#include "covfun/john.hpp"
#include "covfun/sampling.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>

using namespace covfun;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

// Direct sandwich check B ⊆ K ⊆ nB on a direction grid: support >= 1 and
// boundary points within radius n.
void expect_john_position(const ConvexBody& K, int n) {
  double hmin = kInf, rmax = 0.0;
  for (const Vec& u : direction_grid(n, n == 2 ? 2048 : 4000)) {
    hmin = std::min(hmin, K.support(u));
    rmax = std::max(rmax, K.support_point(u).norm());
  }
  EXPECT_GE(hmin, 1.0 - 1e-7);
  EXPECT_LE(rmax, n + 1e-7);
}

ConvexBody regular_polygon(int k) {
  Points v;
  for (int i = 0; i < k; ++i) {
    double a = 2 * std::numbers::pi * i / k;
    v.push_back(make_vec({std::cos(a), std::sin(a)}));
  }
  return ConvexBody::vpolytope(v);
}

void expect_affine_regular(const AffineHexagon& H, const ConvexBody& D) {
  EXPECT_LT(H.boundary_residual, 1e-7);
  EXPECT_LT(H.symmetry_residual, 1e-7);
  for (int i = 0; i < 6; ++i) {
    EXPECT_NEAR(D.gauge(H.vertices[i]), 1.0, 1e-7);
    // Affine image of a regular hexagon: v_{i+1} − o = (v_i − o) + (v_{i+2} − o).
    Vec lhs = H.vertices[(i + 1) % 6] - H.center;
    Vec rhs = H.vertices[i] - H.center + H.vertices[(i + 2) % 6] - H.center;
    EXPECT_LT((lhs - rhs).norm(), 1e-6);
  }
}

}  // namespace

TEST(John, ShiftedBallBecomesUnitBall) {
  Mat A = 5.0 * Mat::Identity(3, 3);
  const ConvexBody K = transform(ConvexBody::lp_ball(2, 3), A, make_vec({1, 2, 3}));
  JohnResult j = john_normalize(K);
  for (const Vec& u : direction_grid(3, 200)) EXPECT_NEAR(j.body.support(u), 1.0, 1e-5);
  expect_john_position(j.body, 3);
}

TEST(John, SquareAndTetrahedron) {
  expect_john_position(john_normalize(ConvexBody::lp_ball(kInf, 2)).body, 2);
  Points t = {make_vec({1, 1, 1}), make_vec({1, -1, -1}), make_vec({-1, 1, -1}), make_vec({-1, -1, 1})};
  JohnResult j = john_normalize(ConvexBody::vpolytope(t));
  expect_john_position(j.body, 3);
  EXPECT_TRUE(j.cert.verified_inner);
  EXPECT_TRUE(j.cert.verified_outer);
}

TEST(John, RandomPolygonsAndPolytopes) {
  Rng rng(21);
  for (int trial = 0; trial < 5; ++trial) {
    const int n = 2 + trial % 2;
    Points pts;
    for (int i = 0; i < 15; ++i) {
      Vec p(n);
      for (int k = 0; k < n; ++k) p[k] = std::normal_distribution<>(0, 1 + k)(rng);
      pts.push_back(p);
    }
    expect_john_position(john_normalize(ConvexBody::vpolytope(pts)).body, n);
  }
}

TEST(John, LownerEllipsoidOfSquareVertices) {
  Points v = {make_vec({1, 1}), make_vec({1, -1}), make_vec({-1, 1}), make_vec({-1, -1})};
  Ellipsoid E = lowner_ellipsoid(v);
  EXPECT_LT(E.center.norm(), 1e-6);
  // The circle of radius √2: every vertex lies on its boundary.
  Vec probe = make_vec({std::sqrt(2.0), 0});
  for (const Vec& p : v) {
    double a = p.dot(E.shape * p);
    double b = probe.dot(E.shape * probe);
    EXPECT_NEAR(a, b, 1e-4);
  }
}

TEST(BanachMazur, IdentityAndAffineImage) {
  SearchBudget budget;
  budget.max_time = 10;
  const ConvexBody K = regular_polygon(5);
  EXPECT_LE(bm_distance_upper(K, K, budget).distance, 1e-6);
  Mat A(2, 2);
  A << 1.3, 0.4, -0.2, 0.7;
  EXPECT_LE(bm_distance_upper(K, transform(K, A, make_vec({2, -1})), budget).distance, 1e-4);
}

TEST(BanachMazur, DiscAndSquare) {
  SearchBudget budget;
  budget.max_time = 10;
  BmResult r = bm_distance_upper(ConvexBody::lp_ball(2, 2), ConvexBody::lp_ball(kInf, 2), budget);
  EXPECT_NEAR(r.distance, std::log(std::sqrt(2.0)), 0.01);
  // An upper bound can never beat the classical optimum.
  EXPECT_GE(r.distance, std::log(std::sqrt(2.0)) - 1e-6);
}

TEST(Hexagon, RegularHexagonDiscAndSquare) {
  const ConvexBody hex = regular_polygon(6);
  AffineHexagon h = inscribe_affine_hexagon(hex);
  expect_affine_regular(h, hex);
  for (const Vec& v : h.vertices) EXPECT_NEAR(v.norm(), 1.0, 1e-7);

  const ConvexBody disc = ConvexBody::lp_ball(2, 2);
  AffineHexagon d = inscribe_affine_hexagon(disc);
  expect_affine_regular(d, disc);
  for (int i = 0; i < 6; ++i) EXPECT_NEAR((d.vertices[(i + 1) % 6] - d.vertices[i]).norm(), 1.0, 1e-6);

  const ConvexBody square = ConvexBody::lp_ball(kInf, 2);
  expect_affine_regular(inscribe_affine_hexagon(square), square);
}

TEST(Hexagon, RejectsSpaceBodies) {
  EXPECT_THROW(inscribe_affine_hexagon(ConvexBody::lp_ball(2, 3)), Error);
}
