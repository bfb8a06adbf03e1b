#include "covfun/cover.hpp"
#include "covfun/constructions.hpp"
#include "covfun/sampling.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

using namespace covfun;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

CoverConfig quadrants(double r) {
  CoverConfig cfg;
  cfg.r = r;
  for (double x : {0.5, -0.5})
    for (double y : {0.5, -0.5}) cfg.centers.push_back(make_vec({x, y}));
  return cfg;
}

CoverConfig octahedron_centers(double r) {
  CoverConfig cfg;
  cfg.r = r;
  for (int i = 0; i < 3; ++i)
    for (double s : {1.0, -1.0}) {
      Vec x = Vec::Zero(3);
      x[i] = s / 3.0;
      cfg.centers.push_back(x);
    }
  return cfg;
}

// Independent per-point check: min_i gauge(p − x_i) computed directly.
double min_gauge(const ConvexBody& K, const CoverConfig& cfg, const Vec& p) {
  double best = kInf;
  for (const Vec& x : cfg.centers) best = std::min(best, K.gauge(p - x));
  return best;
}

}  // namespace

TEST(Cover, SquareQuadrants) {
  const ConvexBody S = ConvexBody::lp_ball(kInf, 2);
  EXPECT_EQ(verify_cover(S, quadrants(0.5 + 1e-6)).verdict, Verdict::Covered);

  CoverOptions exact;
  exact.margin = 0.0;
  EXPECT_EQ(verify_cover(S, quadrants(0.5), exact).verdict, Verdict::Covered);

  CoverCertificate c = verify_cover(S, quadrants(0.49));
  ASSERT_EQ(c.verdict, Verdict::Uncovered);
  ASSERT_TRUE(c.witness);
  EXPECT_TRUE(S.contains(*c.witness));
  EXPECT_GT(min_gauge(S, quadrants(0.49), *c.witness), 0.49);
}

TEST(Cover, OctahedronSixCenters) {
  const ConvexBody K1 = ConvexBody::lp_ball(1, 3);
  CoverOptions opt;
  opt.margin = 1e-10;
  opt.max_depth = 200;
  CoverCertificate c = verify_cover(K1, octahedron_centers(2.0 / 3.0 + 1e-9), opt);
  EXPECT_EQ(c.verdict, Verdict::Covered);
  // Per-point argument: ‖p − sign(p_j)e_j/3‖₁ <= 2/3 at the largest coordinate j.
  Rng rng(3);
  for (const Vec& p : random_points(K1, 5000, rng))
    EXPECT_LE(min_gauge(K1, octahedron_centers(2.0 / 3.0), p), 2.0 / 3.0 + 1e-12);
}

TEST(Cover, BallEightCentersUsesInflation) {
  const ConvexBody B = ConvexBody::lp_ball(2, 3);
  CoverConfig cfg = lpball_cover_thm2(2.0);
  cfg.r = std::sqrt(2.0 / 3.0) + 1e-4;
  CoverCertificate c = verify_cover(B, cfg);
  EXPECT_EQ(c.verdict, Verdict::Covered);
  EXPECT_LE(c.max_inflation_used, 1e-3);
  cfg.r = 0.5;
  CoverCertificate u = verify_cover(B, cfg);
  ASSERT_EQ(u.verdict, Verdict::Uncovered);
  EXPECT_GT(min_gauge(B, cfg, *u.witness), 0.5);
}

TEST(Cover, DepthZeroIsInconclusiveNearTheThreshold) {
  CoverOptions opt;
  opt.max_depth = 0;
  CoverCertificate c = verify_cover(ConvexBody::lp_ball(kInf, 2), quadrants(0.5 + 1e-6), opt);
  EXPECT_NE(c.verdict, Verdict::Uncovered);
}

TEST(Cover, RandomConfigurationsAreSound) {
  Rng rng(17);
  Points verts;
  for (int i = 0; i < 9; ++i) verts.push_back(random_direction(2, rng) * (0.6 + 0.4 * std::uniform_real_distribution<>(0, 1)(rng)));
  const ConvexBody K = ConvexBody::vpolytope(verts).with_reference(Vec::Zero(2));
  Points sample = random_points(K, 20000, rng);
  int covered = 0, uncovered = 0;
  for (int trial = 0; trial < 30; ++trial) {
    CoverConfig cfg;
    cfg.r = 0.45 + 0.018 * trial;
    for (int i = 0; i < 5; ++i) cfg.centers.push_back(0.6 * random_point(K, rng));
    CoverCertificate c = verify_cover(K, cfg);
    if (c.verdict == Verdict::Covered) {
      ++covered;
      for (const Vec& p : sample) ASSERT_LE(min_gauge(K, cfg, p), cfg.r + 1e-9);
    } else if (c.verdict == Verdict::Uncovered) {
      ++uncovered;
      ASSERT_TRUE(c.witness);
      EXPECT_TRUE(K.contains(*c.witness, 1e-9));
      EXPECT_GT(min_gauge(K, cfg, *c.witness), cfg.r);
    }
  }
  EXPECT_GT(uncovered, 0);
  EXPECT_GT(covered + uncovered, 20);
}

TEST(Cover, CoverValueMatchesDirectMinimum) {
  const ConvexBody S = ConvexBody::lp_ball(kInf, 2);
  CoverConfig cfg = quadrants(0.5);
  EXPECT_NEAR(cover_value(S, cfg.centers, Vec::Zero(2)), 0.5, 1e-12);
  EXPECT_NEAR(cover_value(S, cfg.centers, make_vec({0.2, 0.9})), min_gauge(S, cfg, make_vec({0.2, 0.9})), 1e-12);
}

TEST(Cover, TrivialConfigAndValidation) {
  const ConvexBody S = ConvexBody::lp_ball(kInf, 2);
  CoverConfig t = trivial_config(S, 3);
  EXPECT_EQ(t.r, 1.0);
  EXPECT_EQ(t.centers.size(), 3u);
  EXPECT_EQ(trivial_certificate().verdict, Verdict::Covered);
  EXPECT_TRUE(trivial_certificate().trivial);
  EXPECT_THROW(verify_cover(S, CoverConfig{0.5, {}}), Error);
  EXPECT_THROW(verify_cover(S, CoverConfig{1.5, {Vec::Zero(2)}}), Error);
  EXPECT_THROW(verify_cover(S, CoverConfig{0.5, {Vec::Zero(3)}}), Error);
  EXPECT_THROW(verify_cover(S, CoverConfig{0.0, {Vec::Zero(2)}}), Error);
}

TEST(Cover, WitnessesAreDistinctWhenRequested) {
  CoverOptions opt;
  opt.max_witnesses = 4;
  CoverCertificate c = verify_cover(ConvexBody::lp_ball(kInf, 2), quadrants(0.3), opt);
  ASSERT_EQ(c.verdict, Verdict::Uncovered);
  const ConvexBody S = ConvexBody::lp_ball(kInf, 2);
  for (const Vec& w : c.extra_witnesses) EXPECT_GT(min_gauge(S, quadrants(0.3), w), 0.3);
}
