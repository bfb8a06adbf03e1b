#include "covfun/betanet.hpp"
#include "covfun/john.hpp"
#include "covfun/sampling.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace covfun;

namespace {

double angle(const Vec& a, const Vec& b) {
  return std::acos(std::clamp(a.dot(b) / (a.norm() * b.norm()), -1.0, 1.0));
}

// Brute-force nearest cap point over a random sample of directions.
double brute_max_angle(const CapCover& caps, int samples, std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    Vec u = random_direction(caps.n, rng);
    double best = 10.0;
    for (const Vec& p : caps.points) best = std::min(best, angle(u, p));
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

TEST(Betanet, CapCoverCircle) {
  CapCover c = cap_cover(2, 0.5);
  const double tp = 2 * std::asin(0.5 / 4);
  EXPECT_NEAR(c.theta_prime, tp, 1e-15);
  EXPECT_EQ(c.count, static_cast<int>(c.points.size()));
  for (const Vec& p : c.points) EXPECT_NEAR(p.norm(), 2.0, 1e-12);
  EXPECT_LE(brute_max_angle(c, 2000, 3), tp);
}

TEST(Betanet, CapCoverSphere) {
  CapCover c = cap_cover(3, 0.3, 5);
  const double tp = 2 * std::asin(0.3 / 6);
  for (const Vec& p : c.points) EXPECT_NEAR(p.norm(), 3.0, 1e-12);
  EXPECT_LE(brute_max_angle(c, 3000, 9), tp);
  EXPECT_LE(cap_cover_max_angle(c, 20000, 2), tp);
  EXPECT_GE(c.count, static_cast<int>(std::ceil(4.0 / (tp * tp))) / 2);
}

TEST(Betanet, CapCoverHugeThetaIsOnePoint) {
  EXPECT_EQ(cap_cover(3, 6.0).count, 1);
  EXPECT_THROW(cap_cover(3, 0.0), Error);
}

TEST(Betanet, RadialGrid) {
  const Vec x = make_vec({0, 0, 3});
  Points g = radial_grid(x, 3, 4);
  // From x/n on the unit sphere out to x itself in m equal steps.
  ASSERT_EQ(g.size(), 5u);
  for (int j = 0; j <= 4; ++j) EXPECT_NEAR(g[j][2], 1.0 + 0.5 * j, 1e-12);
  EXPECT_THROW(radial_grid(make_vec({0, 0, 2}), 3, 4), Error);
}

TEST(Betanet, FBoundAndParams) {
  NetParams p = net_params(3, 0.1);
  EXPECT_NEAR(p.theta, 0.1 / 21, 1e-15);
  EXPECT_EQ(p.m, 210);
  EXPECT_LE(p.ratio, 0.1);
  FBound f = f_bound(3, 210, 0.1 / 21);
  EXPECT_DOUBLE_EQ(f.value, p.f);
  // Sum of the five terms.
  double sum = 0;
  for (double t : f.terms) sum += t;
  EXPECT_NEAR(sum, f.value, 1e-12);
  EXPECT_LE(f.value, f.envelope);

  FBound small = f_bound(3, 100000, 1e-4);
  EXPECT_LT(small.value / (1 - 1e-4 / 3), 1e-3);
}

TEST(Betanet, FBoundAsymptotics) {
  FBound f = f_bound(3, 10000, 0.001);
  EXPECT_NEAR(f.value, f.asymptotic, 0.05 * f.asymptotic);
  EXPECT_NEAR(f.asymptotic, 2 * 3 * 0.001 + 2.0 / 10000, 1e-15);
}

TEST(Betanet, CardinalityLogBound) {
  // Exponent c·14³·3⁹·10³ is the integer 54010152000.
  const long double exact = 54010152000.0L * std::log10(210.0L);
  const double got = net_cardinality_log_bound(3, 0.1, 1.0);
  EXPECT_LT(std::abs(got - static_cast<double>(exact)) / static_cast<double>(exact), 5e-7);
  EXPECT_THROW(net_cardinality_log_bound(3, 0.1, 0.0), Error);
}

TEST(Betanet, SnapRandomPolytope) {
  const NetParams params = net_params(3, 0.5);
  const CapCover caps = cap_cover(3, params.theta, 1);
  Rng rng(4);
  for (int trial = 0; trial < 3; ++trial) {
    Points pts;
    for (int i = 0; i < 12; ++i) {
      Vec p(3);
      for (int k = 0; k < 3; ++k) p[k] = std::normal_distribution<>(0, 1)(rng);
      pts.push_back(p);
    }
    const ConvexBody K = john_normalize(ConvexBody::vpolytope(pts)).body;
    SnapResult s = snap_to_net(K, params, caps);
    EXPECT_LE(s.bm_log_bound, 0.5);
    EXPECT_NEAR(s.bm_log_bound, std::log1p(s.sigma), 1e-15);
    // P ⊆ K
    for (const Vec& v : s.P.vertices) EXPECT_TRUE(K.contains(v, 1e-9));
    // K ⊆ (1 + σ)P, checked on K's vertices.
    for (const Vec& v : K.polytope().vertices) EXPECT_LE(s.P.max_violation(v / (1 + s.sigma)), 1e-9);
    // The unit ball shrunk by θ/n sits inside P.
    for (double b : s.P.offsets) EXPECT_GE(b, 1 - params.theta / 3 - 1e-9);
  }
}

TEST(Betanet, SnapRejectsUnnormalizedBody) {
  const NetParams params = net_params(3, 0.5);
  const CapCover caps = cap_cover(3, 0.3, 1);
  EXPECT_THROW(snap_to_net(ConvexBody::lp_ball(2, 2), params, caps), Error);
  Mat big = 10.0 * Mat::Identity(3, 3);
  EXPECT_THROW(snap_to_net(transform(ConvexBody::lp_ball(2, 3), big, Vec::Zero(3)), params, caps), Error);
}
