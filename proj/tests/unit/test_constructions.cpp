#include "covfun/constructions.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>

using namespace covfun;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

ConvexBody regular_polygon(int k) {
  Points v;
  for (int i = 0; i < k; ++i) {
    double a = 2 * std::numbers::pi * i / k;
    v.push_back(make_vec({std::cos(a), std::sin(a)}));
  }
  return ConvexBody::vpolytope(v);
}

}  // namespace

TEST(Constructions, HexagonConeEightCenters) {
  const ConvexBody C = ConvexBody::cone(regular_polygon(6), make_vec({0, 0, 1}));
  ConeCover cc = cone_cover_thm1(C);
  EXPECT_EQ(cc.config.centers.size(), 8u);
  CoverConfig cfg = cc.config;
  cfg.r = 2.0 / 3.0 + 1e-6;
  CoverOptions opt;
  opt.max_depth = 100;
  EXPECT_EQ(verify_cover(C, cfg, opt).verdict, Verdict::Covered);
}

TEST(Constructions, ConeCoverNeedsACone) {
  EXPECT_THROW(cone_cover_thm1(ConvexBody::lp_ball(2, 3)), Error);
}

TEST(Constructions, LpBallCenters) {
  EXPECT_EQ(lpball_cover_thm2(1.0).centers.size(), 6u);
  EXPECT_EQ(lpball_cover_thm2(2.0).centers.size(), 8u);
  EXPECT_EQ(lpball_cover_thm2(kInf).centers.size(), 8u);
  for (const Vec& x : lpball_cover_thm2(1.0).centers) EXPECT_NEAR(x.lpNorm<1>(), 1.0 / 3.0, 1e-15);
  for (const Vec& x : lpball_cover_thm2(2.0).centers) EXPECT_NEAR(x.lpNorm<Eigen::Infinity>(), 1.0 / 3.0, 1e-15);
  EXPECT_THROW(lpball_cover_thm2(0.5), Error);
}

TEST(Constructions, CubeOctants) {
  const ConvexBody cube = ConvexBody::lp_ball(kInf, 3);
  CoverConfig cfg = lpball_cover_thm2(kInf);
  cfg.r = std::sqrt(2.0 / 3.0);
  EXPECT_EQ(verify_cover(cube, cfg).verdict, Verdict::Covered);
  CoverConfig oct;
  oct.r = 0.5 + 1e-6;
  for (int s = 0; s < 8; ++s)
    oct.centers.push_back(make_vec({s & 1 ? 0.5 : -0.5, s & 2 ? 0.5 : -0.5, s & 4 ? 0.5 : -0.5}));
  EXPECT_EQ(verify_cover(cube, oct).verdict, Verdict::Covered);
}

TEST(Constructions, ScalarInequalities) {
  Thm2Check two = thm2_inequalities(2.0);
  EXPECT_TRUE(two.first);
  EXPECT_EQ(two.first_exact, 0);  // 4/9 + 2/9 = 2/3 exactly
  EXPECT_TRUE(two.second);
  // Direct evaluation at p = 4: (2/3)^4 + 2(1/3)^4 = 18/81 <= 4/9, and
  // 3((1/3)^(1/4) − 1/3)^4 <= 4/9.
  Thm2Check four = thm2_inequalities(4.0);
  EXPECT_TRUE(four.first);
  EXPECT_TRUE(four.second);
  EXPECT_LE(std::pow(2.0 / 3, 4) + 2 * std::pow(1.0 / 3, 4), 4.0 / 9);
  EXPECT_LE(3 * std::pow(std::pow(1.0 / 3, 0.25) - 1.0 / 3, 4), 4.0 / 9);
  Thm2Check inf = thm2_inequalities(kInf);
  EXPECT_TRUE(inf.first);
  EXPECT_TRUE(inf.second);
  EXPECT_THROW(thm2_inequalities(1.5), Error);
}

TEST(Constructions, ArcCovered) {
  const ConvexBody disc = ConvexBody::lp_ball(2, 2);
  auto at = [](double deg) {
    double a = deg * std::numbers::pi / 180;
    return make_vec({std::cos(a), std::sin(a)});
  };
  EXPECT_TRUE(arc_covered(disc, at(0), at(30), at(60), 0.9, 0.5 * at(30)));
  EXPECT_FALSE(arc_covered(disc, at(0), at(30), at(60), 0.1, Vec::Zero(2)));

  // (2/3)v₁, (2/3)v₂ ∈ (1/3)D + (2/3)m₁ is the same as v₁, v₂ ∈ (1/2)D + m₁.
  const ConvexBody hex = regular_polygon(6);
  const Vec v1 = at(0), v2 = at(60), m1 = 0.5 * (v1 + v2);
  EXPECT_TRUE(arc_covered(hex, v1, m1, v2, 0.5, m1));
  EXPECT_THROW(arc_covered(hex, v2, m1, v1, 0.5, m1), Error);
}

TEST(Constructions, LeviClassification) {
  EXPECT_EQ(levi_c(ConvexBody::lp_ball(kInf, 2)), 4);
  Mat A(2, 2);
  A << 1, 0.6, 0, 0.8;
  EXPECT_EQ(levi_c(transform(ConvexBody::lp_ball(kInf, 2), A, make_vec({1, 1}))), 4);
  EXPECT_EQ(levi_c(regular_polygon(3)), 3);
  EXPECT_EQ(levi_c(regular_polygon(6)), 3);
  EXPECT_EQ(levi_c(ConvexBody::lp_ball(2, 2)), 3);
}

TEST(Constructions, RogersZongBound) {
  auto formula = [](int n, double binom) {
    return static_cast<std::int64_t>(std::ceil(binom * (n * std::log(n) + n * std::log(std::log(n)) + 5 * n)));
  };
  EXPECT_EQ(rogers_zong_bound(3, false), formula(3, 20));
  EXPECT_EQ(rogers_zong_bound(3, false), 372);
  EXPECT_EQ(rogers_zong_bound(3, true), formula(3, 8));
  EXPECT_EQ(rogers_zong_bound(3, true), 149);
  EXPECT_LT(rogers_zong_bound(2, false), rogers_zong_bound(3, false));
}

TEST(Constructions, BetaForGap) {
  EXPECT_NEAR(beta_for_gap(std::sqrt(2.0 / 3.0)), std::log(1 + (1 - std::sqrt(2.0 / 3.0)) / 2), 1e-15);
  EXPECT_NEAR(beta_for_gap(0.5), std::log(1.25), 1e-15);
  EXPECT_LT(beta_for_gap(1.0 - 1e-9), 1e-9);
}

TEST(Constructions, TransferScalesRatioAndCenters) {
  CoverConfig cfg{0.5, {make_vec({0.5, 0.5}), make_vec({-0.5, 0.5})}};
  CoverConfig t = transfer_config(cfg, 0.1);
  EXPECT_NEAR(t.r, 0.55, 1e-15);
  EXPECT_NEAR(t.centers[0][0], 0.55, 1e-15);
  EXPECT_THROW(transfer_config(cfg, -0.1), Error);
}
