#include "covfun/search.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>

using namespace covfun;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

ConvexBody triangle() {
  Points v;
  for (int i = 0; i < 3; ++i) {
    double a = std::numbers::pi / 2 + 2 * std::numbers::pi * i / 3;
    v.push_back(make_vec({std::cos(a), std::sin(a)}));
  }
  return ConvexBody::vpolytope(v);
}

SearchBudget budget(double seconds) {
  SearchBudget b;
  b.max_time = seconds;
  b.seed = 1;
  return b;
}

// The reported configuration must re-verify on its own.
void expect_reverifies(const ConvexBody& K, const SearchResult& res) {
  if (res.certificate.trivial) return;
  CoverConfig cfg = res.config;
  cfg.r = res.r_upper;
  EXPECT_EQ(verify_cover(K, cfg).verdict, Verdict::Covered);
}

}  // namespace

TEST(Search, VolumeLowerBound) {
  const ConvexBody sq = ConvexBody::lp_ball(kInf, 2);
  EXPECT_NEAR(volume_lower_bound(sq, 4), 0.5, 1e-12);
  EXPECT_NEAR(volume_lower_bound(sq, 3), 1.0 / std::sqrt(3.0), 1e-12);
  EXPECT_NEAR(volume_lower_bound(ConvexBody::lp_ball(kInf, 3), 8), 0.5, 1e-12);
}

TEST(Search, SquareFourCenters) {
  const ConvexBody sq = ConvexBody::lp_ball(kInf, 2);
  SearchResult res = gamma_upper(sq, 4, budget(15));
  EXPECT_LE(res.r_upper, 0.5 + 1e-3);
  EXPECT_GE(res.r_upper, res.volume_floor - 1e-12);
  EXPECT_EQ(res.certificate.verdict, Verdict::Covered);
  expect_reverifies(sq, res);
}

TEST(Search, TriangleThreeCenters) {
  const ConvexBody T = triangle();
  SearchResult res = gamma_upper(T, 3, budget(15));
  EXPECT_LE(res.r_upper, 2.0 / 3.0 + 1e-3);
  expect_reverifies(T, res);
}

TEST(Search, AtMostDimensionCentersIsTrivial) {
  SearchResult res = gamma_upper(triangle(), 2, budget(5));
  EXPECT_DOUBLE_EQ(res.r_upper, 1.0);
  EXPECT_TRUE(res.certificate.trivial);
}

TEST(Search, ChainIsMonotone) {
  std::vector<SearchResult> chain = gamma_chain(ConvexBody::lp_ball(2, 2), 5, budget(4));
  ASSERT_GE(chain.size(), 2u);
  for (std::size_t i = 1; i < chain.size(); ++i) EXPECT_LE(chain[i].r_upper, chain[i - 1].r_upper + 1e-12);
}

TEST(Search, RejectsBadArguments) {
  EXPECT_THROW(gamma_upper(triangle(), 0, budget(1)), Error);
  SearchBudget b = budget(1);
  b.starts = 0;
  EXPECT_THROW(gamma_upper(triangle(), 4, b), Error);
}
