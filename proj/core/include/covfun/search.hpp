#pragma once

#include "covfun/cover.hpp"

namespace covfun {

struct SearchResult {
  double r_upper = 1.0;
  CoverConfig config;
  CoverCertificate certificate;
  double volume_floor = 0.0;
  int m = 0;
  double sample_value = 1.0;  // max over the final sample of min_i gauge
  int verify_calls = 0;
  int starts_run = 0;
  bool from_seed = false;     // r_upper is the seeded (m−1)-center bound
  double elapsed = 0.0;
};

struct SearchOptions {
  CoverOptions verify;
  // Cell cap for each certification call; certification retries with a
  // looser ratio when a call runs out.
  std::int64_t verify_cells = 3000000;
  // Tightening stops once the certified ratio is within this of the sample
  // lower estimate.
  double tolerance = 1e-4;
  // Optional (m−1)-center result; its centers plus a duplicate form a
  // Covered m-center configuration, so the result never exceeds it.
  const SearchResult* seed = nullptr;
};

// (1/m)^(1/dim): m translates of rK have volume m·rⁿ·vol(K).
double volume_lower_bound(const ConvexBody& K, int m);

// Verified upper bound on the smallest r such that m translates of
// ref + r(K − ref) cover K. Placement: multi-start Adam on a log-sum-exp
// smoothing of the sampled minimax objective, then Lloyd-style refinement
// with exact per-cluster minimax centers (linear programs on polytopes,
// smallest enclosing balls on the Euclidean ball). Each candidate is
// certified by verify_cover; Uncovered witnesses are fed back into the
// sample and the placement is re-polished. The certified ratio is then
// tightened by bisection.
SearchResult gamma_upper(const ConvexBody& K, int m, const SearchBudget& budget,
                         const SearchOptions& opt = {});

// gamma_upper for m = 1..m_max, each seeded with its predecessor, so the
// bounds are non-increasing in m.
std::vector<SearchResult> gamma_chain(const ConvexBody& K, int m_max,
                                      const SearchBudget& budget,
                                      const SearchOptions& opt = {});

}  // namespace covfun
