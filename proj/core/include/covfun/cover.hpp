#pragma once

#include "covfun/body.hpp"

#include <optional>

namespace covfun {

// m translates of the homothet ref + r(K − ref).
struct CoverConfig {
  double r = 1.0;
  Points centers;
};

enum class Verdict { Covered, Uncovered, Unknown };
const char* to_string(Verdict v);

struct CoverOptions {
  int max_depth = 40;
  std::int64_t max_cells = 100000000;
  double margin = kCoverMargin;
  // Smooth bodies: largest accepted local outer-approximation factor δ of a
  // boundary patch (the patch is covered through (1+δ)-inflated vertices).
  double max_inflation = 1e-3;
  // Keep searching after the first witness until this many have been
  // collected (the first one found is reported as the witness).
  int max_witnesses = 1;
};

struct CoverCertificate {
  Verdict verdict = Verdict::Unknown;
  std::optional<Vec> witness;
  Points extra_witnesses;  // further witnesses when max_witnesses > 1
  std::int64_t cells_examined = 0;
  int max_depth = 0;       // depth limit used
  int depth_reached = 0;
  double margin = kCoverMargin;
  std::int64_t unresolved_cells = 0;
  double max_inflation_used = 0.0;
  std::int64_t boundary_patches = 0;
  bool trivial = false;
};

// min_i gauge(p − x_i): p is covered iff this is <= r.
double cover_value(const ConvexBody& K, const Points& centers, const Vec& p);

// Sound three-valued verification of K ⊆ ∪ (ref + r(K − ref) + x_i).
// Polytopes: fan triangulation from the reference point, refined by
// longest-edge bisection until each simplex has all vertices strictly inside
// a single translate (gauge <= r − margin). Other bodies: the boundary is cut
// into angular patches around the reference point; each patch is enclosed by
// the inner simplex on its boundary points plus a slab bounded by the exact
// supporting hyperplane, and patches are refined until the slab is thin and
// fits one translate. A point of K with min gauge >= r + margin is returned
// as an Uncovered witness.
CoverCertificate verify_cover(const ConvexBody& K, const CoverConfig& cfg,
                              const CoverOptions& opt = {});

// The r = 1 single-translate cover of K by itself.
CoverCertificate trivial_certificate();
CoverConfig trivial_config(const ConvexBody& K, int m);

}  // namespace covfun
