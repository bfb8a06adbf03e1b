#pragma once

#include "covfun/hull.hpp"
#include "covfun/types.hpp"

#include <memory>

namespace covfun {

enum class BodyKind { VPolytope, HPolytope, LpBall, Cone, Affine, Reuleaux };

const char* to_string(BodyKind kind);

struct BodyData;

// Immutable convex body with an interior reference point. Gauges are taken
// relative to the reference point, which is also the anchor of every
// homothety rK + x used by the covering code:
//   p ∈ ref + r(K − ref) + x  ⟺  gauge(p − x) <= r.
// Copies share their geometry.
class ConvexBody {
 public:
  static ConvexBody vpolytope(const Points& vertices);
  static ConvexBody hpolytope(const Points& normals,
                              const std::vector<double>& offsets);
  // p in [1, inf]; pass std::numeric_limits<double>::infinity() for the cube.
  static ConvexBody lp_ball(double p, int dim);
  // Base is a 2-D body placed in the plane z = 0; apex must have z != 0.
  static ConvexBody cone(const ConvexBody& base, const Vec& apex);
  static ConvexBody affine(const Mat& matrix, const Vec& shift,
                           const ConvexBody& inner);
  // Width-1 Reuleaux polygon over a regular k-gon centred at the origin.
  static ConvexBody reuleaux(int k);

  BodyKind kind() const;
  int dim() const;
  const Vec& reference() const { return ref_; }
  ConvexBody with_reference(const Vec& ref) const;

  double gauge(const Vec& p) const;
  Vec gauge_gradient(const Vec& p) const;
  double support(const Vec& u) const;
  Vec support_point(const Vec& u) const;
  // Largest t with origin + t·dir in K; origin must be interior.
  double ray_exit(const Vec& origin, const Vec& dir) const;
  // The boundary point on the ray from the reference point along dir.
  Vec boundary_point(const Vec& dir) const;
  // Outward normal (unnormalized) at a boundary point.
  Vec normal_at(const Vec& q) const;
  bool contains(const Vec& p, double tol = kGeoTol) const;

  // True when the body is exactly a polytope (VPolytope, HPolytope, ℓ1/ℓ∞
  // balls, cones and affine images of polytopes).
  bool is_polytope() const;
  const Polytope& polytope() const;

  // Construction parameters, by kind. Each throws on a kind mismatch.
  const Points& vertices_input() const;
  const Points& normals_input() const;
  const std::vector<double>& offsets_input() const;
  double lp_exponent() const;
  const ConvexBody& cone_base() const;
  const Vec& cone_apex() const;
  const Mat& affine_matrix() const;
  const Vec& affine_shift() const;
  const ConvexBody& affine_inner() const;
  int reuleaux_k() const;

 private:
  ConvexBody(std::shared_ptr<const BodyData> data, Vec ref);
  void rebuild_cache();

  std::shared_ptr<const BodyData> data_;
  Vec ref_;
  // Rows n_j / (b_j − n_j·ref) for polytopes: gauge(p) = max_j row_j·(p−ref).
  std::shared_ptr<const Eigen::MatrixXd> gauge_rows_;
};

// Affine image x ↦ A x + b (polytopes stay polytopes).
ConvexBody transform(const ConvexBody& K, const Mat& A, const Vec& b);
ConvexBody translate(const ConvexBody& K, const Vec& b);
// Homothety about the reference point.
ConvexBody scale_about_reference(const ConvexBody& K, double s);

double lp_norm(const Vec& x, double p);

}  // namespace covfun
