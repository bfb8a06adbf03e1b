#include "covfun/metrics.hpp"

#include "covfun/lp.hpp"
#include "covfun/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace covfun {
namespace {

Ball ball_from(const std::vector<const Vec*>& R, int dim) {
  Ball b;
  if (R.empty()) return b;
  const Vec& p0 = *R[0];
  if (R.size() == 1) {
    b.center = p0;
    b.radius = 0.0;
    return b;
  }
  const int k = static_cast<int>(R.size()) - 1;
  Eigen::MatrixXd M(k, k);
  Eigen::VectorXd rhs(k);
  for (int i = 0; i < k; ++i) {
    Vec di = *R[i + 1] - p0;
    rhs[i] = di.squaredNorm();
    for (int j = 0; j < k; ++j) M(i, j) = 2.0 * di.dot(*R[j + 1] - p0);
  }
  Eigen::VectorXd lam = M.colPivHouseholderQr().solve(rhs);
  Vec c = p0;
  for (int i = 0; i < k; ++i) c += lam[i] * (*R[i + 1] - p0);
  b.center = c;
  b.radius = 0.0;
  for (const Vec* p : R) b.radius = std::max(b.radius, (*p - c).norm());
  (void)dim;
  return b;
}

bool inside(const Ball& b, const Vec& p) {
  if (b.radius < 0) return false;
  return (p - b.center).norm() <= b.radius * (1.0 + 1e-13) + 1e-15;
}

Ball welzl(const std::vector<const Vec*>& P, int n, std::vector<const Vec*>& R,
           int dim) {
  Ball b = ball_from(R, dim);
  if (static_cast<int>(R.size()) == dim + 1) return b;
  for (int i = 0; i < n; ++i) {
    if (inside(b, *P[i])) continue;
    R.push_back(P[i]);
    b = welzl(P, i, R, dim);
    R.pop_back();
  }
  return b;
}

}  // namespace

Ball min_enclosing_ball(const Points& pts, std::uint64_t seed) {
  if (pts.empty()) throw Error("min_enclosing_ball: no points");
  std::vector<const Vec*> P;
  P.reserve(pts.size());
  for (const Vec& p : pts) P.push_back(&p);
  Rng rng(seed);
  std::shuffle(P.begin(), P.end(), rng);
  std::vector<const Vec*> R;
  const int dim = static_cast<int>(pts.front().size());
  return welzl(P, static_cast<int>(P.size()), R, dim);
}

Ball max_inscribed_ball(const Points& dirs, const std::vector<double>& h) {
  ChebyshevBall cb = chebyshev_ball(dirs, h);
  return Ball{cb.center, cb.radius};
}

DiameterResult diameter(const ConvexBody& K) {
  DiameterResult out;
  if (K.is_polytope()) {
    const Points& V = K.polytope().vertices;
    double d = 0.0;
    for (size_t i = 0; i < V.size(); ++i)
      for (size_t j = i + 1; j < V.size(); ++j) d = std::max(d, (V[i] - V[j]).norm());
    out.value = d;
    out.exact = true;
    return out;
  }
  if (K.kind() == BodyKind::LpBall) {
    const double p = K.lp_exponent();
    const int n = K.dim();
    out.value = p <= 2.0 ? 2.0 : 2.0 * std::pow(n, 0.5 - 1.0 / p);
    out.exact = true;
    return out;
  }
  const int count = default_grid(K.dim());
  double d = 0.0;
  for (const Vec& u : direction_grid(K.dim(), count))
    d = std::max(d, K.support(u) + K.support(-u));
  out.value = d;
  out.resolution = direction_grid_resolution(K.dim(), count);
  return out;
}

Radii euclidean_radii(const ConvexBody& K) {
  Radii out;
  if (K.is_polytope()) {
    const Polytope& P = K.polytope();
    ChebyshevBall cb = chebyshev_ball(P.normals, P.offsets);
    out.r = cb.radius;
    out.in_center = cb.center;
    Ball b = min_enclosing_ball(P.vertices);
    out.R = b.radius;
    out.circ_center = b.center;
    out.exact = true;
    return out;
  }
  const int dim = K.dim();
  const int count = default_grid(dim);
  Points dirs = direction_grid(dim, count);
  std::vector<double> h(dirs.size());
  Points sp(dirs.size());
  for (size_t i = 0; i < dirs.size(); ++i) {
    sp[i] = K.support_point(dirs[i]);
    h[i] = dirs[i].dot(sp[i]);
  }
  Ball in = max_inscribed_ball(dirs, h);
  Ball circ = min_enclosing_ball(sp);
  out.r = in.radius;
  out.in_center = in.center;
  out.R = circ.radius;
  out.circ_center = circ.center;
  out.resolution = direction_grid_resolution(dim, count);
  return out;
}

double volume(const ConvexBody& K) {
  const int n = K.dim();
  switch (K.kind()) {
    case BodyKind::LpBall: {
      double p = K.lp_exponent();
      if (std::isinf(p)) return std::pow(2.0, n);
      return std::pow(2.0 * std::tgamma(1.0 + 1.0 / p), n) / std::tgamma(1.0 + n / p);
    }
    case BodyKind::Reuleaux: {
      const double pi = std::numbers::pi;
      const int k = K.reuleaux_k();
      const double R = 1.0 / (2.0 * std::cos(pi / (2.0 * k)));
      return 0.5 * k * R * R * std::sin(2 * pi / k) + 0.5 * k * (pi / k - std::sin(pi / k));
    }
    case BodyKind::Cone:
      return volume(K.cone_base()) * std::abs(K.cone_apex()[2]) / 3.0;
    case BodyKind::Affine:
      return std::abs(K.affine_matrix().determinant()) * volume(K.affine_inner());
    default:
      break;
  }
  const Polytope& P = K.polytope();
  const Vec& c = K.reference();
  double v = 0.0;
  for (const auto& s : P.boundary) {
    if (n == 2) {
      Mat M(2, 2);
      M.col(0) = P.vertices[s[0]] - c;
      M.col(1) = P.vertices[s[1]] - c;
      v += std::abs(M.determinant()) / 2.0;
    } else {
      Mat M(3, 3);
      M.col(0) = P.vertices[s[0]] - c;
      M.col(1) = P.vertices[s[1]] - c;
      M.col(2) = P.vertices[s[2]] - c;
      v += std::abs(M.determinant()) / 6.0;
    }
  }
  return v;
}

}  // namespace covfun
