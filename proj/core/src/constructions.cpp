#include "covfun/constructions.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace covfun {

ConeCover cone_cover_thm1(const ConvexBody& cone) {
  if (cone.kind() != BodyKind::Cone) throw Error("cone_cover_thm1: body is not a cone");
  const ConvexBody& base = cone.cone_base();
  const Vec& apex = cone.cone_apex();
  ConeCover out;
  out.hexagon = inscribe_affine_hexagon(base);
  auto lift = [](const Vec& q) { return make_vec({q[0], q[1], 0.0}); };
  const Vec o = lift(out.hexagon.center);
  out.midpoints.push_back(o);
  for (int i = 0; i < 6; ++i)
    out.midpoints.push_back(
        lift(0.5 * (out.hexagon.vertices[i] + out.hexagon.vertices[(i + 1) % 6])));
  out.midpoints.push_back(0.5 * (o + apex));
  const double r = 2.0 / 3.0;
  out.config.r = r;
  const Vec& ref = cone.reference();
  // r(K − o) + r(m − o) + o = ref + r(K − ref) + x with x as below.
  for (const Vec& m : out.midpoints)
    out.config.centers.push_back(r * (m - o) + (1.0 - r) * (o - ref));
  return out;
}

CoverConfig lpball_cover_thm2(double p) {
  if (!(p >= 1.0)) throw Error("lpball_cover_thm2: p must be >= 1");
  CoverConfig cfg;
  cfg.r = std::sqrt(2.0 / 3.0);
  if (p < 2.0) {
    const double a = std::pow(1.0 / 3.0, 1.0 / p);
    for (int i = 0; i < 3; ++i)
      for (double s : {1.0, -1.0}) {
        Vec x = Vec::Zero(3);
        x[i] = s * a;
        cfg.centers.push_back(x);
      }
  } else {
    for (int s = 0; s < 8; ++s)
      cfg.centers.push_back(make_vec({(s & 1) ? -1.0 / 3 : 1.0 / 3, (s & 2) ? -1.0 / 3 : 1.0 / 3,
                                      (s & 4) ? -1.0 / 3 : 1.0 / 3}));
  }
  return cfg;
}

Thm2Check thm2_inequalities(double p) {
  if (!(p >= 2.0)) throw Error("thm2_inequalities: p must be >= 2");
  Thm2Check out;
  const double l23 = std::log(2.0 / 3.0);
  if (std::isinf(p)) {
    // Both left sides decay like (2/3)^p, the right side like (2/3)^(p/2).
    out.first = out.second = true;
    out.log_gap_first = out.log_gap_second = std::numeric_limits<double>::infinity();
    return out;
  }
  // log lhs1 = p log(2/3) + log(1 + 2^(1−p)); log rhs = (p/2) log(2/3).
  const double lhs1 = p * l23 + std::log1p(std::pow(2.0, 1.0 - p));
  const double rhs = 0.5 * p * l23;
  out.log_gap_first = rhs - lhs1;
  const double a = std::pow(1.0 / 3.0, 1.0 / p) - 1.0 / 3.0;
  const double lhs2 = std::log(3.0) + p * std::log(a);
  out.log_gap_second = rhs - lhs2;
  out.first = out.log_gap_first >= -1e-13;
  out.second = out.log_gap_second >= -1e-13;
  if (p == std::floor(p) && static_cast<int>(p) % 2 == 0 && p <= 38) {
    // (2^p + 2)/3^p versus 2^(p/2)/3^(p/2), i.e. 2^p + 2 versus 6^(p/2).
    const int k = static_cast<int>(p);
    __int128 left = (static_cast<__int128>(1) << k) + 2;
    __int128 right = 1;
    for (int i = 0; i < k / 2; ++i) right *= 6;
    out.first_exact = left < right ? 1 : (left == right ? 0 : -1);
    out.first = out.first_exact >= 0;
  }
  return out;
}

namespace {

double angle_about(const Vec& ref, const Vec& x) {
  return std::atan2(x[1] - ref[1], x[0] - ref[0]);
}

double ccw_gap(double from, double to) {
  double d = std::fmod(to - from, 2 * std::numbers::pi);
  if (d < 0) d += 2 * std::numbers::pi;
  return d;
}

}  // namespace

bool arc_covered(const ConvexBody& D, const Vec& x1, const Vec& x2, const Vec& x3,
                 double lambda, const Vec& y) {
  if (D.dim() != 2) throw Error("arc_covered: body must be planar");
  if (!(lambda > 0.0 && lambda < 1.0)) throw Error("arc_covered: λ must lie in (0, 1)");
  for (const Vec* x : {&x1, &x2, &x3})
    if (std::abs(D.gauge(*x) - 1.0) > kGeoTol)
      throw Error("arc_covered: point not on the boundary");
  const Vec& ref = D.reference();
  const double a1 = angle_about(ref, x1), a2 = angle_about(ref, x2), a3 = angle_about(ref, x3);
  const double span = ccw_gap(a1, a3), mid = ccw_gap(a1, a2);
  if (!(mid > 0.0 && mid < span)) throw Error("arc_covered: points out of order");
  bool inside = true;
  for (const Vec* x : {&x1, &x2, &x3}) inside = inside && D.gauge(*x - y) <= lambda + kGeoTol;
  if (!inside) return false;
  for (int k = 0; k <= 100; ++k) {
    double a = a1 + span * k / 100.0;
    Vec q = D.boundary_point(make_vec({std::cos(a), std::sin(a)}));
    if (D.gauge(q - y) > lambda + 1e-9)
      throw Error("arc_covered: arc sample escapes the homothet although its three points do not");
  }
  return true;
}

int levi_c(const ConvexBody& D) {
  if (D.dim() != 2) throw Error("levi_c: body must be planar");
  if (!D.is_polytope()) return 3;
  const Points& V = D.polytope().vertices;
  if (V.size() != 4) return 3;
  std::vector<int> order = hull2d_indices(V, 0.0);
  if (order.size() != 4) return 3;
  double scale = 0.0;
  for (const Vec& v : V) scale = std::max(scale, v.norm());
  Vec gap = V[order[0]] + V[order[2]] - V[order[1]] - V[order[3]];
  return gap.norm() <= kGeoTol * std::max(1.0, scale) ? 4 : 3;
}

std::int64_t rogers_zong_bound(int n, bool symmetric) {
  if (n < 2) throw Error("rogers_zong_bound: n must be at least 2");
  double c = 1.0;
  if (symmetric) {
    c = std::ldexp(1.0, n);
  } else {
    for (int k = 1; k <= n; ++k) c = c * (n + k) / k;
  }
  const double nn = static_cast<double>(n);
  const double value = c * (nn * std::log(nn) + nn * std::log(std::log(nn)) + 5 * nn);
  return static_cast<std::int64_t>(std::ceil(value));
}

double beta_for_gap(double c) {
  if (!(c > 0.0 && c < 1.0)) throw Error("beta_for_gap: c must lie in (0, 1)");
  return std::log1p((1.0 - c) / 2.0);
}

CoverConfig transfer_config(const CoverConfig& cfg, double eps) {
  if (!(eps >= 0.0)) throw Error("transfer_config: ε must be non-negative");
  CoverConfig out;
  out.r = (1.0 + eps) * cfg.r;
  for (const Vec& x : cfg.centers) out.centers.push_back((1.0 + eps) * x);
  return out;
}

}  // namespace covfun
