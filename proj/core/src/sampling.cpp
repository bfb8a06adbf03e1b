#include "covfun/sampling.hpp"

#include <cmath>
#include <numbers>

namespace covfun {

Points direction_grid(int dim, int count) {
  if (count < 1) throw Error("direction_grid: count must be positive");
  Points out;
  out.reserve(count);
  if (dim == 2) {
    for (int i = 0; i < count; ++i) {
      double a = 2.0 * std::numbers::pi * i / count;
      Vec u(2);
      u << std::cos(a), std::sin(a);
      out.push_back(u);
    }
    return out;
  }
  if (dim == 3) {
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < count; ++i) {
      double z = 1.0 - (2.0 * i + 1.0) / count;
      double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      double a = golden * i;
      Vec u(3);
      u << r * std::cos(a), r * std::sin(a), z;
      out.push_back(u);
    }
    return out;
  }
  throw Error("direction_grid: dimension must be 2 or 3");
}

double direction_grid_resolution(int dim, int count) {
  if (dim == 2) return std::numbers::pi / count;
  // Empirical covering radius of the Fibonacci sphere is below 2/sqrt(N)
  // for N >= 10.
  return 2.0 / std::sqrt(static_cast<double>(count));
}

Vec random_direction(int dim, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vec u(dim);
  do {
    for (int i = 0; i < dim; ++i) u[i] = g(rng);
  } while (u.squaredNorm() < 1e-20);
  return u.normalized();
}

std::pair<Vec, Vec> bounding_box(const ConvexBody& K) {
  const int n = K.dim();
  Vec lo(n), hi(n);
  for (int i = 0; i < n; ++i) {
    Vec e = Vec::Zero(n);
    e[i] = 1.0;
    hi[i] = K.support(e);
    lo[i] = -K.support(-e);
  }
  return {lo, hi};
}

Vec random_point(const ConvexBody& K, Rng& rng) {
  auto [lo, hi] = bounding_box(K);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const int n = K.dim();
  Vec p(n);
  for (int attempt = 0; attempt < 100000; ++attempt) {
    for (int i = 0; i < n; ++i) p[i] = lo[i] + (hi[i] - lo[i]) * U(rng);
    if (K.gauge(p) <= 1.0) return p;
  }
  return K.reference();
}

Points random_points(const ConvexBody& K, int count, Rng& rng) {
  auto [lo, hi] = bounding_box(K);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const int n = K.dim();
  Points out;
  out.reserve(count);
  Vec p(n);
  while (static_cast<int>(out.size()) < count) {
    for (int i = 0; i < n; ++i) p[i] = lo[i] + (hi[i] - lo[i]) * U(rng);
    if (K.gauge(p) <= 1.0) out.push_back(p);
  }
  return out;
}

Points boundary_sample(const ConvexBody& K, int count) {
  Points out;
  out.reserve(count);
  for (const Vec& u : direction_grid(K.dim(), count)) out.push_back(K.boundary_point(u));
  return out;
}

Points support_sample(const ConvexBody& K, int count) {
  Points out;
  out.reserve(count);
  for (const Vec& u : direction_grid(K.dim(), count)) out.push_back(K.support_point(u));
  return out;
}

}  // namespace covfun
