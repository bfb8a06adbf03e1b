#include "covfun/betanet.hpp"

#include "covfun/john.hpp"
#include "covfun/parallel.hpp"
#include "covfun/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace covfun {

namespace {

// Nearest-point queries on the unit sphere through a uniform cell grid.
// Only neighbours within chord `h` are guaranteed to be found.
class SphereIndex {
 public:
  SphereIndex(const Points& units, double h) : units_(units), h_(h) {
    g_ = static_cast<std::int64_t>(std::ceil(2.0 / h_)) + 3;
    keyed_.reserve(units.size());
    for (std::size_t i = 0; i < units.size(); ++i)
      keyed_.emplace_back(key_of(units[i]), static_cast<int>(i));
    std::sort(keyed_.begin(), keyed_.end());
  }

  // Chord distance to the nearest point, or +inf when none lies within h.
  double nearest_chord(const Vec& u) const {
    std::int64_t c[3];
    for (int a = 0; a < 3; ++a) c[a] = cell(u[a]);
    double best = std::numeric_limits<double>::infinity();
    for (int dx = -1; dx <= 1; ++dx)
      for (int dy = -1; dy <= 1; ++dy)
        for (int dz = -1; dz <= 1; ++dz) {
          std::int64_t k = ((c[0] + dx) * g_ + (c[1] + dy)) * g_ + (c[2] + dz);
          auto it = std::lower_bound(keyed_.begin(), keyed_.end(), std::make_pair(k, -1));
          for (; it != keyed_.end() && it->first == k; ++it)
            best = std::min(best, (units_[it->second] - u).norm());
        }
    return best <= h_ ? best : std::numeric_limits<double>::infinity();
  }

 private:
  std::int64_t cell(double x) const {
    return static_cast<std::int64_t>(std::floor((x + 1.0) / h_)) + 1;
  }
  std::int64_t key_of(const Vec& u) const {
    return (cell(u[0]) * g_ + cell(u[1])) * g_ + cell(u[2]);
  }

  const Points& units_;
  double h_;
  std::int64_t g_ = 0;
  std::vector<std::pair<std::int64_t, int>> keyed_;
};

Points fibonacci_sphere(int count, double radius) {
  Points out;
  out.reserve(count);
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int k = 0; k < count; ++k) {
    double z = 1.0 - (2.0 * k + 1.0) / count;
    double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    double phi = golden * k;
    out.push_back(make_vec({radius * rho * std::cos(phi), radius * rho * std::sin(phi), radius * z}));
  }
  return out;
}

// Largest sampled angle, capped at `cap` when a sample has no point within it.
double sampled_max_angle(const Points& units, double cap, int samples, std::uint64_t seed) {
  const double h = 2.0 * std::sin(std::min(cap, std::numbers::pi) / 2.0);
  SphereIndex index(units, std::max(h, 1e-12));
  constexpr int kChunk = 4096;
  const int chunks = (samples + kChunk - 1) / kChunk;
  std::vector<double> worst(chunks, 0.0);
  parallel_for(chunks, [&](std::size_t c) {
    Rng rng(seed + 0x9e3779b97f4a7c15ULL * (c + 1));
    const int lo = static_cast<int>(c) * kChunk;
    const int hi = std::min(samples, lo + kChunk);
    double w = 0.0;
    for (int s = lo; s < hi; ++s) {
      double d = index.nearest_chord(random_direction(3, rng));
      double a = std::isinf(d) ? cap : 2.0 * std::asin(std::min(1.0, d / 2.0));
      w = std::max(w, a);
    }
    worst[c] = w;
  });
  return worst.empty() ? 0.0 : *std::max_element(worst.begin(), worst.end());
}

double reference_count(int n, double tp) {
  const double s = std::sin(tp), c = std::cos(tp);
  return std::pow(n, 1.5) * c * std::pow(s, -n) * std::log(2.0 + n * c * c);
}

}  // namespace

CapCover cap_cover(int n, double theta, std::uint64_t seed) {
  if (n != 2 && n != 3) throw Error("cap_cover: n must be 2 or 3");
  if (!(theta > 0.0)) throw Error("cap_cover: θ must be positive");
  CapCover out;
  out.n = n;
  out.theta = theta;
  out.theta_prime = theta >= 2.0 * n ? std::numbers::pi : 2.0 * std::asin(theta / (2.0 * n));
  const double tp = out.theta_prime;
  out.reference_count = tp < std::numbers::pi ? reference_count(n, tp) : 1.0;
  if (tp >= std::numbers::pi) {
    Vec x = Vec::Zero(n);
    x[0] = n;
    out.points = {x};
    out.count = 1;
    out.measured_angle = std::numbers::pi;
    return out;
  }
  if (n == 2) {
    const int count = static_cast<int>(std::ceil(2.0 * std::numbers::pi / tp - 1e-12));
    for (int k = 0; k < count; ++k) {
      double a = 2.0 * std::numbers::pi * k / count;
      out.points.push_back(make_vec({n * std::cos(a), n * std::sin(a)}));
    }
    out.count = count;
    out.measured_angle = std::numbers::pi / count;
    return out;
  }
  constexpr int kSamples = 100000;
  constexpr double kSlack = 1.2;
  int count = std::max(4, static_cast<int>(std::ceil(4.0 / (tp * tp))));
  for (;;) {
    Points units = fibonacci_sphere(count, 1.0);
    double worst = sampled_max_angle(units, tp, kSamples, seed);
    if (kSlack * worst <= tp) {
      for (Vec& u : units) u *= n;
      out.points = std::move(units);
      out.count = count;
      out.measured_angle = worst;
      out.sample_count = kSamples;
      return out;
    }
    count = static_cast<int>(std::ceil(count * 1.05)) + 1;
  }
}

double cap_cover_max_angle(const CapCover& caps, int samples, std::uint64_t seed) {
  if (caps.n == 2) {
    std::vector<double> ang;
    for (const Vec& x : caps.points) ang.push_back(std::atan2(x[1], x[0]));
    std::sort(ang.begin(), ang.end());
    Rng rng(seed);
    std::uniform_real_distribution<double> U(-std::numbers::pi, std::numbers::pi);
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
      double a = U(rng), best = std::numbers::pi;
      for (double b : ang) {
        double d = std::abs(std::remainder(a - b, 2.0 * std::numbers::pi));
        best = std::min(best, d);
      }
      worst = std::max(worst, best);
    }
    return worst;
  }
  Points units;
  for (const Vec& x : caps.points) units.push_back(x.normalized());
  return sampled_max_angle(units, std::numbers::pi, samples, seed);
}

Points radial_grid(const Vec& x, int n, int m) {
  if (m < 1) throw Error("radial_grid: m must be at least 1");
  if (std::abs(x.norm() - n) > kGeoTol * std::max(1.0, static_cast<double>(n)))
    throw Error("radial_grid: |x| must equal n");
  Points out;
  for (int j = 0; j <= m; ++j)
    out.push_back((1.0 / n) * x + (static_cast<double>(j) * (n - 1) / (static_cast<double>(m) * n)) * x);
  return out;
}

FBound f_bound(int n, int m, double theta) {
  if (n < 2) throw Error("f_bound: n must be at least 2");
  if (m < 1) throw Error("f_bound: m must be at least 1");
  if (!(theta > 0.0 && theta < 1.0)) throw Error("f_bound: θ must lie in (0, 1)");
  const double nn = n;
  const double s = 1.0 - theta / nn;
  const double step = (nn - 1.0) / m;
  FBound out;
  out.theta_prime = 2.0 * std::asin(theta / (2.0 * nn));
  const double tp = out.theta_prime;
  auto arccos = [](double x, const char* term) {
    if (!(x >= -1.0 && x <= 1.0))
      throw Error(std::string("f_bound: arccos argument out of [-1, 1] in ") + term);
    return std::acos(x);
  };
  auto root = [](double x, const char* term) {
    if (!(x >= 0.0)) throw Error(std::string("f_bound: negative square root argument in ") + term);
    return std::sqrt(x);
  };
  auto tangent = [](double a, const char* term) {
    if (!(std::abs(a) < std::numbers::pi / 2))
      throw Error(std::string("f_bound: tangent argument outside (-π/2, π/2) in ") + term);
    return std::tan(a);
  };
  const char* t1 = "(1 − θ/n)·tan(arccos((n − θ)/n²) + θ′)";
  const char* t2 = "√(n² − (1 − θ/n)²)";
  const char* t4 = "√((n − (n−1)/m)² − (1 − θ/n)²)";
  const char* t5 = "(1 − θ/n)·tan(arccos((1 − θ/n)/(n − (n−1)/m)) − θ′)";
  out.terms[0] = s * tangent(arccos((nn - theta) / (nn * nn), t1) + tp, t1);
  out.terms[1] = -root(nn * nn - s * s, t2);
  out.terms[2] = step;
  out.terms[3] = root((nn - step) * (nn - step) - s * s, t4);
  out.terms[4] = -s * tangent(arccos(s / (nn - step), t5) - tp, t5);
  out.value = 0.0;
  for (double t : out.terms) out.value += t;
  out.asymptotic = 2.0 * nn * theta + step;
  out.envelope = 3.0 * nn * (theta + 1.0 / m);
  return out;
}

NetParams net_params(int n, double beta) {
  if (n < 2) throw Error("net_params: n must be at least 2");
  if (!(beta > 0.0)) throw Error("net_params: β must be positive");
  NetParams p;
  p.n = n;
  p.beta = beta;
  p.theta = beta / (7.0 * n);
  const double mm = std::floor(7.0 * n / beta);
  if (mm > 2e9) throw Error("net_params: m = ⌊7n/β⌋ is too large");
  p.m = static_cast<int>(mm);
  if (p.m < 1 || !(p.theta < 1.0)) throw Error("net_params: β too large for the grid");
  p.f = f_bound(n, p.m, p.theta).value;
  p.ratio = p.f / (1.0 - p.theta / n);
  if (!(p.ratio <= beta))
    throw Error("net_params: f/(1 − θ/n) exceeds β at these parameters; choose a smaller β");
  return p;
}

SnapResult snap_to_net(const ConvexBody& K, const NetParams& params, const CapCover& caps) {
  const int n = params.n;
  if (K.dim() != n || caps.n != n) throw Error("snap_to_net: dimension mismatch");
  if (caps.points.empty()) throw Error("snap_to_net: empty cap cover");
  const int grid = default_grid(n);
  const Vec origin = Vec::Zero(n);
  if (!K.contains(origin, 0.0)) throw Error("snap_to_net: K is not John-normalized (origin outside)");
  if (inner_radius_about_origin(K, grid) < 1.0 - kBoundaryTol)
    throw Error("snap_to_net: K is not John-normalized (unit ball not inside)");
  if (outer_radius_about_origin(K, grid) > n + kBoundaryTol)
    throw Error("snap_to_net: K is not John-normalized (not inside nBⁿ)");

  SnapResult out;
  out.params = params;
  const int m = params.m;
  out.grid_points.resize(caps.points.size());
  parallel_for(caps.points.size(), [&](std::size_t i) {
    const Vec& x = caps.points[i];
    const Vec u = x / n;
    const double t = K.ray_exit(origin, u.normalized()) / u.norm();
    // Grid point j sits at (1 + j(n−1)/m)·u.
    double jf = std::floor((t - 1.0) * m / (n - 1.0) + 1e-9);
    int j = static_cast<int>(std::clamp(jf, 0.0, static_cast<double>(m)));
    Vec p = u + (static_cast<double>(j) * (n - 1) / m) * u;
    while (j > 0 && !K.contains(p, kGeoTol)) {
      --j;
      p = u + (static_cast<double>(j) * (n - 1) / m) * u;
    }
    out.grid_points[i] = p;
  });
  for (const Vec& p : out.grid_points)
    if (!K.contains(p, kGeoTol)) throw Error("snap_to_net: grid point outside K");

  out.P = convex_hull(out.grid_points);
  out.inner_target = 1.0 - params.theta / n;
  out.inner_radius = std::numeric_limits<double>::infinity();
  for (double b : out.P.offsets) out.inner_radius = std::min(out.inner_radius, b);
  if (out.inner_radius < out.inner_target - kGeoTol)
    throw Error("snap_to_net: (1 − θ/n)Bⁿ is not inside P");

  if (K.is_polytope()) {
    // Exact: σ = max over vertices v of K of gauge_P(v) − 1.
    double g = 0.0;
    for (const Vec& v : K.polytope().vertices)
      for (std::size_t j = 0; j < out.P.normals.size(); ++j)
        g = std::max(g, out.P.normals[j].dot(v) / out.P.offsets[j]);
    out.sigma = std::max(0.0, g - 1.0);
    out.sigma_exact = true;
  } else {
    // Support ratio over a direction grid; h_P by hill climbing on the
    // vertex graph of P.
    const Points& V = out.P.vertices;
    std::vector<std::vector<int>> adj(V.size());
    for (const auto& tri : out.P.boundary)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          if (a != b) adj[tri[a]].push_back(tri[b]);
    for (auto& list : adj) {
      std::sort(list.begin(), list.end());
      list.erase(std::unique(list.begin(), list.end()), list.end());
    }
    const Points dirs = direction_grid(n, grid);
    int cur = 0;
    double worst = 0.0;
    for (const Vec& u : dirs) {
      double best = V[cur].dot(u);
      for (bool moved = true; moved;) {
        moved = false;
        for (int w : adj[cur]) {
          double d = V[w].dot(u);
          if (d > best) {
            best = d;
            cur = w;
            moved = true;
          }
        }
      }
      worst = std::max(worst, K.support(u) / best);
    }
    out.sigma = std::max(0.0, worst - 1.0);
    out.sigma_exact = false;
  }
  out.sigma_bound = params.ratio;
  if (out.sigma > out.sigma_bound + kGeoTol)
    throw Error("snap_to_net: σ exceeds f/(1 − θ/n)");
  out.bm_log_bound = std::log1p(out.sigma);
  return out;
}

double net_cardinality_log_bound(int n, double beta, double c) {
  if (n < 2) throw Error("net_cardinality_log_bound: n must be at least 2");
  if (!(beta > 0.0)) throw Error("net_cardinality_log_bound: β must be positive");
  if (!(c > 0.0)) throw Error("net_cardinality_log_bound: c must be positive");
  const double m = std::floor(7.0 * n / beta);
  if (m < 2.0) throw Error("net_cardinality_log_bound: ⌊7n/β⌋ must be at least 2");
  const double log10_exponent = std::log10(c) + n * std::log10(14.0) +
                                (2.0 * n + 3.0) * std::log10(static_cast<double>(n)) -
                                n * std::log10(beta);
  return std::pow(10.0, log10_exponent) * std::log10(m);
}

}  // namespace covfun
