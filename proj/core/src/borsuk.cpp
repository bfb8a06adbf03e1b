#include "covfun/borsuk.hpp"

#include "covfun/metrics.hpp"
#include "covfun/parallel.hpp"
#include "covfun/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace covfun {

namespace {

using Graph = std::vector<std::vector<int>>;

constexpr int kExactLimit = 25;
constexpr int kRestarts = 1000;
constexpr int kBatch = 50;

Eigen::MatrixXd distances(const PointCloud& X) {
  const int N = static_cast<int>(X.points.size());
  Eigen::MatrixXd D(N, N);
  for (int i = 0; i < N; ++i) {
    D(i, i) = 0.0;
    for (int j = i + 1; j < N; ++j) D(i, j) = D(j, i) = (X.points[i] - X.points[j]).norm();
  }
  return D;
}

Graph conflict_graph(const Eigen::MatrixXd& D, double threshold) {
  const int N = static_cast<int>(D.rows());
  Graph g(N);
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j)
      if (D(i, j) > threshold) {
        g[i].push_back(j);
        g[j].push_back(i);
      }
  return g;
}

// Backtracking over the non-isolated vertices, most saturated first.
class ExactColoring {
 public:
  ExactColoring(const Graph& g, int m) : g_(g), m_(m), color_(g.size(), -1) {}

  bool run() {
    for (std::size_t v = 0; v < g_.size(); ++v)
      if (g_[v].empty()) color_[v] = 0;
    return extend(0);
  }
  const std::vector<int>& colors() const { return color_; }

 private:
  bool extend(int used) {
    int pick = -1, best_sat = -1, best_deg = -1;
    for (std::size_t v = 0; v < g_.size(); ++v) {
      if (color_[v] >= 0) continue;
      unsigned mask = 0;
      for (int w : g_[v])
        if (color_[w] >= 0) mask |= 1u << color_[w];
      int sat = __builtin_popcount(mask);
      int deg = static_cast<int>(g_[v].size());
      if (sat > best_sat || (sat == best_sat && deg > best_deg)) {
        pick = static_cast<int>(v);
        best_sat = sat;
        best_deg = deg;
      }
    }
    if (pick < 0) return true;
    const int limit = std::min(m_, used + 1);
    for (int c = 0; c < limit; ++c) {
      bool ok = true;
      for (int w : g_[pick])
        if (color_[w] == c) {
          ok = false;
          break;
        }
      if (!ok) continue;
      color_[pick] = c;
      if (extend(std::max(used, c + 1))) return true;
      color_[pick] = -1;
    }
    return false;
  }

  const Graph& g_;
  int m_;
  std::vector<int> color_;
};

// One DSATUR pass; ties broken at random unless restart == 0.
bool dsatur(const Graph& g, int m, std::uint64_t seed, int restart, std::vector<int>& color) {
  const int N = static_cast<int>(g.size());
  color.assign(N, -1);
  std::vector<std::vector<char>> seen(N, std::vector<char>(m, 0));
  std::vector<int> sat(N, 0);
  Rng rng(seed * 1000003ULL + static_cast<std::uint64_t>(restart));
  std::vector<double> jitter(N, 0.0);
  if (restart > 0) {
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (double& j : jitter) j = U(rng);
  }
  for (int step = 0; step < N; ++step) {
    int pick = -1;
    double key_best = -1.0;
    for (int v = 0; v < N; ++v) {
      if (color[v] >= 0) continue;
      double key = sat[v] * 1e6 + static_cast<double>(g[v].size()) + jitter[v] * (restart > 0 ? 50.0 : 0.0);
      if (key > key_best) {
        key_best = key;
        pick = v;
      }
    }
    int c = 0;
    while (c < m && seen[pick][c]) ++c;
    if (c == m) return false;
    color[pick] = c;
    for (int w : g[pick])
      if (!seen[w][c]) {
        seen[w][c] = 1;
        ++sat[w];
      }
  }
  return true;
}

ColoringResult color_graph(const Graph& g, int m, std::uint64_t seed) {
  ColoringResult out;
  const int N = static_cast<int>(g.size());
  if (m >= N) {
    std::vector<int> c(N);
    std::iota(c.begin(), c.end(), 0);
    out.colorable = out.exact = true;
    out.coloring = c;
    return out;
  }
  int active = 0;
  for (const auto& nb : g) active += nb.empty() ? 0 : 1;
  if (active <= kExactLimit) {
    ExactColoring ex(g, m);
    out.exact = true;
    out.colorable = ex.run();
    if (out.colorable) out.coloring = ex.colors();
    return out;
  }
  for (int start = 0; start < kRestarts; start += kBatch) {
    const int count = std::min(kBatch, kRestarts - start);
    std::vector<std::vector<int>> colors(count);
    std::vector<char> ok(count, 0);
    parallel_for(count, [&](std::size_t k) {
      ok[k] = dsatur(g, m, seed, start + static_cast<int>(k), colors[k]);
    });
    for (int k = 0; k < count; ++k)
      if (ok[k]) {
        out.colorable = true;
        out.coloring = colors[k];
        return out;
      }
  }
  return out;
}

void check_cloud(const PointCloud& X) {
  if (X.points.size() < 2) throw Error("point cloud needs at least 2 points");
  const int d = X.dim();
  for (const Vec& p : X.points) {
    if (p.size() != d) throw Error("point cloud: inconsistent dimensions");
    if (!p.allFinite()) throw Error("point cloud: non-finite coordinate");
  }
}

}  // namespace

double cloud_diameter(const PointCloud& X) {
  check_cloud(X);
  return distances(X).maxCoeff();
}

ColoringResult conflict_colorable(const PointCloud& X, double r, int m, std::uint64_t seed) {
  check_cloud(X);
  if (!(r >= 0.0)) throw Error("conflict_colorable: r must be non-negative");
  if (m < 1) throw Error("conflict_colorable: m must be at least 1");
  Eigen::MatrixXd D = distances(X);
  return color_graph(conflict_graph(D, r * D.maxCoeff()), m, seed);
}

PartitionResult phi_upper(const PointCloud& X, int m, const SearchBudget& budget) {
  check_cloud(X);
  if (m < 1) throw Error("phi_upper: m must be at least 1");
  const int N = static_cast<int>(X.points.size());
  Eigen::MatrixXd D = distances(X);
  PartitionResult out;
  out.diameter = D.maxCoeff();
  out.exact = true;
  std::vector<double> levels = {0.0};
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j) levels.push_back(D(i, j));
  std::sort(levels.begin(), levels.end());
  // Distances equal up to rounding form one level, represented by the
  // largest so that every part stays within it.
  const double tie = 1e-12 * out.diameter;
  std::vector<double> merged;
  for (double v : levels) {
    if (!merged.empty() && v - merged.back() <= tie)
      merged.back() = v;
    else
      merged.push_back(v);
  }
  levels = std::move(merged);

  // The top level leaves no conflicts: one part.
  int lo = -1, hi = static_cast<int>(levels.size()) - 1;
  std::vector<int> best(N, 0);
  while (hi - lo > 1) {
    const int mid = lo + (hi - lo) / 2;
    ColoringResult c = color_graph(conflict_graph(D, levels[mid]), m, budget.seed);
    if (!c.exact) out.exact = false;
    if (c.colorable) {
      hi = mid;
      best = *c.coloring;
    } else {
      lo = mid;
    }
  }
  out.r_ratio = out.diameter > 0.0 ? levels[hi] / out.diameter : 0.0;
  out.assignment.resize(N);
  for (int i = 0; i < N; ++i) out.assignment[i] = best[i] + 1;
  return out;
}

ConvexBody reuleaux_polygon(int k) {
  if (k % 2 == 0) throw Error("reuleaux_polygon: k must be odd");
  if (k < 3 || k > 21) throw Error("reuleaux_polygon: k must lie in [3, 21]");
  return ConvexBody::reuleaux(k);
}

double mu_n(int n) {
  const double x = n;
  return (std::sqrt(2.0 * x * x + 2.0 * x) + x) / (x + 2.0);
}

RadiiCheck constant_width_radii_check(const ConvexBody& K, int n) {
  if (n < 2) throw Error("constant_width_radii_check: n must be at least 2");
  if (K.dim() != n) throw Error("constant_width_radii_check: body dimension differs from n");
  RadiiCheck out;
  out.width_min = std::numeric_limits<double>::infinity();
  out.width_max = 0.0;
  for (const Vec& u : direction_grid(n, default_grid(n))) {
    double w = K.support(u) + K.support(-u);
    out.width_min = std::min(out.width_min, w);
    out.width_max = std::max(out.width_max, w);
  }
  if (out.width_min < 1.0 - 1e-4 || out.width_max > 1.0 + 1e-4)
    throw Error("constant_width_radii_check: body is not of constant width 1");
  Radii radii = euclidean_radii(K);
  out.r = radii.r;
  out.R = radii.R;
  out.upper = std::sqrt(n / (2.0 * n + 2.0));
  out.lower = 1.0 - out.upper;
  out.mu = mu_n(n);
  constexpr double slack = 1e-6;
  out.holds = out.r >= out.lower - slack && out.r <= out.R + slack && out.R <= out.upper + slack;
  return out;
}

double hausdorff_distance(const ConvexBody& K1, const ConvexBody& K2, int grid) {
  if (K1.dim() != K2.dim()) throw Error("hausdorff_distance: dimension mismatch");
  const int dim = K1.dim();
  if (grid <= 0) grid = default_grid(dim);
  double worst = 0.0;
  for (const Vec& u : direction_grid(dim, grid))
    worst = std::max(worst, std::abs(K1.support(u) - K2.support(u)));
  return worst;
}

}  // namespace covfun
