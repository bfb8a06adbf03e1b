#include "covfun/cover.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <tuple>

namespace covfun {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Covered: return "Covered";
    case Verdict::Uncovered: return "Uncovered";
    case Verdict::Unknown: return "Unknown";
  }
  return "?";
}

double cover_value(const ConvexBody& K, const Points& centers, const Vec& p) {
  double best = std::numeric_limits<double>::infinity();
  for (const Vec& x : centers) best = std::min(best, K.gauge(p - x));
  return best;
}

CoverCertificate trivial_certificate() {
  CoverCertificate c;
  c.verdict = Verdict::Covered;
  c.trivial = true;
  c.margin = 0.0;
  return c;
}

CoverConfig trivial_config(const ConvexBody& K, int m) {
  CoverConfig cfg;
  cfg.r = 1.0;
  cfg.centers.assign(std::max(1, m), Vec::Zero(K.dim()));
  return cfg;
}

namespace {

// Gauges of p − x_i for all centers.
class GaugeTable {
 public:
  GaugeTable(const ConvexBody& K, const Points& centers) : K_(K), centers_(centers) {
    m_ = static_cast<int>(centers.size());
    if (K.is_polytope()) {
      const Polytope& P = K.polytope();
      const int F = static_cast<int>(P.normals.size());
      const int n = K.dim();
      rows_.resize(F, n);
      for (int j = 0; j < F; ++j) {
        double slack = P.offsets[j] - P.normals[j].dot(K.reference());
        rows_.row(j) = P.normals[j].transpose() / slack;
      }
      shifts_.resize(F, m_);
      for (int i = 0; i < m_; ++i) {
        Eigen::VectorXd xi = centers[i];
        shifts_.col(i) = rows_ * xi;
      }
      polytope_ = true;
    }
  }

  int size() const { return m_; }

  // Largest t in [0, 1] with gauge_i(a + t(b − a)) <= level, given that it
  // holds at t = 0 (exact for polytopes, bisection otherwise).
  double crossing(const Vec& a, const Vec& b, int i, double level) const {
    if (polytope_) {
      Eigen::VectorXd ya = rows_ * Eigen::VectorXd(a - K_.reference());
      Eigen::VectorXd yb = rows_ * Eigen::VectorXd(b - K_.reference());
      double t = 1.0;
      for (Eigen::Index j = 0; j < ya.size(); ++j) {
        double alpha = ya[j] - shifts_(j, i), beta = yb[j] - ya[j];
        if (beta > 0) t = std::min(t, (level - alpha) / beta);
      }
      return std::clamp(t, 0.0, 1.0);
    }
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 60; ++it) {
      double mid = 0.5 * (lo + hi);
      if (K_.gauge(a + mid * (b - a) - centers_[i]) <= level) lo = mid; else hi = mid;
    }
    return lo;
  }

  void eval(const Vec& p, double* out) const {
    if (polytope_) {
      Eigen::VectorXd q = p - K_.reference();
      Eigen::VectorXd y = rows_ * q;
      const Eigen::Index F = y.size();
      for (int i = 0; i < m_; ++i) {
        double g = -std::numeric_limits<double>::infinity();
        const double* s = shifts_.col(i).data();
        for (Eigen::Index j = 0; j < F; ++j) g = std::max(g, y[j] - s[j]);
        out[i] = std::max(g, 0.0);
      }
      return;
    }
    for (int i = 0; i < m_; ++i) out[i] = K_.gauge(p - centers_[i]);
  }

 private:
  const ConvexBody& K_;
  const Points& centers_;
  int m_ = 0;
  bool polytope_ = false;
  Eigen::MatrixXd rows_;
  Eigen::MatrixXd shifts_;
};

struct Cell {
  bool patch = false;
  int depth = 0;
  int count = 0;                 // number of points in use
  std::array<Vec, 4> pts;
  std::array<Vec, 3> dirs;       // patches: unit directions of pts
  std::vector<double> gauges;    // count × m
};

class Verifier {
 public:
  Verifier(const ConvexBody& K, const CoverConfig& cfg, const CoverOptions& opt)
      : K_(K), opt_(opt), table_(K, cfg.centers) {
    m_ = table_.size();
    n_ = K.dim();
    r_ = cfg.r;
    lo_ = cfg.r - opt.margin;
    hi_ = cfg.r + opt.margin;
  }

  CoverCertificate run() {
    cert_.max_depth = opt_.max_depth;
    cert_.margin = opt_.margin;
    if (K_.is_polytope()) seed_polytope(); else seed_patches();
    if (!done_) loop();
    if (cert_.witness) cert_.verdict = Verdict::Uncovered;
    else if (cert_.unresolved_cells > 0 || aborted_) cert_.verdict = Verdict::Unknown;
    else cert_.verdict = Verdict::Covered;
    return cert_;
  }

 private:
  // Witnesses sit strictly outside every translate, by at least the margin.
  bool outside(const double* g) const {
    double best = *std::min_element(g, g + m_);
    return best >= hi_ && best > r_;
  }

  // Evaluates p into g; records p as witness when it is uncovered.
  bool probe(const Vec& p, double* g) {
    table_.eval(p, g);
    if (outside(g)) {
      if (!cert_.witness) cert_.witness = p;
      else cert_.extra_witnesses.push_back(p);
      done_ = 1 + static_cast<int>(cert_.extra_witnesses.size()) >= opt_.max_witnesses;
      return done_;
    }
    return false;
  }

  void seed_polytope() {
    const Polytope& P = K_.polytope();
    const Vec& ref = K_.reference();
    std::vector<double> gv(P.vertices.size() * m_), gr(m_);
    if (probe(ref, gr.data())) return;
    for (size_t v = 0; v < P.vertices.size(); ++v)
      if (probe(P.vertices[v], gv.data() + v * m_)) return;
    // Reverse order so the first boundary simplex is processed first.
    for (auto it = P.boundary.rbegin(); it != P.boundary.rend(); ++it) {
      Cell c;
      c.count = n_ + 1;
      c.gauges.resize(c.count * m_);
      c.pts[0] = ref;
      std::copy(gr.begin(), gr.end(), c.gauges.begin());
      for (int k = 0; k < n_; ++k) {
        int idx = (*it)[k];
        c.pts[k + 1] = P.vertices[idx];
        std::copy(gv.begin() + idx * m_, gv.begin() + (idx + 1) * m_,
                  c.gauges.begin() + (k + 1) * m_);
      }
      stack_.push_back(std::move(c));
    }
  }

  bool make_patch_point(const Vec& dir, Cell& c, int k) {
    Vec u = dir.normalized();
    c.dirs[k] = u;
    c.pts[k] = K_.boundary_point(u);
    return probe(c.pts[k], c.gauges.data() + k * m_);
  }

  void seed_patches() {
    std::vector<std::array<Vec, 3>> cells;
    if (n_ == 2) {
      const int N = 8;
      for (int k = N - 1; k >= 0; --k) {
        double a0 = 2 * std::numbers::pi * k / N, a1 = 2 * std::numbers::pi * (k + 1) / N;
        cells.push_back({make_vec({std::cos(a0), std::sin(a0)}),
                         make_vec({std::cos(a1), std::sin(a1)}), Vec()});
      }
    } else {
      // Octahedron faces, each split into four.
      for (int s = 7; s >= 0; --s) {
        Vec a = make_vec({(s & 1) ? -1.0 : 1.0, 0, 0});
        Vec b = make_vec({0, (s & 2) ? -1.0 : 1.0, 0});
        Vec c = make_vec({0, 0, (s & 4) ? -1.0 : 1.0});
        Vec ab = (a + b).normalized(), bc = (b + c).normalized(), ca = (c + a).normalized();
        cells.push_back({ab, bc, ca});
        cells.push_back({c, ca, bc});
        cells.push_back({b, bc, ab});
        cells.push_back({a, ab, ca});
      }
    }
    std::vector<double> gr(m_);
    if (probe(K_.reference(), gr.data())) return;
    for (const auto& dirs : cells) {
      Cell c;
      c.patch = true;
      c.count = n_;
      c.gauges.resize(n_ * m_);
      for (int k = 0; k < n_; ++k)
        if (make_patch_point(dirs[k], c, k)) return;
      stack_.push_back(std::move(c));
    }
    ref_gauges_ = gr;
  }

  // Index of a translate containing all listed gauge rows with slack, or -1.
  int common_translate(const double* g, int rows) const {
    for (int i = 0; i < m_; ++i) {
      bool ok = true;
      for (int v = 0; v < rows && ok; ++v) ok = g[v * m_ + i] <= lo_;
      if (ok) return i;
    }
    return -1;
  }

  void loop() {
    while (!stack_.empty()) {
      if (cert_.cells_examined >= opt_.max_cells) {
        aborted_ = true;
        return;
      }
      Cell c = std::move(stack_.back());
      stack_.pop_back();
      ++cert_.cells_examined;
      cert_.depth_reached = std::max(cert_.depth_reached, c.depth);
      if (c.patch ? process_patch(c) : process_simplex(c)) return;
    }
  }

  static std::pair<int, int> longest_edge(const Cell& c) {
    double best = -1.0;
    std::pair<int, int> e{0, 1};
    for (int a = 0; a < c.count; ++a)
      for (int b = a + 1; b < c.count; ++b) {
        double d = (c.pts[a] - c.pts[b]).squaredNorm();
        if (d > best) {
          best = d;
          e = {a, b};
        }
      }
    return e;
  }

  // Split point for an uncovered simplex. The translate holding the most
  // vertices is chosen; its longest edge leaving the translate is cut where
  // it crosses the level r − margin, so cells align with translate
  // boundaries. Every sixth level, and cells without such an edge, use the
  // longest-edge midpoint so cells keep shrinking.
  std::tuple<int, int, double> choose_split(const Cell& c) const {
    auto [la, lb] = longest_edge(c);
    const double longest = (c.pts[la] - c.pts[lb]).norm();
    int best_i = -1, best_count = 0;
    double best_sum = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m_; ++i) {
      int count = 0;
      double sum = 0.0;
      for (int v = 0; v < c.count; ++v) {
        double g = c.gauges[v * m_ + i];
        count += g <= lo_;
        sum += g;
      }
      if (count > best_count || (count == best_count && count > 0 && sum < best_sum)) {
        best_i = i;
        best_count = count;
        best_sum = sum;
      }
    }
    if (best_i >= 0 && c.depth % 6 != 5) {
      int ea = -1, eb = -1;
      double elen = -1.0;
      for (int u = 0; u < c.count; ++u) {
        if (c.gauges[u * m_ + best_i] > lo_) continue;
        for (int v = 0; v < c.count; ++v) {
          if (c.gauges[v * m_ + best_i] <= lo_) continue;
          double len = (c.pts[u] - c.pts[v]).norm();
          if (len > elen) {
            elen = len;
            ea = u;
            eb = v;
          }
        }
      }
      if (ea >= 0 && elen >= 0.3 * longest) {
        double t = table_.crossing(c.pts[ea], c.pts[eb], best_i, lo_ - 0.01 * opt_.margin);
        if (t > 1e-3 && t < 1.0 - 1e-3) return {ea, eb, t};
      }
    }
    return {la, lb, 0.5};
  }

  // Cells touching a known witness need no refinement.
  bool has_witness_vertex(const Cell& c) const {
    for (int v = 0; v < c.count; ++v) {
      if (outside(c.gauges.data() + v * m_)) return true;
    }
    return false;
  }

  // Returns true when enough witnesses were found.
  bool process_simplex(Cell& c) {
    if (common_translate(c.gauges.data(), c.count) >= 0) return false;
    if (cert_.witness && has_witness_vertex(c)) return false;
    if (c.depth >= opt_.max_depth) {
      ++cert_.unresolved_cells;
      return false;
    }
    auto [a, b, t] = choose_split(c);
    Vec mid = c.pts[a] + t * (c.pts[b] - c.pts[a]);
    std::vector<double> gm(m_);
    if (probe(mid, gm.data())) return true;
    Cell c1 = c, c2 = std::move(c);
    c1.depth = c2.depth = c2.depth + 1;
    c1.pts[b] = mid;
    std::copy(gm.begin(), gm.end(), c1.gauges.begin() + b * m_);
    c2.pts[a] = mid;
    std::copy(gm.begin(), gm.end(), c2.gauges.begin() + a * m_);
    stack_.push_back(std::move(c2));
    stack_.push_back(std::move(c1));
    return false;
  }

  void push_inner_simplex(const Cell& c) {
    Cell s;
    s.count = n_ + 1;
    s.gauges.resize(s.count * m_);
    s.pts[0] = K_.reference();
    std::copy(ref_gauges_.begin(), ref_gauges_.end(), s.gauges.begin());
    for (int k = 0; k < n_; ++k) {
      s.pts[k + 1] = c.pts[k];
      std::copy(c.gauges.begin() + k * m_, c.gauges.begin() + (k + 1) * m_,
                s.gauges.begin() + (k + 1) * m_);
    }
    stack_.push_back(std::move(s));
  }

  bool process_patch(Cell& c) {
    if (cert_.witness && has_witness_vertex(c)) return false;
    const Vec& ref = K_.reference();
    Vec nu;
    if (n_ == 2) {
      Vec e = c.pts[1] - c.pts[0];
      nu = make_vec({-e[1], e[0]});
    } else {
      Eigen::Vector3d e1 = c.pts[1] - c.pts[0], e2 = c.pts[2] - c.pts[0];
      nu = e1.cross(e2);
    }
    bool accepted = false;
    double nn = nu.norm();
    if (nn > 0 && std::isfinite(nn)) {
      nu /= nn;
      double d = nu.dot(c.pts[0] - ref);
      if (d < 0) {
        nu = -nu;
        d = -d;
      }
      if (d > 1e-12) {
        double h = K_.support(nu) - nu.dot(ref);
        double delta = std::max(0.0, h / d - 1.0);
        if (delta <= opt_.max_inflation) {
          std::vector<double> g(2 * n_ * m_);
          std::copy(c.gauges.begin(), c.gauges.end(), g.begin());
          for (int k = 0; k < n_; ++k) {
            Vec outer = ref + (1.0 + delta) * (c.pts[k] - ref);
            table_.eval(outer, g.data() + (n_ + k) * m_);
          }
          if (common_translate(g.data(), 2 * n_) >= 0) {
            accepted = true;
            ++cert_.boundary_patches;
            cert_.max_inflation_used = std::max(cert_.max_inflation_used, delta);
          }
        }
      }
    }
    if (accepted || c.depth >= opt_.max_depth) {
      if (!accepted) ++cert_.unresolved_cells;
      push_inner_simplex(c);
      return false;
    }
    auto [a, b] = longest_edge(c);
    Cell c1 = c, c2 = c;
    c1.depth = c2.depth = c.depth + 1;
    Vec dir = c.dirs[a] + c.dirs[b];
    Cell probe_cell;
    probe_cell.gauges.resize(m_);
    if (make_patch_point(dir, probe_cell, 0)) return true;
    c1.pts[b] = c2.pts[a] = probe_cell.pts[0];
    c1.dirs[b] = c2.dirs[a] = probe_cell.dirs[0];
    std::copy(probe_cell.gauges.begin(), probe_cell.gauges.end(), c1.gauges.begin() + b * m_);
    std::copy(probe_cell.gauges.begin(), probe_cell.gauges.end(), c2.gauges.begin() + a * m_);
    stack_.push_back(std::move(c2));
    stack_.push_back(std::move(c1));
    return false;
  }

  const ConvexBody& K_;
  const CoverOptions& opt_;
  GaugeTable table_;
  int m_ = 0, n_ = 0;
  double r_ = 0.0, lo_ = 0.0, hi_ = 0.0;
  std::vector<Cell> stack_;
  std::vector<double> ref_gauges_;
  CoverCertificate cert_;
  bool aborted_ = false;
  bool done_ = false;
};

void validate(const ConvexBody& K, const CoverConfig& cfg, const CoverOptions& opt) {
  if (cfg.centers.empty()) throw Error("invalid config: no centers");
  if (!(cfg.r > 0.0) || !(cfg.r <= 1.0) || !std::isfinite(cfg.r))
    throw Error("invalid config: ratio must lie in (0, 1]");
  for (const Vec& x : cfg.centers) {
    if (x.size() != K.dim()) throw Error("invalid config: center dimension mismatch");
    if (!x.allFinite()) throw Error("invalid config: non-finite center");
  }
  if (!(opt.margin >= 0.0) || opt.max_depth < 0 || opt.max_cells <= 0)
    throw Error("invalid config: bad verification options");
  const Vec& ref = K.reference();
  for (int k = 0; k < K.dim(); ++k)
    for (double s : {1.0, -1.0}) {
      Vec e = Vec::Zero(K.dim());
      e[k] = s;
      if (!(K.ray_exit(ref, e) > 1e-12)) throw Error("anchor not interior");
    }
}

}  // namespace

CoverCertificate verify_cover(const ConvexBody& K, const CoverConfig& cfg,
                              const CoverOptions& opt) {
  validate(K, cfg, opt);
  Verifier v(K, cfg, opt);
  return v.run();
}

}  // namespace covfun
