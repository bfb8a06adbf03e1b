#include "covfun/hull.hpp"

#include "covfun/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_map>

namespace covfun {

double Polytope::max_violation(const Vec& p) const {
  double worst = -std::numeric_limits<double>::infinity();
  for (size_t j = 0; j < normals.size(); ++j)
    worst = std::max(worst, normals[j].dot(p) - offsets[j]);
  return worst;
}

namespace {

double cross2(const Vec& o, const Vec& a, const Vec& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

double bbox_scale(const Points& pts) {
  double s = 0.0;
  for (const Vec& p : pts) s = std::max(s, p.cwiseAbs().maxCoeff());
  return std::max(s, 1e-300);
}

Polytope hull2d(const Points& pts) {
  const double scale = bbox_scale(pts);
  std::vector<int> idx = hull2d_indices(pts, 1e-13 * scale * scale);
  if (idx.size() < 3) throw Error("empty interior");
  Polytope P;
  P.dim = 2;
  for (int i : idx) P.vertices.push_back(pts[i]);
  const int n = static_cast<int>(idx.size());
  for (int i = 0; i < n; ++i) {
    const Vec& a = P.vertices[i];
    const Vec& b = P.vertices[(i + 1) % n];
    Vec e = b - a;
    Vec nrm(2);
    nrm << e[1], -e[0];
    double len = nrm.norm();
    if (len <= 0) throw Error("empty interior");
    nrm /= len;
    P.normals.push_back(nrm);
    P.offsets.push_back(std::max(nrm.dot(a), nrm.dot(b)));
    P.boundary.push_back({i, (i + 1) % n, -1});
  }
  return P;
}

// Quickhull in 3-D with outside sets and an edge map for adjacency.
class QuickHull3 {
 public:
  explicit QuickHull3(const Points& pts) : pts_(pts) {
    scale_ = bbox_scale(pts);
    eps_ = 1e-12 * scale_ * 3.0;
  }

  struct Face {
    std::array<int, 3> v;
    Eigen::Vector3d n;
    double d = 0.0;
    std::vector<int> outside;
    bool alive = true;
  };

  std::vector<Face> faces;

  void run() {
    build_initial();
    std::vector<int> stack;
    for (int f = 0; f < static_cast<int>(faces.size()); ++f)
      if (!faces[f].outside.empty()) stack.push_back(f);
    while (!stack.empty()) {
      int f = stack.back();
      stack.pop_back();
      if (!faces[f].alive || faces[f].outside.empty()) continue;
      int eye = furthest(faces[f]);
      add_point(f, eye, stack);
    }
  }

 private:
  Eigen::Vector3d p(int i) const { return pts_[i].head<3>(); }

  static uint64_t key(int a, int b) {
    return (static_cast<uint64_t>(static_cast<uint32_t>(a)) << 32) |
           static_cast<uint32_t>(b);
  }

  double dist(const Face& f, int i) const { return f.n.dot(p(i)) - f.d; }

  int furthest(const Face& f) const {
    int best = f.outside.front();
    double bd = dist(f, best);
    for (int i : f.outside) {
      double d = dist(f, i);
      if (d > bd) {
        bd = d;
        best = i;
      }
    }
    return best;
  }

  int make_face(int a, int b, int c) {
    Face f;
    f.v = {a, b, c};
    Eigen::Vector3d n = (p(b) - p(a)).cross(p(c) - p(a));
    double len = n.norm();
    if (len <= 0) len = 1e-300;
    f.n = n / len;
    f.d = f.n.dot(p(a));
    faces.push_back(std::move(f));
    int id = static_cast<int>(faces.size()) - 1;
    edges_[key(a, b)] = id;
    edges_[key(b, c)] = id;
    edges_[key(c, a)] = id;
    return id;
  }

  void kill_face(int id) {
    Face& f = faces[id];
    f.alive = false;
    for (int e = 0; e < 3; ++e) {
      auto it = edges_.find(key(f.v[e], f.v[(e + 1) % 3]));
      if (it != edges_.end() && it->second == id) edges_.erase(it);
    }
  }

  void build_initial() {
    const int n = static_cast<int>(pts_.size());
    if (n < 4) throw Error("empty interior");
    int i0 = 0, i1 = 0;
    for (int axis = 0; axis < 3; ++axis) {
      int lo = 0, hi = 0;
      for (int i = 0; i < n; ++i) {
        if (pts_[i][axis] < pts_[lo][axis]) lo = i;
        if (pts_[i][axis] > pts_[hi][axis]) hi = i;
      }
      if ((p(hi) - p(lo)).norm() > (p(i1) - p(i0)).norm()) {
        i0 = lo;
        i1 = hi;
      }
    }
    Eigen::Vector3d dir = p(i1) - p(i0);
    if (dir.norm() <= eps_) throw Error("empty interior");
    dir.normalize();
    int i2 = -1;
    double best = eps_;
    for (int i = 0; i < n; ++i) {
      Eigen::Vector3d w = p(i) - p(i0);
      double d = (w - dir * dir.dot(w)).norm();
      if (d > best) {
        best = d;
        i2 = i;
      }
    }
    if (i2 < 0) throw Error("empty interior");
    Eigen::Vector3d nrm = (p(i1) - p(i0)).cross(p(i2) - p(i0)).normalized();
    int i3 = -1;
    best = eps_ * 10;
    for (int i = 0; i < n; ++i) {
      double d = std::abs(nrm.dot(p(i) - p(i0)));
      if (d > best) {
        best = d;
        i3 = i;
      }
    }
    if (i3 < 0) throw Error("empty interior");
    if (nrm.dot(p(i3) - p(i0)) > 0) std::swap(i1, i2);
    // Now i3 lies below the plane (i0,i1,i2) oriented outward.
    std::array<int, 4> t = {i0, i1, i2, i3};
    make_face(t[0], t[1], t[2]);
    make_face(t[0], t[3], t[1]);
    make_face(t[1], t[3], t[2]);
    make_face(t[2], t[3], t[0]);
    for (int i = 0; i < n; ++i) {
      if (i == i0 || i == i1 || i == i2 || i == i3) continue;
      assign(i, 0, 4);
    }
  }

  void assign(int i, int first, int last) {
    double best = eps_;
    int bf = -1;
    for (int f = first; f < last; ++f) {
      if (!faces[f].alive) continue;
      double d = dist(faces[f], i);
      if (d > best) {
        best = d;
        bf = f;
      }
    }
    if (bf >= 0) faces[bf].outside.push_back(i);
  }

  void add_point(int start, int eye, std::vector<int>& stack) {
    std::vector<int> visible;
    // mark[f] is valid only when seen_[f] == epoch_.
    ++epoch_;
    seen_.resize(faces.size(), 0);
    mark_.resize(faces.size(), 0);
    auto mark_of = [&](int f) { return seen_[f] == epoch_ ? mark_[f] : 0; };
    auto set_mark = [&](int f, char v) {
      seen_[f] = epoch_;
      mark_[f] = v;
    };
    std::vector<int> bfs = {start};
    set_mark(start, 1);
    while (!bfs.empty()) {
      int f = bfs.back();
      bfs.pop_back();
      visible.push_back(f);
      for (int e = 0; e < 3; ++e) {
        int a = faces[f].v[e], b = faces[f].v[(e + 1) % 3];
        auto it = edges_.find(key(b, a));
        if (it == edges_.end()) continue;
        int g = it->second;
        if (mark_of(g)) continue;
        if (dist(faces[g], eye) > eps_) {
          set_mark(g, 1);
          bfs.push_back(g);
        } else {
          set_mark(g, 2);
        }
      }
    }
    // Horizon: edges of visible faces whose twin face is not visible.
    std::vector<std::pair<int, int>> horizon;
    for (int f : visible) {
      for (int e = 0; e < 3; ++e) {
        int a = faces[f].v[e], b = faces[f].v[(e + 1) % 3];
        auto it = edges_.find(key(b, a));
        if (it == edges_.end() || mark_of(it->second) != 1)
          horizon.emplace_back(a, b);
      }
    }
    std::vector<int> orphans;
    for (int f : visible) {
      for (int i : faces[f].outside)
        if (i != eye) orphans.push_back(i);
      faces[f].outside.clear();
      faces[f].outside.shrink_to_fit();
      kill_face(f);
    }
    const int first = static_cast<int>(faces.size());
    for (auto [a, b] : horizon) make_face(a, b, eye);
    const int last = static_cast<int>(faces.size());
    for (int i : orphans) assign(i, first, last);
    for (int f = first; f < last; ++f)
      if (!faces[f].outside.empty()) stack.push_back(f);
  }

  const Points& pts_;
  double scale_;
  double eps_;
  std::unordered_map<uint64_t, int> edges_;
  std::vector<int> seen_;
  std::vector<char> mark_;
  int epoch_ = 0;
};

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

Polytope hull3d(const Points& pts) {
  QuickHull3 qh(pts);
  qh.run();
  const double scale = bbox_scale(pts);
  std::vector<int> live;
  for (int f = 0; f < static_cast<int>(qh.faces.size()); ++f)
    if (qh.faces[f].alive) live.push_back(f);
  const int nf = static_cast<int>(live.size());
  std::unordered_map<uint64_t, int> edge_face;
  auto key = [](int a, int b) {
    return (static_cast<uint64_t>(static_cast<uint32_t>(a)) << 32) |
           static_cast<uint32_t>(b);
  };
  for (int k = 0; k < nf; ++k) {
    const auto& v = qh.faces[live[k]].v;
    for (int e = 0; e < 3; ++e) edge_face[key(v[e], v[(e + 1) % 3])] = k;
  }
  // Merge coplanar neighbours into facets.
  Dsu dsu(nf);
  const double tol = 1e-10 * scale;
  for (int k = 0; k < nf; ++k) {
    const auto& f = qh.faces[live[k]];
    for (int e = 0; e < 3; ++e) {
      auto it = edge_face.find(key(f.v[(e + 1) % 3], f.v[e]));
      if (it == edge_face.end()) continue;
      const auto& g = qh.faces[live[it->second]];
      bool coplanar = f.n.dot(g.n) > 1.0 - 1e-10;
      if (coplanar) {
        for (int q : g.v)
          if (std::abs(f.n.dot(pts[q].head<3>()) - f.d) > tol) coplanar = false;
      }
      if (coplanar) dsu.unite(k, it->second);
    }
  }
  std::unordered_map<int, std::vector<int>> groups;
  for (int k = 0; k < nf; ++k) groups[dsu.find(k)].push_back(k);
  std::vector<int> roots;
  for (auto& [r, _] : groups) roots.push_back(r);
  std::sort(roots.begin(), roots.end());

  Polytope P;
  P.dim = 3;
  std::unordered_map<int, int> vmap;
  auto vertex_id = [&](int i) {
    auto it = vmap.find(i);
    if (it != vmap.end()) return it->second;
    int id = static_cast<int>(P.vertices.size());
    P.vertices.push_back(pts[i]);
    vmap[i] = id;
    return id;
  };
  for (int r : roots) {
    const auto& members = groups[r];
    Eigen::Vector3d n = Eigen::Vector3d::Zero();
    std::vector<int> verts;
    for (int k : members) {
      const auto& f = qh.faces[live[k]];
      Eigen::Vector3d a = pts[f.v[0]].head<3>(), b = pts[f.v[1]].head<3>(),
                      c = pts[f.v[2]].head<3>();
      n += (b - a).cross(c - a);
      for (int q : f.v) verts.push_back(q);
    }
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    n.normalize();
    double off = -std::numeric_limits<double>::infinity();
    for (int q : verts) off = std::max(off, n.dot(pts[q].head<3>()));
    P.normals.push_back(Vec(n));
    P.offsets.push_back(off);
    // Re-triangulate the facet from its planar hull, dropping points that
    // are not extreme within the facet.
    Eigen::Vector3d e1 = n.unitOrthogonal();
    Eigen::Vector3d e2 = n.cross(e1);
    Points flat;
    for (int q : verts) {
      Eigen::Vector3d x = pts[q].head<3>();
      Vec f2(2);
      f2 << e1.dot(x), e2.dot(x);
      flat.push_back(f2);
    }
    std::vector<int> ring = hull2d_indices(flat, 1e-13 * scale * scale);
    // hull2d_indices is ccw in (e1,e2), which is ccw seen from outside.
    for (size_t t = 1; t + 1 < ring.size(); ++t) {
      P.boundary.push_back({vertex_id(verts[ring[0]]), vertex_id(verts[ring[t]]),
                            vertex_id(verts[ring[t + 1]])});
    }
  }
  if (P.normals.size() < 4) throw Error("empty interior");
  return P;
}

}  // namespace

std::vector<int> hull2d_indices(const Points& pts, double eps) {
  const int n = static_cast<int>(pts.size());
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    if (pts[a][0] != pts[b][0]) return pts[a][0] < pts[b][0];
    return pts[a][1] < pts[b][1];
  });
  idx.erase(std::unique(idx.begin(), idx.end(),
                        [&](int a, int b) { return pts[a] == pts[b]; }),
            idx.end());
  if (idx.size() < 3) return idx;
  std::vector<int> h(2 * idx.size());
  int k = 0;
  for (int i : idx) {
    while (k >= 2 && cross2(pts[h[k - 2]], pts[h[k - 1]], pts[i]) <= eps) --k;
    h[k++] = i;
  }
  for (int t = static_cast<int>(idx.size()) - 2, lower = k + 1; t >= 0; --t) {
    int i = idx[t];
    while (k >= lower && cross2(pts[h[k - 2]], pts[h[k - 1]], pts[i]) <= eps) --k;
    h[k++] = i;
  }
  h.resize(std::max(0, k - 1));
  return h;
}

Polytope convex_hull(const Points& points) {
  if (points.empty()) throw Error("empty interior");
  const int dim = static_cast<int>(points.front().size());
  for (const Vec& p : points) {
    if (p.size() != dim) throw Error("convex_hull: mixed dimensions");
    if (!p.allFinite()) throw Error("convex_hull: non-finite coordinate");
  }
  if (dim == 2) return hull2d(points);
  if (dim == 3) return hull3d(points);
  throw Error("convex_hull: dimension must be 2 or 3");
}

Polytope halfspace_intersection(const Points& normals,
                                const std::vector<double>& offsets) {
  if (normals.size() != offsets.size() || normals.empty())
    throw Error("halfspace_intersection: bad input");
  const int dim = static_cast<int>(normals.front().size());
  ChebyshevBall ball = chebyshev_ball(normals, offsets);
  // Polar duality about the Chebyshev center.
  Points dual;
  dual.reserve(normals.size());
  for (size_t j = 0; j < normals.size(); ++j) {
    double slack = offsets[j] - normals[j].dot(ball.center);
    if (slack <= 0) throw Error("empty interior");
    dual.push_back(normals[j] / slack);
  }
  Polytope D;
  try {
    D = convex_hull(dual);
  } catch (const Error&) {
    throw Error("halfspace_intersection: unbounded region");
  }
  Points verts;
  for (size_t f = 0; f < D.normals.size(); ++f) {
    if (D.offsets[f] <= kGeoTol * 1e-3)
      throw Error("halfspace_intersection: unbounded region");
    verts.push_back(ball.center + D.normals[f] / D.offsets[f]);
  }
  Polytope P = convex_hull(verts);
  if (P.dim != dim) throw Error("halfspace_intersection: dimension");
  return P;
}

}  // namespace covfun
