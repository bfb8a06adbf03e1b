#include "covfun/hexagon.hpp"

#include "covfun/metrics.hpp"
#include "covfun/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

namespace covfun {
namespace {

struct Interval {
  double lo = 0.0, hi = -1.0;
  double length() const { return std::max(0.0, hi - lo); }
};

class ChordOracle {
 public:
  ChordOracle(const ConvexBody& D, double phi) : D_(D) {
    u_ = Vec(2);
    u_ << std::cos(phi), std::sin(phi);
    n_ = Vec(2);
    n_ << -u_[1], u_[0];
    s_hi_ = D.support(n_);
    s_lo_ = -D.support(-n_);
    reach_ = std::max(D.support(u_), D.support(-u_)) + 1.0;
  }

  const Vec& u() const { return u_; }
  const Vec& n() const { return n_; }
  double s_lo() const { return s_lo_; }
  double s_hi() const { return s_hi_; }

  // Parameter interval of {s·n + λ·u} ∩ D.
  Interval chord(double s) const {
    Interval I;
    if (D_.is_polytope()) {
      I.lo = -std::numeric_limits<double>::infinity();
      I.hi = std::numeric_limits<double>::infinity();
      const Polytope& P = D_.polytope();
      for (size_t j = 0; j < P.normals.size(); ++j) {
        double nu = P.normals[j].dot(u_);
        double rhs = P.offsets[j] - s * P.normals[j].dot(n_);
        if (std::abs(nu) < 1e-15) {
          if (rhs < 0) return Interval{};
          continue;
        }
        if (nu > 0) I.hi = std::min(I.hi, rhs / nu);
        else I.lo = std::max(I.lo, rhs / nu);
      }
      return I;
    }
    // Golden-section search for the deepest point of the line, then exits.
    auto g = [&](double lam) { return D_.gauge(s * n_ + lam * u_); };
    double a = -reach_, b = reach_;
    const double r = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - r * (b - a), x2 = a + r * (b - a);
    double f1 = g(x1), f2 = g(x2);
    for (int it = 0; it < 90 && b - a > 1e-13; ++it) {
      if (f1 < f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - r * (b - a);
        f1 = g(x1);
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + r * (b - a);
        f2 = g(x2);
      }
    }
    double lam = 0.5 * (a + b);
    if (g(lam) >= 1.0) return Interval{};
    Vec p = s * n_ + lam * u_;
    I.hi = lam + D_.ray_exit(p, u_);
    I.lo = lam - D_.ray_exit(p, -u_);
    return I;
  }

 private:
  const ConvexBody& D_;
  Vec u_, n_;
  double s_lo_, s_hi_, reach_;
};

// Root of f on [lo, hi] given opposite signs at the ends.
template <class F>
double root(F&& f, double lo, double hi, int iters = 200) {
  const bool lo_positive = f(lo) > 0;
  for (int it = 0; it < iters; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if ((f(mid) > 0) == lo_positive) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

struct Configuration {
  double t = 0.0;
  Interval mid_chord;
  double s_plus = 0.0, s_minus = 0.0;
  Interval upper, lower;
  double half = 0.0;  // ℓ(t)/2
  double g = 0.0;
  double m_plus = 0.0, m_minus = 0.0;
};

Configuration solve_direction(const ChordOracle& C) {
  const double span = C.s_hi() - C.s_lo();
  const double edge = 1e-12 * span;
  auto s_pair = [&](double t, double& sp, double& sm) {
    double half = 0.5 * C.chord(t).length();
    auto above = [&](double s) { return C.chord(s).length() - half; };
    double top = C.s_hi() - edge, bottom = C.s_lo() + edge;
    sp = above(top) >= 0 ? C.s_hi() : root(above, t, top);
    sm = above(bottom) >= 0 ? C.s_lo() : root(above, bottom, t);
  };
  auto h = [&](double t) {
    double sp, sm;
    s_pair(t, sp, sm);
    return (sp - t) - (t - sm);
  };
  double lo = C.s_lo() + 1e-9 * span, hi = C.s_hi() - 1e-9 * span;
  double t;
  double hlo = h(lo), hhi = h(hi);
  if (hlo > 0 && hhi <= 0) {
    t = root(h, lo, hi);
  } else {
    // Scan for a sign change.
    const int N = 200;
    double prev = lo, hprev = hlo;
    t = 0.5 * (lo + hi);
    for (int i = 1; i <= N; ++i) {
      double x = lo + (hi - lo) * i / N;
      double hx = h(x);
      if (hprev > 0 && hx <= 0) {
        t = root(h, prev, x);
        break;
      }
      prev = x;
      hprev = hx;
    }
  }
  Configuration cfg;
  cfg.t = t;
  cfg.mid_chord = C.chord(t);
  cfg.half = 0.5 * cfg.mid_chord.length();
  s_pair(t, cfg.s_plus, cfg.s_minus);
  cfg.upper = C.chord(cfg.s_plus);
  cfg.lower = C.chord(cfg.s_minus);
  const double w = cfg.half;
  // Admissible midpoints of length-w sub-chords.
  double lo_p = cfg.upper.lo + w / 2, hi_p = std::max(lo_p, cfg.upper.hi - w / 2);
  double lo_m = cfg.lower.lo + w / 2, hi_m = std::max(lo_m, cfg.lower.hi - w / 2);
  if (cfg.upper.length() < w) lo_p = hi_p = 0.5 * (cfg.upper.lo + cfg.upper.hi);
  if (cfg.lower.length() < w) lo_m = hi_m = 0.5 * (cfg.lower.lo + cfg.lower.hi);
  const double m0 = 0.5 * (cfg.mid_chord.lo + cfg.mid_chord.hi);
  const double L = lo_p + lo_m, H = hi_p + hi_m;
  const double target = std::clamp(2 * m0, L, H);
  cfg.g = target - 2 * m0;
  double slack = target - L;
  double rp = hi_p - lo_p, rm = hi_m - lo_m;
  double share = rp + rm > 0 ? rp / (rp + rm) : 0.5;
  cfg.m_plus = lo_p + slack * share;
  cfg.m_minus = target - cfg.m_plus;
  return cfg;
}

double diameter_angle(const ConvexBody& D) {
  if (D.is_polytope()) {
    const Points& V = D.polytope().vertices;
    double best = -1.0;
    Vec dir(2);
    dir << 1.0, 0.0;
    for (size_t i = 0; i < V.size(); ++i)
      for (size_t j = i + 1; j < V.size(); ++j) {
        double d = (V[i] - V[j]).norm();
        if (d > best + 1e-12) {
          best = d;
          dir = V[i] - V[j];
        }
      }
    return std::atan2(dir[1], dir[0]);
  }
  double best = -1.0, angle = 0.0;
  const int N = 4096;
  for (int i = 0; i < N / 2; ++i) {
    double a = std::numbers::pi * i / (N / 2);
    Vec u(2);
    u << std::cos(a), std::sin(a);
    double w = D.support(u) + D.support(-u);
    if (w > best + 1e-12) {
      best = w;
      angle = a;
    }
  }
  return angle;
}

}  // namespace

AffineHexagon inscribe_affine_hexagon(const ConvexBody& D) {
  if (D.dim() != 2) throw Error("inscribe_affine_hexagon: body must be planar");
  const double phi0 = diameter_angle(D);
  auto g_of = [&](double phi) { return solve_direction(ChordOracle(D, phi)).g; };
  double g0 = g_of(phi0);
  double phi = phi0;
  const double gtol = 1e-13;
  if (std::abs(g0) > gtol) {
    double lo = phi0, hi = phi0 + std::numbers::pi;
    double glo = g0, ghi = g_of(hi);
    if (glo * ghi > 0) {
      throw Error("inscribe_affine_hexagon: failed to bracket (g(φ0) = " +
                  std::to_string(glo) + ", g(φ0+π) = " + std::to_string(ghi) + ")");
    }
    for (int it = 0; it < 200; ++it) {
      double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      double gm = g_of(mid);
      if (std::abs(gm) <= gtol) {
        lo = hi = mid;
        break;
      }
      if ((gm > 0) == (glo > 0)) {
        lo = mid;
        glo = gm;
      } else {
        hi = mid;
      }
    }
    phi = 0.5 * (lo + hi);
  }
  ChordOracle C(D, phi);
  Configuration cfg = solve_direction(C);
  const Vec& u = C.u();
  const Vec& n = C.n();
  const double m0 = 0.5 * (cfg.mid_chord.lo + cfg.mid_chord.hi);
  Vec o = cfg.t * n + m0 * u;
  Vec a = cfg.half * u;
  Vec v2 = cfg.s_plus * n + (cfg.m_plus + cfg.half / 2) * u;
  Vec b = v2 - o;
  AffineHexagon H;
  H.center = o;
  H.vertices = {o + a, o + b, o + b - a, o - a, o - b, o - b + a};
  H.diagonal_angle = phi;
  for (const Vec& v : H.vertices)
    H.boundary_residual = std::max(H.boundary_residual, std::abs(D.gauge(v) - 1.0));
  for (int i = 0; i < 3; ++i)
    H.symmetry_residual = std::max(
        H.symmetry_residual, (H.vertices[i] + H.vertices[i + 3] - 2.0 * o).norm());
  if (H.boundary_residual > kBoundaryTol) {
    throw Error("inscribe_affine_hexagon: boundary residual " +
                std::to_string(H.boundary_residual) + " exceeds tolerance");
  }
  return H;
}

}  // namespace covfun
