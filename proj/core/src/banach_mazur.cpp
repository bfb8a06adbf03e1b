#include "covfun/banach_mazur.hpp"

#include "covfun/lp.hpp"
#include "covfun/sampling.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>

namespace covfun {

double containment_factor(const ConvexBody& A, const ConvexBody& B, int sample) {
  Points pts = A.is_polytope() ? A.polytope().vertices : support_sample(A, sample);
  double g = 0.0;
  for (const Vec& p : pts) g = std::max(g, B.gauge(p));
  return g;
}

namespace {

struct Halfspaces {
  Points normals;
  std::vector<double> offsets;
};

Halfspaces outer_description(const ConvexBody& K) {
  Halfspaces H;
  if (K.is_polytope()) {
    H.normals = K.polytope().normals;
    H.offsets = K.polytope().offsets;
    return H;
  }
  for (const Vec& u : direction_grid(K.dim(), K.dim() == 2 ? 256 : 400)) {
    H.normals.push_back(u);
    H.offsets.push_back(K.support(u));
  }
  return H;
}

struct InnerSolution {
  double r = std::numeric_limits<double>::infinity();
  double lambda = 0.0;
  Vec x, xp;
};

// For a fixed linear map S: minimize r over lambda, x, x' subject to
//   K1 ⊆ lambda·S·K2 + x ⊆ r·K1 + x'.
InnerSolution solve_inner(const ConvexBody& K1, const Halfspaces& H1,
                          const ConvexBody& K2, const Halfspaces& H2,
                          const Mat& S) {
  InnerSolution out;
  const int n = K1.dim();
  double det = S.determinant();
  if (!std::isfinite(det) || std::abs(det) < 1e-8) return out;
  Mat SinvT = S.inverse().transpose();
  const int m2 = static_cast<int>(H2.normals.size());
  const int m1 = static_cast<int>(H1.normals.size());
  const int nv = 2 * n + 2;  // lambda, x, x', r
  Eigen::MatrixXd A(m2 + m1 + 1, nv);
  Eigen::VectorXd b(m2 + m1 + 1);
  A.setZero();
  for (int j = 0; j < m2; ++j) {
    Vec w = SinvT * H2.normals[j];
    A(j, 0) = -H2.offsets[j];
    A.block(j, 1, 1, n) = -w.transpose();
    b[j] = -K1.support(w);
  }
  for (int j = 0; j < m1; ++j) {
    const Vec& u = H1.normals[j];
    int row = m2 + j;
    A(row, 0) = K2.support(S.transpose() * u);
    A.block(row, 1, 1, n) = u.transpose();
    A.block(row, 1 + n, 1, n) = -u.transpose();
    A(row, nv - 1) = -H1.offsets[j];
    b[row] = 0.0;
  }
  A(m2 + m1, nv - 1) = 1.0;
  b[m2 + m1] = 1e6;
  Eigen::VectorXd c = Eigen::VectorXd::Zero(nv);
  c[nv - 1] = -1.0;
  LpResult lp = lp_maximize(A, b, c);
  if (lp.status != LpStatus::Optimal) return out;
  out.lambda = lp.x[0];
  out.x = lp.x.segment(1, n);
  out.xp = lp.x.segment(1 + n, n);
  out.r = lp.x[nv - 1];
  if (!(out.lambda > 0)) out.r = std::numeric_limits<double>::infinity();
  return out;
}

Mat rotation(int n, Rng& rng, int index) {
  if (n == 2) {
    double a = std::numbers::pi * (index % 16) / 16.0;
    Mat R(2, 2);
    R << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
    if (index >= 16) R.col(1) *= -1.0;
    return R;
  }
  if (index == 0) return Mat::Identity(3, 3);
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::Matrix3d G;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) G(i, j) = g(rng);
  Eigen::HouseholderQR<Eigen::Matrix3d> qr(G);
  Eigen::Matrix3d Q = qr.householderQ();
  return Mat(Q);
}

struct NelderMead {
  template <class F>
  static Eigen::VectorXd minimize(F&& f, Eigen::VectorXd x0, double step, int max_evals,
                                  std::chrono::steady_clock::time_point deadline,
                                  int& evals, double& fbest) {
    const int d = static_cast<int>(x0.size());
    std::vector<Eigen::VectorXd> pts(d + 1, x0);
    std::vector<double> val(d + 1);
    for (int i = 0; i < d; ++i) pts[i + 1][i] += step;
    for (int i = 0; i <= d; ++i) {
      val[i] = f(pts[i]);
      ++evals;
    }
    int local = d + 1;
    while (local < max_evals && std::chrono::steady_clock::now() < deadline) {
      std::vector<int> order(d + 1);
      for (int i = 0; i <= d; ++i) order[i] = i;
      std::sort(order.begin(), order.end(), [&](int a, int b) { return val[a] < val[b]; });
      const int best = order[0], worst = order[d], second = order[d - 1];
      if (std::abs(val[worst] - val[best]) < 1e-11 * (1.0 + std::abs(val[best]))) break;
      Eigen::VectorXd cen = Eigen::VectorXd::Zero(d);
      for (int i = 0; i <= d; ++i)
        if (i != worst) cen += pts[i];
      cen /= d;
      auto eval = [&](const Eigen::VectorXd& p) {
        ++evals;
        ++local;
        return f(p);
      };
      Eigen::VectorXd xr = cen + (cen - pts[worst]);
      double fr = eval(xr);
      if (fr < val[best]) {
        Eigen::VectorXd xe = cen + 2.0 * (cen - pts[worst]);
        double fe = eval(xe);
        if (fe < fr) {
          pts[worst] = xe;
          val[worst] = fe;
        } else {
          pts[worst] = xr;
          val[worst] = fr;
        }
      } else if (fr < val[second]) {
        pts[worst] = xr;
        val[worst] = fr;
      } else {
        Eigen::VectorXd xc = fr < val[worst] ? Eigen::VectorXd(cen + 0.5 * (xr - cen))
                                             : Eigen::VectorXd(cen + 0.5 * (pts[worst] - cen));
        double fc = eval(xc);
        if (fc < std::min(fr, val[worst])) {
          pts[worst] = xc;
          val[worst] = fc;
        } else {
          for (int i = 0; i <= d; ++i) {
            if (i == best) continue;
            pts[i] = pts[best] + 0.5 * (pts[i] - pts[best]);
            val[i] = eval(pts[i]);
          }
        }
      }
    }
    int bi = static_cast<int>(std::min_element(val.begin(), val.end()) - val.begin());
    fbest = val[bi];
    return pts[bi];
  }
};

}  // namespace

BmResult bm_distance_upper(const ConvexBody& K1, const ConvexBody& K2,
                           const SearchBudget& budget) {
  if (K1.dim() != K2.dim()) throw Error("bm_distance_upper: dimension mismatch");
  const int n = K1.dim();
  const auto deadline = std::chrono::steady_clock::now() +
                        std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                            std::chrono::duration<double>(budget.max_time));
  JohnResult J1 = john_normalize(K1);
  JohnResult J2 = john_normalize(K2);
  const ConvexBody& N1 = J1.body;
  const ConvexBody& N2 = J2.body;
  Halfspaces H1 = outer_description(N1);
  Halfspaces H2 = outer_description(N2);

  auto to_mat = [n](const Eigen::VectorXd& v) {
    Mat S(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) S(i, j) = v[i * n + j];
    return S;
  };
  auto to_vec = [n](const Mat& S) {
    Eigen::VectorXd v(n * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) v[i * n + j] = S(i, j);
    return v;
  };
  auto objective = [&](const Eigen::VectorXd& v) {
    InnerSolution s = solve_inner(N1, H1, N2, H2, to_mat(v));
    return std::isfinite(s.r) ? std::log(std::max(s.r, 1e-300)) : 1e3;
  };

  Rng rng(budget.seed);
  const int starts = std::max(1, budget.starts);
  int evals = 0;
  double best_f = std::numeric_limits<double>::infinity();
  Mat best_S = Mat::Identity(n, n);
  const int max_evals = std::max(50, static_cast<int>(std::min<std::int64_t>(
                                         budget.max_iterations, 150 * n * n)));
  for (int s = 0; s < starts; ++s) {
    if (s > 0 && std::chrono::steady_clock::now() >= deadline) break;
    Mat S0 = rotation(n, rng, s);
    double f = 0.0;
    Eigen::VectorXd v =
        NelderMead::minimize(objective, to_vec(S0), 0.15, max_evals, deadline, evals, f);
    // One restart from the optimum shakes off early simplex collapse.
    double f2 = 0.0;
    v = NelderMead::minimize(objective, v, 0.02, max_evals, deadline, evals, f2);
    f = std::min(f, f2);
    if (f < best_f - 1e-15) {
      best_f = f;
      best_S = to_mat(v);
    }
  }

  InnerSolution sol = solve_inner(N1, H1, N2, H2, best_S);
  if (!std::isfinite(sol.r)) {
    // Trivial John sandwich: B ⊆ N_i ⊆ nB.
    sol.lambda = 1.0 / n;
    sol.x = Vec::Zero(n);
    sol.xp = Vec::Zero(n);
    sol.r = static_cast<double>(n) * n;
    best_S = Mat::Identity(n, n);
  }
  // Re-verify in normalized coordinates and inflate by measured violations.
  ConvexBody L = transform(N2, sol.lambda * best_S, sol.x);
  ConvexBody outer = transform(N1, sol.r * Mat::Identity(n, n), sol.xp);
  double g1 = containment_factor(N1, L);
  double g2 = containment_factor(L, outer);
  double ratio = sol.r * g1 * g2;
  const Vec& refL = L.reference();
  const Vec ap = outer.reference();
  // Sandwich after inflation: N1 ⊆ g1·λ·S·N2 + t ⊆ ratio·N1 + y.
  Mat lin = g1 * sol.lambda * best_S;
  Vec t = g1 * sol.x + (1.0 - g1) * refL;
  Vec y = refL + g1 * (ap - refL) - ratio * N1.reference();

  // Back to original coordinates: N_i = A_i K_i + t_i.
  const Mat& A1 = J1.cert.matrix;
  const Vec& t1 = J1.cert.shift;
  const Mat& A2 = J2.cert.matrix;
  const Vec& t2 = J2.cert.shift;
  Mat A1inv = A1.inverse();
  BmResult out;
  out.map = A1inv * lin * A2;
  out.shift = A1inv * (lin * t2 + t - t1);
  out.outer_shift = A1inv * (ratio * t1 + y - t1);
  out.ratio = std::max(1.0, ratio);
  out.distance = std::max(0.0, std::log(ratio));
  out.evaluations = evals;
  out.starts = starts;
  out.cert.matrix = out.map;
  out.cert.shift = out.shift;
  out.cert.verified_inner = true;
  out.cert.verified_outer = true;
  out.cert.sample_count = (N1.is_polytope() && N2.is_polytope()) ? 0 : 10000;
  return out;
}

}  // namespace covfun
