#include "covfun/search.hpp"

#include "covfun/lp.hpp"
#include "covfun/metrics.hpp"
#include "covfun/parallel.hpp"
#include "covfun/sampling.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>

namespace covfun {

double volume_lower_bound(const ConvexBody& K, int m) {
  if (m < 1) throw Error("volume_lower_bound: m must be positive");
  return std::pow(1.0 / m, 1.0 / K.dim());
}

namespace {

using Clock = std::chrono::steady_clock;
using Centers = Eigen::MatrixXd;  // m × n

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Gauge values and gradients of p − x over a fixed point sample.
class SampleGauge {
 public:
  explicit SampleGauge(const ConvexBody& K) : K_(K), n_(K.dim()) {
    if (K.is_polytope()) {
      mode_ = Mode::Polytope;
      const Polytope& P = K.polytope();
      R_.resize(static_cast<Eigen::Index>(P.normals.size()), n_);
      for (size_t j = 0; j < P.normals.size(); ++j)
        R_.row(j) = P.normals[j].transpose() / (P.offsets[j] - P.normals[j].dot(K.reference()));
    } else if (K.kind() == BodyKind::LpBall) {
      mode_ = Mode::Lp;
      p_ = K.lp_exponent();
    }
  }

  void set_points(const Points& pts) {
    pts_ = pts;
    if (mode_ == Mode::Polytope) {
      Y_.resize(static_cast<Eigen::Index>(pts.size()), R_.rows());
      for (size_t k = 0; k < pts.size(); ++k) {
        Eigen::VectorXd q = pts[k] - K_.reference();
        Y_.row(k) = (R_ * q).transpose();
      }
    }
  }
  void add_points(const Points& extra) {
    Points pts = pts_;
    pts.insert(pts.end(), extra.begin(), extra.end());
    set_points(pts);
  }
  const Points& points() const { return pts_; }
  int size() const { return static_cast<int>(pts_.size()); }
  bool polytope() const { return mode_ == Mode::Polytope; }
  const Eigen::MatrixXd& rows() const { return R_; }
  const Eigen::MatrixXd& projected() const { return Y_; }

  // Precomputation for a center matrix (polytope mode: R x_i).
  void prepare(const Centers& X) {
    if (mode_ == Mode::Polytope) RX_ = R_ * X.transpose();  // F × m
  }

  // Gauge of pts[k] − x_i; when grad != nullptr also d gauge / d x_i.
  double value(int k, const Centers& X, int i, Vec* grad) const {
    switch (mode_) {
      case Mode::Polytope: {
        const Eigen::Index F = R_.cols() == 0 ? 0 : R_.rows();
        double best = -std::numeric_limits<double>::infinity();
        Eigen::Index arg = 0;
        for (Eigen::Index j = 0; j < F; ++j) {
          double v = Y_(k, j) - RX_(j, i);
          if (v > best) {
            best = v;
            arg = j;
          }
        }
        if (grad) *grad = -R_.row(arg).transpose();
        return best;
      }
      case Mode::Lp: {
        Vec d = pts_[k] - X.row(i).transpose();
        if (p_ == 2.0) {
          double nrm = d.norm();
          if (grad) *grad = nrm > 0 ? Vec(-d / nrm) : Vec(Vec::Zero(n_));
          return nrm;
        }
        double nrm = lp_norm(d, p_);
        if (grad) {
          Vec gr(n_);
          for (int c = 0; c < n_; ++c) {
            double a = std::abs(d[c]);
            gr[c] = nrm > 0 ? -std::copysign(std::pow(a / nrm, p_ - 1.0), d[c]) : 0.0;
          }
          *grad = gr;
        }
        return nrm;
      }
      case Mode::Generic:
      default: {
        Vec d = pts_[k] - X.row(i).transpose();
        if (grad) *grad = -K_.gauge_gradient(d);
        return K_.gauge(d);
      }
    }
  }

 private:
  enum class Mode { Polytope, Lp, Generic };
  const ConvexBody& K_;
  int n_;
  Mode mode_ = Mode::Generic;
  double p_ = 2.0;
  Points pts_;
  Eigen::MatrixXd R_, Y_, RX_;
};

// max over the sample of min_i gauge, with the argmin assignment.
double hard_value(SampleGauge& S, const Centers& X, std::vector<int>* assign = nullptr,
                  int* worst = nullptr) {
  S.prepare(X);
  const int m = static_cast<int>(X.rows());
  double worst_v = -std::numeric_limits<double>::infinity();
  if (assign) assign->assign(S.size(), 0);
  for (int k = 0; k < S.size(); ++k) {
    double best = std::numeric_limits<double>::infinity();
    int arg = 0;
    for (int i = 0; i < m; ++i) {
      double g = S.value(k, X, i, nullptr);
      if (g < best) {
        best = g;
        arg = i;
      }
    }
    if (assign) (*assign)[k] = arg;
    if (best > worst_v) {
      worst_v = best;
      if (worst) *worst = k;
    }
  }
  return worst_v;
}

struct AdamSchedule {
  int iterations = 400;
  double beta0 = 30.0, beta1 = 3000.0;
  double lr0 = 0.03, lr1 = 3e-4;  // relative to the body scale
};

// Adam on the log-sum-exp smoothing; returns the iterate with the best hard
// value seen.
double adam(SampleGauge& S, Centers& X, const AdamSchedule& sch, double scale,
            Clock::time_point deadline) {
  const int m = static_cast<int>(X.rows());
  const int n = static_cast<int>(X.cols());
  const int N = S.size();
  Centers M1 = Centers::Zero(m, n), M2 = Centers::Zero(m, n);
  Centers best_X = X;
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> g(static_cast<size_t>(N) * m), smin(N);
  std::vector<Vec> grads(static_cast<size_t>(N) * m);
  const double b1 = 0.9, b2 = 0.999, eps = 1e-12;
  for (int t = 0; t < sch.iterations; ++t) {
    if ((t & 15) == 0 && Clock::now() >= deadline) break;
    const double frac = sch.iterations > 1 ? static_cast<double>(t) / (sch.iterations - 1) : 1.0;
    const double beta = sch.beta0 * std::pow(sch.beta1 / sch.beta0, frac);
    const double lr = scale * sch.lr0 * std::pow(sch.lr1 / sch.lr0, frac);
    S.prepare(X);
    double hard = -std::numeric_limits<double>::infinity();
    double smax = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < N; ++k) {
      double gmin = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m; ++i) {
        double v = S.value(k, X, i, &grads[static_cast<size_t>(k) * m + i]);
        g[static_cast<size_t>(k) * m + i] = v;
        gmin = std::min(gmin, v);
      }
      double z = 0.0;
      for (int i = 0; i < m; ++i) z += std::exp(-beta * (g[static_cast<size_t>(k) * m + i] - gmin));
      smin[k] = gmin - std::log(z) / beta;
      hard = std::max(hard, gmin);
      smax = std::max(smax, smin[k]);
    }
    if (hard < best) {
      best = hard;
      best_X = X;
    }
    double W = 0.0;
    for (int k = 0; k < N; ++k) W += std::exp(beta * (smin[k] - smax));
    Centers G = Centers::Zero(m, n);
    for (int k = 0; k < N; ++k) {
      double wp = std::exp(beta * (smin[k] - smax)) / W;
      if (wp < 1e-14) continue;
      for (int i = 0; i < m; ++i) {
        double si = std::exp(-beta * (g[static_cast<size_t>(k) * m + i] - smin[k]));
        if (si < 1e-14) continue;
        G.row(i) += wp * si * grads[static_cast<size_t>(k) * m + i].transpose();
      }
    }
    M1 = b1 * M1 + (1 - b1) * G;
    M2 = b2 * M2 + (1 - b2) * G.cwiseProduct(G);
    const double c1 = 1 - std::pow(b1, t + 1), c2 = 1 - std::pow(b2, t + 1);
    X.array() -= lr * (M1.array() / c1) / ((M2.array() / c2).sqrt() + eps);
  }
  double final_hard = hard_value(S, X);
  if (final_hard < best) {
    best = final_hard;
    best_X = X;
  }
  X = best_X;
  return best;
}

// Exact minimax center of a cluster for a polytope body: min t subject to
// gauge(p − x) <= t for every p in the cluster, with an active-set loop.
bool cluster_center_lp(const SampleGauge& S, const std::vector<int>& members, Vec& x,
                       double& t) {
  const Eigen::MatrixXd& R = S.rows();
  const Eigen::MatrixXd& Y = S.projected();
  const int n = static_cast<int>(R.cols());
  const Eigen::Index F = R.rows();
  auto value_at = [&](int k, const Vec& c) {
    Eigen::VectorXd rc = R * Eigen::VectorXd(c);
    return (Y.row(k).transpose() - rc).maxCoeff();
  };
  std::vector<double> vals(members.size());
  double cur = -1;
  for (size_t q = 0; q < members.size(); ++q) {
    vals[q] = value_at(members[q], x);
    cur = std::max(cur, vals[q]);
  }
  std::vector<char> active(members.size(), 0);
  for (size_t q = 0; q < members.size(); ++q) active[q] = vals[q] >= cur - 0.25 * cur - 1e-9;
  for (int round = 0; round < 20; ++round) {
    int count = 0;
    for (char a : active) count += a;
    Eigen::MatrixXd A(count * F, n + 1);
    Eigen::VectorXd b(count * F);
    int row = 0;
    for (size_t q = 0; q < members.size(); ++q) {
      if (!active[q]) continue;
      for (Eigen::Index j = 0; j < F; ++j) {
        A.block(row, 0, 1, n) = -R.row(j);
        A(row, n) = -1.0;
        b[row] = -Y(members[q], j);
        ++row;
      }
    }
    Eigen::VectorXd c = Eigen::VectorXd::Zero(n + 1);
    c[n] = -1.0;
    LpResult lp = lp_maximize(A, b, c, 20000);
    if (lp.status != LpStatus::Optimal) return false;
    Vec nx = lp.x.head(n);
    double nt = lp.x[n];
    bool added = false;
    double real = nt;
    for (size_t q = 0; q < members.size(); ++q) {
      double v = value_at(members[q], nx);
      real = std::max(real, v);
      if (!active[q] && v > nt + 1e-12) {
        active[q] = 1;
        added = true;
      }
    }
    if (!added) {
      x = nx;
      t = real;
      return true;
    }
  }
  return false;
}

// Lloyd-style refinement with exact cluster centers where available.
double lloyd(SampleGauge& S, Centers& X, bool euclidean_ball, int rounds,
             Clock::time_point deadline) {
  if (!S.polytope() && !euclidean_ball) return hard_value(S, X);
  std::vector<int> assign;
  double cur = hard_value(S, X, &assign);
  const int m = static_cast<int>(X.rows());
  for (int it = 0; it < rounds && Clock::now() < deadline; ++it) {
    Centers Y = X;
    for (int i = 0; i < m; ++i) {
      std::vector<int> members;
      for (int k = 0; k < S.size(); ++k)
        if (assign[k] == i) members.push_back(k);
      if (members.empty()) continue;
      if (euclidean_ball) {
        Points pts;
        for (int k : members) pts.push_back(S.points()[k]);
        Ball B = min_enclosing_ball(pts);
        Y.row(i) = B.center.transpose();
      } else {
        Vec x = X.row(i).transpose();
        double t = 0;
        if (cluster_center_lp(S, members, x, t)) Y.row(i) = x.transpose();
      }
    }
    std::vector<int> next;
    double v = hard_value(S, Y, &next);
    if (!(v < cur - 1e-13)) break;
    cur = v;
    X = Y;
    assign = std::move(next);
  }
  return cur;
}

// min_i gauge for every point of the set.
void point_values(SampleGauge& S, const Centers& X, std::vector<double>& vals) {
  S.prepare(X);
  const int m = static_cast<int>(X.rows());
  vals.resize(S.size());
  for (int k = 0; k < S.size(); ++k) {
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) best = std::min(best, S.value(k, X, i, nullptr));
    vals[k] = best;
  }
}

struct Polish {
  AdamSchedule schedule;
  double scale = 1.0;
  bool ball = false;
};

// Exchange rounds: the worst points of the dense set join the working
// sample and the placement is re-polished. Returns the dense-set maximum.
double exchange(SampleGauge& S, SampleGauge& D, Centers& X, const Polish& pol, int rounds,
                Points& added, Clock::time_point deadline) {
  std::vector<double> vals;
  double dense_max = 0.0;
  for (int round = 0; round <= rounds; ++round) {
    double s_hat = hard_value(S, X);
    point_values(D, X, vals);
    std::vector<int> idx(vals.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
      return vals[a] != vals[b] ? vals[a] > vals[b] : a < b;
    });
    dense_max = std::max(s_hat, vals.empty() ? 0.0 : vals[idx[0]]);
    if (round == rounds || Clock::now() >= deadline) break;
    if (dense_max <= s_hat + 1e-7) break;
    Points pick;
    const double sep = 0.02 * pol.scale;
    for (int k : idx) {
      if (vals[k] <= s_hat || pick.size() >= 48) break;
      const Vec& p = D.points()[k];
      bool far = true;
      for (const Vec& q : pick) far = far && (p - q).norm() > sep;
      if (far) pick.push_back(p);
    }
    S.add_points(pick);
    added.insert(added.end(), pick.begin(), pick.end());
    adam(S, X, pol.schedule, pol.scale, deadline);
    lloyd(S, X, pol.ball, 10, deadline);
  }
  return dense_max;
}

Points build_dense(const ConvexBody& K, Rng& rng) {
  const int n = K.dim();
  const Vec& ref = K.reference();
  Points pts = boundary_sample(K, n == 2 ? 8000 : 30000);
  if (K.is_polytope()) {
    const Polytope& P = K.polytope();
    pts.insert(pts.end(), P.vertices.begin(), P.vertices.end());
    const double nb = static_cast<double>(std::max<size_t>(1, P.boundary.size()));
    const int per = n == 2 ? std::max(16, static_cast<int>(8000 / nb))
                           : std::clamp(static_cast<int>(std::sqrt(2 * 30000 / nb)), 6, 60);
    for (const auto& s : P.boundary) {
      if (n == 2) {
        for (int k = 1; k < per; ++k) {
          double t = static_cast<double>(k) / per;
          pts.push_back((1 - t) * P.vertices[s[0]] + t * P.vertices[s[1]]);
        }
      } else {
        for (int a = 0; a <= per; ++a)
          for (int b = 0; a + b <= per; ++b) {
            int c = per - a - b;
            pts.push_back((a * P.vertices[s[0]] + b * P.vertices[s[1]] + c * P.vertices[s[2]]) /
                          static_cast<double>(per));
          }
      }
    }
  }
  Points in = random_points(K, n == 2 ? 12000 : 30000, rng);
  pts.insert(pts.end(), in.begin(), in.end());
  for (const Vec& b : boundary_sample(K, n == 2 ? 2000 : 8000))
    for (double t : {0.25, 0.5, 0.75}) pts.push_back(ref + t * (b - ref));
  return pts;
}

Points build_sample(const ConvexBody& K, Rng& rng) {
  const int n = K.dim();
  Points pts;
  const Vec& ref = K.reference();
  pts.push_back(ref);
  if (K.is_polytope()) {
    const Polytope& P = K.polytope();
    for (const Vec& v : P.vertices) pts.push_back(v);
    // Points along boundary simplices.
    const int per = n == 2 ? 12 : 4;
    for (const auto& s : P.boundary) {
      if (n == 2) {
        for (int k = 1; k < per; ++k) {
          double t = static_cast<double>(k) / per;
          pts.push_back((1 - t) * P.vertices[s[0]] + t * P.vertices[s[1]]);
        }
      } else {
        for (int a = 0; a <= per; ++a)
          for (int b = 0; a + b <= per; ++b) {
            int c = per - a - b;
            if ((a == per) || (b == per) || (c == per)) continue;
            pts.push_back((a * P.vertices[s[0]] + b * P.vertices[s[1]] + c * P.vertices[s[2]]) /
                          static_cast<double>(per));
          }
      }
    }
  }
  Points bnd = boundary_sample(K, n == 2 ? 720 : 2400);
  pts.insert(pts.end(), bnd.begin(), bnd.end());
  for (const Vec& b : boundary_sample(K, n == 2 ? 180 : 600)) pts.push_back(ref + 0.5 * (b - ref));
  Points in = random_points(K, n == 2 ? 300 : 800, rng);
  pts.insert(pts.end(), in.begin(), in.end());
  return pts;
}

double body_scale(const ConvexBody& K) {
  double s = 0.0;
  for (const Vec& u : direction_grid(K.dim(), K.dim() == 2 ? 16 : 26))
    s = std::max(s, K.support(u) - u.dot(K.reference()));
  return s;
}

Centers initial_centers(const ConvexBody& K, const Points& pool, int m, double floor_r,
                        Rng& rng) {
  const int n = K.dim();
  Centers X(m, n);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const double r0 = floor_r + (1.0 - floor_r) * (0.15 + 0.6 * U(rng));
  std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
  // Farthest-point selection from a random start.
  std::vector<double> dist(pool.size(), std::numeric_limits<double>::infinity());
  size_t cur = pick(rng);
  const Vec& ref = K.reference();
  for (int i = 0; i < m; ++i) {
    const Vec& q = pool[cur];
    X.row(i) = ((1.0 - r0) * (q - ref)).transpose();
    for (size_t k = 0; k < pool.size(); ++k) dist[k] = std::min(dist[k], (pool[k] - q).norm());
    // Random choice weighted towards far points.
    double total = 0.0;
    for (double d : dist) total += d * d;
    double target = U(rng) * total;
    size_t next = 0;
    for (size_t k = 0; k < pool.size(); ++k) {
      target -= dist[k] * dist[k];
      if (target <= 0) {
        next = k;
        break;
      }
    }
    cur = next;
  }
  return X;
}

CoverConfig to_config(const Centers& X, double r) {
  CoverConfig cfg;
  cfg.r = r;
  for (Eigen::Index i = 0; i < X.rows(); ++i) cfg.centers.push_back(X.row(i).transpose());
  return cfg;
}

Centers to_centers(const Points& pts, int n) {
  Centers X(static_cast<Eigen::Index>(pts.size()), n);
  for (size_t i = 0; i < pts.size(); ++i) X.row(i) = pts[i].transpose();
  return X;
}

bool lex_less(const Centers& a, const Centers& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a.data()[i] < b.data()[i]) return true;
    if (a.data()[i] > b.data()[i]) return false;
  }
  return false;
}

struct Candidate {
  Centers X;
  double value = std::numeric_limits<double>::infinity();
  Points added;
};

}  // namespace

SearchResult gamma_upper(const ConvexBody& K, int m, const SearchBudget& budget,
                         const SearchOptions& opt) {
  if (m < 1) throw Error("gamma_upper: m must be positive");
  if (!(budget.max_time > 0) || budget.max_iterations <= 0 || budget.starts <= 0)
    throw Error("gamma_upper: budget fields must be positive");
  const auto t0 = Clock::now();
  const int n = K.dim();
  auto deadline_at = [&](double frac) {
    return t0 + std::chrono::duration_cast<Clock::duration>(
                    std::chrono::duration<double>(frac * budget.max_time));
  };
  const auto final_deadline = deadline_at(1.0);

  SearchResult res;
  res.m = m;
  res.volume_floor = volume_lower_bound(K, m);
  res.config = trivial_config(K, m);
  res.certificate = trivial_certificate();
  res.r_upper = 1.0;
  res.sample_value = 1.0;
  if (m <= n) {
    // Fewer than n+1 smaller translates never cover a body.
    res.elapsed = seconds_since(t0);
    return res;
  }

  CoverOptions vopt = opt.verify;
  vopt.max_cells = std::min(vopt.max_cells, opt.verify_cells);
  vopt.max_witnesses = std::max(vopt.max_witnesses, 32);
  auto verify = [&](const Centers& X, double r) {
    ++res.verify_calls;
    return verify_cover(K, to_config(X, std::min(r, 1.0)), vopt);
  };

  // Seeded bound from the (m−1)-center result.
  std::optional<Centers> seed_X;
  if (opt.seed && opt.seed->certificate.verdict == Verdict::Covered &&
      !opt.seed->certificate.trivial &&
      static_cast<int>(opt.seed->config.centers.size()) == m - 1) {
    Points c = opt.seed->config.centers;
    c.push_back(c.front());
    seed_X = to_centers(c, n);
    CoverCertificate cert = verify(*seed_X, opt.seed->r_upper);
    if (cert.verdict == Verdict::Covered) {
      res.r_upper = opt.seed->r_upper;
      res.config = to_config(*seed_X, opt.seed->r_upper);
      res.certificate = cert;
      res.from_seed = true;
    }
  }

  Rng rng(budget.seed);
  SampleGauge S(K);
  S.set_points(build_sample(K, rng));
  const double scale = body_scale(K);
  const bool ball = K.kind() == BodyKind::LpBall && !K.is_polytope() && K.lp_exponent() == 2.0;

  // Placement phase.
  const int starts = budget.starts;
  std::vector<Candidate> cands(starts);
  AdamSchedule sch;
  sch.iterations = static_cast<int>(std::min<std::int64_t>(
      budget.max_iterations, n == 2 ? 600 : 450));
  const auto place_deadline = deadline_at(0.45);
  std::vector<std::uint64_t> seeds(starts);
  for (int s = 0; s < starts; ++s) seeds[s] = budget.seed * 0x9E3779B97F4A7C15ULL + 977 * (s + 1);
  const Points pool = S.points();
  const Points dense = build_dense(K, rng);
  AdamSchedule polish;
  polish.iterations = 150;
  polish.beta0 = 500.0;
  polish.beta1 = 5000.0;
  polish.lr0 = 3e-3;
  polish.lr1 = 1e-4;
  const Polish pol{polish, scale, ball};
  parallel_for(static_cast<size_t>(starts), [&](size_t s) {
    if (s > 0 && Clock::now() >= place_deadline) return;
    Rng local(seeds[s]);
    SampleGauge Sl(K), Dl(K);
    Sl.set_points(pool);
    Dl.set_points(dense);
    Centers X;
    if (s == 0 && seed_X) {
      X = *seed_X;
      std::normal_distribution<double> N01(0.0, 0.05 * scale);
      for (int c = 0; c < n; ++c) X(m - 1, c) += N01(local);
    } else {
      X = initial_centers(K, pool, m, res.volume_floor, local);
    }
    adam(Sl, X, sch, scale, place_deadline);
    lloyd(Sl, X, ball, 25, place_deadline);
    cands[s].value = exchange(Sl, Dl, X, pol, 4, cands[s].added, place_deadline);
    cands[s].X = X;
  });
  std::vector<int> order;
  for (int s = 0; s < starts; ++s)
    if (std::isfinite(cands[s].value)) order.push_back(s);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (cands[a].value != cands[b].value) return cands[a].value < cands[b].value;
    return lex_less(cands[a].X, cands[b].X);
  });
  res.starts_run = static_cast<int>(order.size());

  // Certification phase.
  SampleGauge dense_gauge(K);
  dense_gauge.set_points(dense);
  const int to_certify = std::min<int>(3, static_cast<int>(order.size()));
  for (int c = 0; c < to_certify; ++c) {
    if (Clock::now() >= final_deadline) break;
    Centers X = cands[order[c]].X;
    double s_hat = cands[order[c]].value;
    SampleGauge Sc(K);
    Points work = pool;
    work.insert(work.end(), cands[order[c]].added.begin(), cands[order[c]].added.end());
    Sc.set_points(work);
    // Certify at s_hat + eta; Covered shrinks eta, Uncovered feeds the
    // witness back and re-polishes the placement.
    double eta = std::max(1e-3, 4 * vopt.margin);
    for (int round = 0; round < 40 && Clock::now() < final_deadline; ++round) {
      if (s_hat + opt.tolerance >= res.r_upper) break;
      double r = s_hat + eta;
      if (r >= res.r_upper) {
        eta = 0.5 * (res.r_upper - s_hat);
        r = s_hat + eta;
      }
      CoverCertificate cert = verify(X, r);
      if (cert.verdict == Verdict::Covered) {
        res.r_upper = r;
        res.config = to_config(X, r);
        res.certificate = cert;
        res.sample_value = s_hat;
        res.from_seed = false;
        eta /= 2.5;
        if (eta < opt.tolerance) break;
      } else if (cert.verdict == Verdict::Uncovered) {
        Points wit{*cert.witness};
        wit.insert(wit.end(), cert.extra_witnesses.begin(), cert.extra_witnesses.end());
        Sc.add_points(wit);
        // Polishing may use half of what is left so a later round can still certify.
        const auto polish_deadline = Clock::now() + (final_deadline - Clock::now()) / 2;
        adam(Sc, X, polish, scale, polish_deadline);
        lloyd(Sc, X, ball, 10, polish_deadline);
        Points extra;
        s_hat = exchange(Sc, dense_gauge, X, pol, 2, extra, polish_deadline);
        eta *= 1.3;
      } else {
        eta *= 2.0;
      }
    }
  }
  if (res.certificate.trivial && !order.empty()) {
    // Out of time with nothing certified: a few coarse attempts past the deadline.
    const Centers& X = cands[order.front()].X;
    const double s_hat = cands[order.front()].value;
    for (double eta = 0.01; s_hat + eta < 1.0 && eta < 0.5; eta *= 2.0) {
      CoverCertificate cert = verify(X, s_hat + eta);
      if (cert.verdict == Verdict::Covered) {
        res.r_upper = s_hat + eta;
        res.config = to_config(X, res.r_upper);
        res.certificate = cert;
        res.sample_value = s_hat;
        break;
      }
    }
  }
  if (res.r_upper < res.volume_floor - 1e-9)
    throw Error("gamma_upper: certified ratio below the volume bound");
  res.elapsed = seconds_since(t0);
  return res;
}

std::vector<SearchResult> gamma_chain(const ConvexBody& K, int m_max,
                                      const SearchBudget& budget,
                                      const SearchOptions& opt) {
  std::vector<SearchResult> out;
  for (int m = 1; m <= m_max; ++m) {
    SearchOptions o = opt;
    o.seed = out.empty() ? nullptr : &out.back();
    out.push_back(gamma_upper(K, m, budget, o));
  }
  return out;
}

}  // namespace covfun
