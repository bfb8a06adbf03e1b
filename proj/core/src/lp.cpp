#include "covfun/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace covfun {
namespace {

constexpr double kPivotTol = 1e-10;
constexpr double kCostTol = 1e-11;

// Revised simplex for min cost·y, M y = rhs, y >= 0 where M is given
// implicitly: columns 0..n-1 are rows of `At` (scaled by `sign`), columns
// n..n+k-1 are artificial unit vectors.
class DualSimplex {
 public:
  DualSimplex(const Eigen::MatrixXd& rows, const Eigen::VectorXd& cost,
              const Eigen::VectorXd& rhs)
      : rows_(rows), cost_(cost), k_(static_cast<int>(rhs.size())),
        n_(static_cast<int>(rows.rows())) {
    sign_ = Eigen::VectorXd::Ones(k_);
    rhs_ = rhs;
    for (int i = 0; i < k_; ++i) {
      if (rhs_[i] < 0) {
        sign_[i] = -1.0;
        rhs_[i] = -rhs_[i];
      }
    }
    basis_.resize(k_);
    for (int i = 0; i < k_; ++i) basis_[i] = n_ + i;
  }

  LpStatus run(int max_iterations, int& iterations) {
    // Phase 1: drive artificials to zero.
    LpStatus s = iterate(true, max_iterations, iterations);
    if (s == LpStatus::IterationLimit) return s;
    refactor();
    double infeas = 0.0;
    for (int i = 0; i < k_; ++i)
      if (basis_[i] >= n_) infeas += std::max(0.0, xb_[i]);
    double scale = 1.0 + rhs_.cwiseAbs().maxCoeff();
    if (infeas > 1e-9 * scale) return LpStatus::Infeasible;
    drive_out_artificials();
    return iterate(false, max_iterations, iterations);
  }

  // Multipliers of the equality rows in the caller's sign convention.
  Eigen::VectorXd multipliers() const { return sign_.cwiseProduct(pi_); }

 private:
  Eigen::VectorXd column(int j) const {
    if (j >= n_) {
      Eigen::VectorXd e = Eigen::VectorXd::Zero(k_);
      e[j - n_] = 1.0;
      return e;
    }
    return sign_.cwiseProduct(rows_.row(j).transpose());
  }

  double cost(int j, bool phase1) const {
    if (phase1) return j >= n_ ? 1.0 : 0.0;
    return j >= n_ ? 0.0 : cost_[j];
  }

  void refactor() {
    Eigen::MatrixXd B(k_, k_);
    for (int i = 0; i < k_; ++i) B.col(i) = column(basis_[i]);
    lu_.compute(B);
    xb_ = lu_.solve(rhs_);
  }

  void compute_duals(bool phase1) {
    Eigen::VectorXd cb(k_);
    for (int i = 0; i < k_; ++i) cb[i] = cost(basis_[i], phase1);
    pi_ = lu_.transpose().solve(cb);
  }

  void drive_out_artificials() {
    for (int i = 0; i < k_; ++i) {
      if (basis_[i] < n_) continue;
      Eigen::VectorXd e = Eigen::VectorXd::Zero(k_);
      e[i] = 1.0;
      // Row i of B^{-1}.
      Eigen::VectorXd row = lu_.transpose().solve(e);
      Eigen::VectorXd alpha = rows_ * sign_.cwiseProduct(row);
      int best = -1;
      double best_abs = 1e-8;
      for (int j = 0; j < n_; ++j) {
        if (in_basis(j)) continue;
        if (std::abs(alpha[j]) > best_abs) {
          best_abs = std::abs(alpha[j]);
          best = j;
        }
      }
      if (best >= 0) {
        basis_[i] = best;
        refactor();
      }
    }
  }

  bool in_basis(int j) const {
    return std::find(basis_.begin(), basis_.end(), j) != basis_.end();
  }

  LpStatus iterate(bool phase1, int max_iterations, int& iterations) {
    int degenerate_streak = 0;
    refactor();
    while (true) {
      if (iterations >= max_iterations) return LpStatus::IterationLimit;
      ++iterations;
      if (iterations % 64 == 0) refactor();
      compute_duals(phase1);
      Eigen::VectorXd d = rows_ * sign_.cwiseProduct(pi_);
      bool bland = degenerate_streak > 2 * k_ + 20;
      int enter = -1;
      double best = -kCostTol;
      for (int j = 0; j < n_; ++j) {
        double rc = cost(j, phase1) - d[j];
        if (rc < best) {
          if (in_basis(j)) continue;
          enter = j;
          if (bland) break;
          best = rc;
        }
      }
      if (enter < 0) return LpStatus::Optimal;
      Eigen::VectorXd w = lu_.solve(column(enter));
      int leave = -1;
      double ratio = std::numeric_limits<double>::infinity();
      double leave_w = 0.0;
      for (int i = 0; i < k_; ++i) {
        if (w[i] <= kPivotTol) continue;
        double t = std::max(0.0, xb_[i]) / w[i];
        bool better = t < ratio - 1e-14;
        bool tie = !better && t <= ratio + 1e-14;
        if (better || (tie && (bland ? basis_[i] < basis_[leave]
                                     : w[i] > leave_w))) {
          ratio = t;
          leave = i;
          leave_w = w[i];
        }
      }
      if (leave < 0) return LpStatus::Unbounded;
      degenerate_streak = ratio < 1e-14 ? degenerate_streak + 1 : 0;
      basis_[leave] = enter;
      refactor();
    }
  }

  const Eigen::MatrixXd& rows_;
  Eigen::VectorXd cost_;
  int k_;
  int n_;
  Eigen::VectorXd sign_;
  Eigen::VectorXd rhs_;
  std::vector<int> basis_;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
  Eigen::VectorXd xb_;
  Eigen::VectorXd pi_;
};

}  // namespace

LpResult lp_maximize(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                     const Eigen::VectorXd& c, int max_iterations) {
  if (A.rows() != b.size() || A.cols() != c.size())
    throw Error("lp_maximize: dimension mismatch");
  LpResult out;
  const Eigen::Index n = A.rows();
  // Normalize constraint rows so tolerances are scale-free.
  Eigen::MatrixXd rows = A;
  Eigen::VectorXd rhs = b;
  for (Eigen::Index j = 0; j < n; ++j) {
    double norm = rows.row(j).norm();
    if (norm > 0) {
      rows.row(j) /= norm;
      rhs[j] /= norm;
    } else if (rhs[j] < -kGeoTol) {
      out.status = LpStatus::Infeasible;
      return out;
    }
  }
  DualSimplex simplex(rows, rhs, c);
  int iterations = 0;
  LpStatus s = simplex.run(max_iterations, iterations);
  out.iterations = iterations;
  if (s == LpStatus::Optimal) {
    out.status = LpStatus::Optimal;
    out.x = simplex.multipliers();
    out.objective = c.dot(out.x);
  } else if (s == LpStatus::Unbounded) {
    // The dual is unbounded below, so the primal has no feasible point.
    out.status = LpStatus::Infeasible;
  } else if (s == LpStatus::Infeasible) {
    // No dual feasible point: the primal is unbounded (or infeasible).
    out.status = LpStatus::Unbounded;
  } else {
    out.status = s;
  }
  return out;
}

ChebyshevBall chebyshev_ball(const Points& normals,
                             const std::vector<double>& offsets) {
  if (normals.empty() || normals.size() != offsets.size())
    throw Error("chebyshev_ball: bad constraint set");
  const int dim = static_cast<int>(normals.front().size());
  const Eigen::Index n = static_cast<Eigen::Index>(normals.size());
  Eigen::MatrixXd A(n + 1, dim + 1);
  Eigen::VectorXd b(n + 1);
  double scale = 1.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    const Vec& a = normals[j];
    A.row(j).head(dim) = a.transpose();
    A(j, dim) = a.norm();
    b[j] = offsets[j];
    scale = std::max(scale, std::abs(offsets[j]) / std::max(a.norm(), 1e-300));
  }
  // Cap the radius so unbounded sets still give a finite answer.
  A.row(n).setZero();
  A(n, dim) = 1.0;
  b[n] = 1e6 * scale;
  Eigen::VectorXd c = Eigen::VectorXd::Zero(dim + 1);
  c[dim] = 1.0;
  LpResult r = lp_maximize(A, b, c);
  if (r.status != LpStatus::Optimal) throw Error("empty interior");
  ChebyshevBall out;
  out.center = r.x.head(dim);
  out.radius = r.x[dim];
  if (out.radius <= kGeoTol) throw Error("empty interior");
  return out;
}

}  // namespace covfun
