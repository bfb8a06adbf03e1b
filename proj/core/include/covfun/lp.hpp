#pragma once

#include "covfun/types.hpp"

#include <vector>

namespace covfun {

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Eigen::VectorXd x;
  double objective = 0.0;
  int iterations = 0;
};

// Dense LP in inequality form: maximize c·x subject to A x <= b, x free.
// Intended for few variables and many constraints. Solved by a revised
// simplex on the dual (min b·y, Aᵀy = c, y >= 0), whose basis has one row
// per primal variable.
LpResult lp_maximize(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                     const Eigen::VectorXd& c, int max_iterations = 100000);

// Chebyshev center of {x : a_j·x <= b_j}: the largest Euclidean ball inside.
struct ChebyshevBall {
  Vec center;
  double radius = 0.0;
};
ChebyshevBall chebyshev_ball(const Points& normals,
                             const std::vector<double>& offsets);

}  // namespace covfun
