#include "covfun/john.hpp"

#include "covfun/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace covfun {

Ellipsoid lowner_ellipsoid(const Points& pts, double tol) {
  if (pts.empty()) throw Error("lowner_ellipsoid: no points");
  const int n = static_cast<int>(pts.front().size());
  const int N = static_cast<int>(pts.size());
  const int d = n + 1;
  Eigen::MatrixXd Q(d, N);
  for (int i = 0; i < N; ++i) {
    Q.block(0, i, n, 1) = pts[i];
    Q(n, i) = 1.0;
  }
  Eigen::VectorXd u = Eigen::VectorXd::Constant(N, 1.0 / N);
  Eigen::VectorXd M(N);
  auto recompute = [&]() {
    Eigen::MatrixXd X = Q * u.asDiagonal() * Q.transpose();
    Eigen::LDLT<Eigen::MatrixXd> ldlt(X);
    if (ldlt.info() != Eigen::Success) throw Error("empty interior");
    Eigen::MatrixXd Y = ldlt.solve(Q);
    M = (Q.cwiseProduct(Y)).colwise().sum().transpose();
  };
  recompute();
  const int max_iter = 200000;
  for (int it = 0; it < max_iter; ++it) {
    Eigen::Index j;
    double kappa = M.maxCoeff(&j);
    // Smallest M among points with positive weight (away candidate).
    Eigen::Index k = -1;
    double kmin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < N; ++i) {
      if (u[i] > 0 && M[i] < kmin) {
        kmin = M[i];
        k = i;
      }
    }
    double up = kappa - d;
    double down = d - kmin;
    if (up <= tol * d && down <= tol * d) break;
    if (up >= down) {
      double a = (kappa - d) / (d * (kappa - 1.0));
      u *= (1.0 - a);
      u[j] += a;
    } else {
      double floor = -u[k] / (1.0 - u[k]);
      double a = kmin - 1.0 > 1e-12 ? (kmin - d) / (d * (kmin - 1.0)) : floor;
      a = std::max(a, floor);
      u *= (1.0 - a);
      u[k] += a;
      if (u[k] < 1e-300) u[k] = 0.0;
    }
    if (!std::isfinite(kappa)) throw Error("empty interior");
    recompute();
  }
  Vec c = Vec::Zero(n);
  for (int i = 0; i < N; ++i) c += u[i] * pts[i];
  Eigen::MatrixXd S = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < N; ++i) {
    Eigen::VectorXd w = pts[i] - c;
    S += u[i] * w * w.transpose();
  }
  Eigen::MatrixXd A = S.inverse() / n;
  double worst = 0.0;
  for (int i = 0; i < N; ++i) {
    Eigen::VectorXd w = pts[i] - c;
    worst = std::max(worst, w.dot(A * w));
  }
  if (worst > 1.0) A /= worst;
  Ellipsoid E;
  E.center = c;
  E.shape = A;
  return E;
}

double inner_radius_about_origin(const ConvexBody& K, int grid) {
  if (K.is_polytope()) {
    const Polytope& P = K.polytope();
    return *std::min_element(P.offsets.begin(), P.offsets.end());
  }
  double r = std::numeric_limits<double>::infinity();
  for (const Vec& u : direction_grid(K.dim(), grid)) r = std::min(r, K.support(u));
  return r;
}

double outer_radius_about_origin(const ConvexBody& K, int grid) {
  if (K.is_polytope()) {
    double R = 0.0;
    for (const Vec& v : K.polytope().vertices) R = std::max(R, v.norm());
    return R;
  }
  double R = 0.0;
  for (const Vec& u : direction_grid(K.dim(), grid)) R = std::max(R, K.support(u));
  return R;
}

namespace {

Mat sym_sqrt(const Mat& A) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
  if (es.eigenvalues().minCoeff() <= 0) throw Error("empty interior");
  Eigen::MatrixXd r = es.eigenvectors() * es.eigenvalues().cwiseSqrt().asDiagonal() *
                      es.eigenvectors().transpose();
  return r;
}

std::string dir_string(const Vec& u) {
  std::ostringstream os;
  os << "(";
  for (Eigen::Index i = 0; i < u.size(); ++i) os << (i ? ", " : "") << u[i];
  os << ")";
  return os.str();
}

}  // namespace

JohnResult john_normalize(const ConvexBody& K) {
  const int n = K.dim();
  const int check_grid = 10000;
  Points pts;
  if (K.is_polytope()) {
    pts = K.polytope().vertices;
  } else {
    pts = support_sample(K, n == 2 ? 720 : 3000);
  }
  Ellipsoid E = lowner_ellipsoid(pts, K.is_polytope() ? 1e-12 : 1e-7);
  Mat L = sym_sqrt(E.shape);
  // Image of K under x ↦ L(x − c) lies (approximately) in the unit ball;
  // rescale so the inner ball is exactly the unit ball.
  ConvexBody first = transform(K, L, -L * E.center).with_reference(Vec::Zero(n));
  double rho = inner_radius_about_origin(first, check_grid);
  if (!(rho > 0)) throw Error("empty interior");
  Mat T = L / rho;
  Vec shift = -T * E.center;
  ConvexBody image = transform(K, T, shift).with_reference(Vec::Zero(n));

  AffineCert cert;
  cert.matrix = T;
  cert.shift = shift;
  cert.sample_count = K.is_polytope() ? static_cast<int>(pts.size()) : check_grid;
  double inner = inner_radius_about_origin(image, check_grid);
  double outer = outer_radius_about_origin(image, check_grid);
  cert.inner_radius = inner;
  cert.outer_radius = outer;
  if (inner < 1.0 - kGeoTol) {
    Vec worst;
    double best = std::numeric_limits<double>::infinity();
    for (const Vec& u : direction_grid(n, check_grid)) {
      double h = image.support(u);
      if (h < best) {
        best = h;
        worst = u;
      }
    }
    throw Error("john_normalize: inner ball check failed in direction " + dir_string(worst));
  }
  cert.verified_inner = true;
  if (outer > n + kGeoTol) {
    Vec worst;
    double best = 0.0;
    for (const Vec& u : direction_grid(n, check_grid)) {
      double h = image.support(u);
      if (h > best) {
        best = h;
        worst = u;
      }
    }
    throw Error("john_normalize: outer ball check failed in direction " + dir_string(worst));
  }
  cert.verified_outer = true;
  return JohnResult{cert, image};
}

}  // namespace covfun
