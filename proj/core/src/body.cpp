#include "covfun/body.hpp"

#include "covfun/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace covfun {

double lp_norm(const Vec& x, double p) {
  if (std::isinf(p)) return x.cwiseAbs().maxCoeff();
  if (p == 1.0) return x.cwiseAbs().sum();
  if (p == 2.0) return x.norm();
  double m = x.cwiseAbs().maxCoeff();
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) s += std::pow(std::abs(x[i]) / m, p);
  return m * std::pow(s, 1.0 / p);
}

const char* to_string(BodyKind kind) {
  switch (kind) {
    case BodyKind::VPolytope: return "vpolytope";
    case BodyKind::HPolytope: return "hpolytope";
    case BodyKind::LpBall: return "lpball";
    case BodyKind::Cone: return "cone";
    case BodyKind::Affine: return "affine";
    case BodyKind::Reuleaux: return "reuleaux";
  }
  return "unknown";
}

namespace {

// Geometry that does not depend on the reference point.
class Shape {
 public:
  virtual ~Shape() = default;
  virtual double ray_exit(const Vec& o, const Vec& d) const = 0;
  virtual double support(const Vec& u) const = 0;
  virtual Vec support_point(const Vec& u) const = 0;
  virtual Vec normal_at(const Vec& q) const = 0;
  virtual double gauge_about(const Vec& ref, const Vec& p) const {
    Vec d = p - ref;
    if (d.squaredNorm() == 0.0) return 0.0;
    return 1.0 / ray_exit(ref, d);
  }
};

class PolytopeShape final : public Shape {
 public:
  explicit PolytopeShape(std::shared_ptr<const Polytope> P) : P_(std::move(P)) {}
  double ray_exit(const Vec& o, const Vec& d) const override {
    double t = std::numeric_limits<double>::infinity();
    for (size_t j = 0; j < P_->normals.size(); ++j) {
      double nd = P_->normals[j].dot(d);
      if (nd <= 0) continue;
      t = std::min(t, (P_->offsets[j] - P_->normals[j].dot(o)) / nd);
    }
    return t;
  }
  double support(const Vec& u) const override {
    double h = -std::numeric_limits<double>::infinity();
    for (const Vec& v : P_->vertices) h = std::max(h, u.dot(v));
    return h;
  }
  Vec support_point(const Vec& u) const override {
    size_t best = 0;
    double h = -std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < P_->vertices.size(); ++i) {
      double s = u.dot(P_->vertices[i]);
      if (s > h) {
        h = s;
        best = i;
      }
    }
    return P_->vertices[best];
  }
  Vec normal_at(const Vec& q) const override {
    size_t best = 0;
    double worst = -std::numeric_limits<double>::infinity();
    for (size_t j = 0; j < P_->normals.size(); ++j) {
      double v = P_->normals[j].dot(q) - P_->offsets[j];
      if (v > worst) {
        worst = v;
        best = j;
      }
    }
    return P_->normals[best];
  }

 private:
  std::shared_ptr<const Polytope> P_;
};

class LpShape final : public Shape {
 public:
  LpShape(double p, int dim) : p_(p), q_(p / (p - 1.0)), dim_(dim) {}
  double ray_exit(const Vec& o, const Vec& d) const override {
    double nd = lp_norm(d, p_);
    if (o.squaredNorm() == 0.0) return 1.0 / nd;
    // Newton from the right on the convex map t ↦ ‖o + t d‖_p − 1.
    double t = (1.0 + lp_norm(o, p_)) / nd;
    for (int it = 0; it < 100; ++it) {
      Vec x = o + t * d;
      double f = lp_norm(x, p_) - 1.0;
      if (f <= 1e-15) break;
      double slope = grad(x).dot(d);
      if (slope <= 0) break;
      double step = f / slope;
      t -= step;
      if (step <= 1e-16 * t) break;
    }
    return t;
  }
  double gauge_about(const Vec& ref, const Vec& p) const override {
    if (ref.squaredNorm() == 0.0) return lp_norm(p, p_);
    return Shape::gauge_about(ref, p);
  }
  double support(const Vec& u) const override { return lp_norm(u, q_); }
  Vec support_point(const Vec& u) const override {
    double nq = lp_norm(u, q_);
    Vec x(dim_);
    for (int i = 0; i < dim_; ++i) {
      double a = std::abs(u[i]) / nq;
      x[i] = std::copysign(std::pow(a, q_ - 1.0), u[i]);
    }
    return x;
  }
  Vec normal_at(const Vec& q) const override { return grad(q); }

 private:
  // Gradient of the p-norm.
  Vec grad(const Vec& x) const {
    double n = lp_norm(x, p_);
    Vec g(dim_);
    for (int i = 0; i < dim_; ++i) {
      double a = std::abs(x[i]) / n;
      g[i] = std::copysign(std::pow(a, p_ - 1.0), x[i]);
    }
    return g;
  }
  double p_, q_;
  int dim_;
};

class ReuleauxShape final : public Shape {
 public:
  explicit ReuleauxShape(int k) : k_(k) {
    const double pi = std::numbers::pi;
    radius_ = 1.0 / (2.0 * std::cos(pi / (2.0 * k)));
    for (int j = 0; j < k; ++j) {
      double a = pi / 2 + 2 * pi * j / k;
      Vec v(2);
      v << radius_ * std::cos(a), radius_ * std::sin(a);
      V_.push_back(v);
      angles_.push_back(a);
    }
  }
  const Points& vertices() const { return V_; }
  double ray_exit(const Vec& o, const Vec& d) const override {
    double t = std::numeric_limits<double>::infinity();
    const double a = d.squaredNorm();
    for (const Vec& v : V_) {
      Vec w = o - v;
      double b = 2 * d.dot(w);
      double c = w.squaredNorm() - 1.0;
      double disc = std::max(0.0, b * b - 4 * a * c);
      double root = (-b + std::sqrt(disc)) / (2 * a);
      t = std::min(t, root);
    }
    return t;
  }
  double support(const Vec& u) const override { return u.dot(support_point(u)); }
  Vec support_point(const Vec& u) const override {
    const double pi = std::numbers::pi;
    const double theta = std::atan2(u[1], u[0]);
    const double half = pi / (2.0 * k_);
    auto wrap = [&](double x) { return std::remainder(x, 2 * pi); };
    for (int j = 0; j < k_; ++j)
      if (std::abs(wrap(theta - angles_[j])) <= half) return V_[j];
    int best = 0;
    double bd = std::numeric_limits<double>::infinity();
    for (int i = 0; i < k_; ++i) {
      double dd = std::abs(wrap(theta + pi - angles_[i]));
      if (dd < bd) {
        bd = dd;
        best = i;
      }
    }
    return V_[best] + u / u.norm();
  }
  Vec normal_at(const Vec& q) const override {
    int best = 0;
    double bd = -1.0;
    for (int j = 0; j < k_; ++j) {
      double d = (q - V_[j]).squaredNorm();
      if (d > bd) {
        bd = d;
        best = j;
      }
    }
    return q - V_[best];
  }

 private:
  int k_;
  double radius_;
  Points V_;
  std::vector<double> angles_;
};

Vec numeric_normal(const Shape& s, const Vec& ref, const Vec& q) {
  const int n = static_cast<int>(q.size());
  Vec g(n);
  const double h = 1e-6 * std::max(1.0, (q - ref).norm());
  for (int i = 0; i < n; ++i) {
    Vec a = q, b = q;
    a[i] += h;
    b[i] -= h;
    g[i] = (s.gauge_about(ref, a) - s.gauge_about(ref, b)) / (2 * h);
  }
  return g;
}

class ConeShape final : public Shape {
 public:
  ConeShape(ConvexBody base, Vec apex) : base_(std::move(base)), apex_(std::move(apex)) {
    double r = apex_.norm();
    for (int i = 0; i < 64; ++i) {
      double a = 2 * std::numbers::pi * i / 64;
      Vec u(2);
      u << std::cos(a), std::sin(a);
      r = std::max(r, base_.support(u) / std::cos(std::numbers::pi / 64));
    }
    bound_ = r;
    inner_ = (3.0 * embed(base_.reference()) + apex_) / 4.0;
  }
  Vec embed(const Vec& b) const {
    Vec v(3);
    v << b[0], b[1], 0.0;
    return v;
  }
  bool contains(const Vec& q) const {
    const double az = apex_[2];
    double s = q[2] / az;
    if (s < 0.0 || s > 1.0) return false;
    if (s >= 1.0) return (q.head(2) - apex_.head(2)).norm() <= 1e-15;
    Vec w = (q.head(2) - s * apex_.head(2)) / (1.0 - s);
    return base_.gauge(w) <= 1.0;
  }
  double ray_exit(const Vec& o, const Vec& d) const override {
    double lo = 0.0, hi = 2.0 * (bound_ + o.norm()) / d.norm();
    for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
      double mid = 0.5 * (lo + hi);
      if (contains(o + mid * d)) lo = mid; else hi = mid;
    }
    return lo;
  }
  double support(const Vec& u) const override { return u.dot(support_point(u)); }
  Vec support_point(const Vec& u) const override {
    Vec uxy = u.head(2);
    Vec best = apex_;
    if (uxy.squaredNorm() > 0) {
      Vec b = embed(base_.support_point(uxy));
      if (u.dot(b) > u.dot(best)) best = b;
    } else if (u.dot(apex_) < 0) {
      best = embed(base_.reference());
    }
    return best;
  }
  Vec normal_at(const Vec& q) const override { return numeric_normal(*this, inner_, q); }

 private:
  ConvexBody base_;
  Vec apex_;
  double bound_;
  Vec inner_;
};

class AffineShape final : public Shape {
 public:
  AffineShape(Mat A, Vec b, ConvexBody inner)
      : A_(std::move(A)), b_(std::move(b)), inner_(std::move(inner)) {
    Ainv_ = A_.inverse();
  }
  double ray_exit(const Vec& o, const Vec& d) const override {
    return inner_.ray_exit(Ainv_ * (o - b_), Ainv_ * d);
  }
  double support(const Vec& u) const override {
    return inner_.support(A_.transpose() * u) + u.dot(b_);
  }
  Vec support_point(const Vec& u) const override {
    return A_ * inner_.support_point(A_.transpose() * u) + b_;
  }
  Vec normal_at(const Vec& q) const override {
    return Ainv_.transpose() * inner_.normal_at(Ainv_ * (q - b_));
  }

 private:
  Mat A_, Ainv_;
  Vec b_;
  ConvexBody inner_;
};

}  // namespace

struct BodyData {
  BodyKind kind = BodyKind::VPolytope;
  int dim = 0;
  std::unique_ptr<Shape> shape;
  std::shared_ptr<const Polytope> poly;
  Points normals_in;
  std::vector<double> offsets_in;
  double p = 2.0;
  int k = 0;
  std::shared_ptr<const ConvexBody> sub;  // cone base or affine inner
  Vec apex;
  Mat A;
  Vec b;
};

ConvexBody::ConvexBody(std::shared_ptr<const BodyData> data, Vec ref)
    : data_(std::move(data)), ref_(std::move(ref)) {
  rebuild_cache();
}

void ConvexBody::rebuild_cache() {
  gauge_rows_.reset();
  if (!data_->poly) return;
  const Polytope& P = *data_->poly;
  auto W = std::make_shared<Eigen::MatrixXd>(P.normals.size(), data_->dim);
  for (size_t j = 0; j < P.normals.size(); ++j) {
    double slack = P.offsets[j] - P.normals[j].dot(ref_);
    if (slack <= 0) throw Error("reference point not interior");
    W->row(static_cast<Eigen::Index>(j)) = P.normals[j].transpose() / slack;
  }
  gauge_rows_ = std::move(W);
}

namespace {

void check_dim(int dim) {
  if (dim < 2 || dim > kMaxDim) throw Error("dimension must be 2 or 3");
}

Vec centroid(const Points& pts) {
  Vec c = Vec::Zero(pts.front().size());
  for (const Vec& p : pts) c += p;
  return c / static_cast<double>(pts.size());
}

}  // namespace

ConvexBody ConvexBody::vpolytope(const Points& vertices) {
  if (vertices.empty()) throw Error("empty interior");
  auto d = std::make_shared<BodyData>();
  d->kind = BodyKind::VPolytope;
  d->dim = static_cast<int>(vertices.front().size());
  check_dim(d->dim);
  d->poly = std::make_shared<Polytope>(convex_hull(vertices));
  d->shape = std::make_unique<PolytopeShape>(d->poly);
  Vec ref = centroid(d->poly->vertices);
  return ConvexBody(d, ref);
}

ConvexBody ConvexBody::hpolytope(const Points& normals,
                                 const std::vector<double>& offsets) {
  if (normals.empty() || normals.size() != offsets.size())
    throw Error("hpolytope: normals/offsets mismatch");
  auto d = std::make_shared<BodyData>();
  d->kind = BodyKind::HPolytope;
  d->dim = static_cast<int>(normals.front().size());
  check_dim(d->dim);
  d->normals_in = normals;
  d->offsets_in = offsets;
  d->poly = std::make_shared<Polytope>(halfspace_intersection(normals, offsets));
  d->shape = std::make_unique<PolytopeShape>(d->poly);
  Vec ref = chebyshev_ball(normals, offsets).center;
  return ConvexBody(d, ref);
}

ConvexBody ConvexBody::lp_ball(double p, int dim) {
  check_dim(dim);
  if (!(p >= 1.0)) throw Error("lpball: p must lie in [1, inf]");
  auto d = std::make_shared<BodyData>();
  d->kind = BodyKind::LpBall;
  d->dim = dim;
  d->p = p;
  if (p == 1.0 || std::isinf(p)) {
    Points verts;
    if (p == 1.0) {
      for (int i = 0; i < dim; ++i)
        for (double s : {1.0, -1.0}) {
          Vec v = Vec::Zero(dim);
          v[i] = s;
          verts.push_back(v);
        }
    } else {
      for (int mask = 0; mask < (1 << dim); ++mask) {
        Vec v(dim);
        for (int i = 0; i < dim; ++i) v[i] = (mask >> i) & 1 ? 1.0 : -1.0;
        verts.push_back(v);
      }
    }
    d->poly = std::make_shared<Polytope>(convex_hull(verts));
    d->shape = std::make_unique<PolytopeShape>(d->poly);
  } else {
    d->shape = std::make_unique<LpShape>(p, dim);
  }
  return ConvexBody(d, Vec::Zero(dim));
}

ConvexBody ConvexBody::cone(const ConvexBody& base, const Vec& apex) {
  if (base.dim() != 2) throw Error("cone: base must be 2-dimensional");
  if (apex.size() != 3) throw Error("cone: apex must be a 3-D point");
  if (std::abs(apex[2]) <= kGeoTol) throw Error("cone: apex lies in the base plane");
  if (apex[2] < 0) throw Error("cone: apex must lie above the base plane");
  auto d = std::make_shared<BodyData>();
  d->kind = BodyKind::Cone;
  d->dim = 3;
  d->sub = std::make_shared<ConvexBody>(base);
  d->apex = apex;
  if (base.is_polytope()) {
    Points verts;
    for (const Vec& v : base.polytope().vertices) {
      Vec w(3);
      w << v[0], v[1], 0.0;
      verts.push_back(w);
    }
    verts.push_back(apex);
    d->poly = std::make_shared<Polytope>(convex_hull(verts));
    d->shape = std::make_unique<PolytopeShape>(d->poly);
  } else {
    d->shape = std::make_unique<ConeShape>(base, apex);
  }
  Vec b3(3);
  b3 << base.reference()[0], base.reference()[1], 0.0;
  return ConvexBody(d, (3.0 * b3 + apex) / 4.0);
}

ConvexBody ConvexBody::affine(const Mat& matrix, const Vec& shift,
                              const ConvexBody& inner) {
  const int n = inner.dim();
  if (matrix.rows() != n || matrix.cols() != n || shift.size() != n)
    throw Error("affine: dimension mismatch");
  double det = matrix.determinant();
  if (!std::isfinite(det) || std::abs(det) <= 1e-12 * std::pow(matrix.norm(), n))
    throw Error("affine: singular matrix");
  auto d = std::make_shared<BodyData>();
  d->kind = BodyKind::Affine;
  d->dim = n;
  d->A = matrix;
  d->b = shift;
  d->sub = std::make_shared<ConvexBody>(inner);
  if (inner.is_polytope()) {
    Points verts;
    for (const Vec& v : inner.polytope().vertices) verts.push_back(matrix * v + shift);
    d->poly = std::make_shared<Polytope>(convex_hull(verts));
    d->shape = std::make_unique<PolytopeShape>(d->poly);
  } else {
    d->shape = std::make_unique<AffineShape>(matrix, shift, inner);
  }
  return ConvexBody(d, matrix * inner.reference() + shift);
}

ConvexBody ConvexBody::reuleaux(int k) {
  if (k < 3 || k % 2 == 0) throw Error("reuleaux: k must be an odd integer >= 3");
  auto d = std::make_shared<BodyData>();
  d->kind = BodyKind::Reuleaux;
  d->dim = 2;
  d->k = k;
  d->shape = std::make_unique<ReuleauxShape>(k);
  return ConvexBody(d, Vec::Zero(2));
}

BodyKind ConvexBody::kind() const { return data_->kind; }
int ConvexBody::dim() const { return data_->dim; }

ConvexBody ConvexBody::with_reference(const Vec& ref) const {
  if (ref.size() != dim() || !ref.allFinite())
    throw Error("reference point has wrong dimension");
  if (gauge(ref) >= 1.0 - kGeoTol) throw Error("reference point not interior");
  return ConvexBody(data_, ref);
}

double ConvexBody::gauge(const Vec& p) const {
  if (gauge_rows_) {
    double g = (*gauge_rows_ * (p - ref_)).maxCoeff();
    return std::max(0.0, g);
  }
  return data_->shape->gauge_about(ref_, p);
}

Vec ConvexBody::gauge_gradient(const Vec& p) const {
  if (gauge_rows_) {
    Eigen::Index j;
    double g = (*gauge_rows_ * (p - ref_)).maxCoeff(&j);
    if (g <= 0) return Vec::Zero(dim());
    return gauge_rows_->row(j).transpose();
  }
  double g = gauge(p);
  if (g <= 0) return Vec::Zero(dim());
  Vec q = ref_ + (p - ref_) / g;
  Vec nu = data_->shape->normal_at(q);
  double denom = nu.dot(q - ref_);
  if (denom <= 0) return Vec::Zero(dim());
  return nu / denom;
}

double ConvexBody::support(const Vec& u) const {
  if (u.size() != dim()) throw Error("support: dimension mismatch");
  if (u.squaredNorm() == 0.0) throw Error("support: zero direction");
  return data_->shape->support(u);
}

Vec ConvexBody::support_point(const Vec& u) const {
  if (u.squaredNorm() == 0.0) throw Error("support: zero direction");
  return data_->shape->support_point(u);
}

double ConvexBody::ray_exit(const Vec& origin, const Vec& dir) const {
  return data_->shape->ray_exit(origin, dir);
}

Vec ConvexBody::boundary_point(const Vec& dir) const {
  if (dir.squaredNorm() == 0.0) throw Error("boundary_point: zero direction");
  return ref_ + ray_exit(ref_, dir) * dir;
}

Vec ConvexBody::normal_at(const Vec& q) const { return data_->shape->normal_at(q); }

bool ConvexBody::contains(const Vec& p, double tol) const { return gauge(p) <= 1.0 + tol; }

bool ConvexBody::is_polytope() const { return static_cast<bool>(data_->poly); }

const Polytope& ConvexBody::polytope() const {
  if (!data_->poly) throw Error("body is not a polytope");
  return *data_->poly;
}

const Points& ConvexBody::vertices_input() const {
  if (kind() != BodyKind::VPolytope) throw Error("not a vpolytope");
  return data_->poly->vertices;
}
const Points& ConvexBody::normals_input() const {
  if (kind() != BodyKind::HPolytope) throw Error("not an hpolytope");
  return data_->normals_in;
}
const std::vector<double>& ConvexBody::offsets_input() const {
  if (kind() != BodyKind::HPolytope) throw Error("not an hpolytope");
  return data_->offsets_in;
}
double ConvexBody::lp_exponent() const {
  if (kind() != BodyKind::LpBall) throw Error("not an lpball");
  return data_->p;
}
const ConvexBody& ConvexBody::cone_base() const {
  if (kind() != BodyKind::Cone) throw Error("not a cone");
  return *data_->sub;
}
const Vec& ConvexBody::cone_apex() const {
  if (kind() != BodyKind::Cone) throw Error("not a cone");
  return data_->apex;
}
const Mat& ConvexBody::affine_matrix() const {
  if (kind() != BodyKind::Affine) throw Error("not an affine image");
  return data_->A;
}
const Vec& ConvexBody::affine_shift() const {
  if (kind() != BodyKind::Affine) throw Error("not an affine image");
  return data_->b;
}
const ConvexBody& ConvexBody::affine_inner() const {
  if (kind() != BodyKind::Affine) throw Error("not an affine image");
  return *data_->sub;
}
int ConvexBody::reuleaux_k() const {
  if (kind() != BodyKind::Reuleaux) throw Error("not a reuleaux polygon");
  return data_->k;
}

ConvexBody transform(const ConvexBody& K, const Mat& A, const Vec& b) {
  return ConvexBody::affine(A, b, K);
}

ConvexBody translate(const ConvexBody& K, const Vec& b) {
  return ConvexBody::affine(Mat::Identity(K.dim(), K.dim()), b, K);
}

ConvexBody scale_about_reference(const ConvexBody& K, double s) {
  if (!(s > 0)) throw Error("scale must be positive");
  const Vec& c = K.reference();
  return ConvexBody::affine(s * Mat::Identity(K.dim(), K.dim()), (1.0 - s) * c, K);
}

}  // namespace covfun
