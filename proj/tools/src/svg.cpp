#include "covfun/cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace covfun::cli {

namespace {

constexpr int kCanvas = 800;
constexpr int kRays = 720;

Points ordered(const Points& pts) {
  Points out;
  for (int i : hull2d_indices(pts, 0.0)) out.push_back(pts[i]);
  return out;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

}  // namespace

Points planar_outline(const ConvexBody& K) {
  if (K.dim() != 2) throw Error("planar_outline: body must be planar");
  if (K.is_polytope()) return ordered(K.polytope().vertices);
  Points out;
  for (int k = 0; k < kRays; ++k) {
    double a = 2.0 * std::numbers::pi * k / kRays;
    out.push_back(K.boundary_point(make_vec({std::cos(a), std::sin(a)})));
  }
  return out;
}

Points section_outline(const ConvexBody& K, double level) {
  if (K.dim() != 3) throw Error("section_outline: body must be 3-dimensional");
  const Vec up = make_vec({0, 0, 1});
  const double top = K.support(up), bottom = -K.support(-up);
  const double tol = 1e-9 * std::max(1.0, top - bottom);
  if (!(level > bottom + tol && level < top - tol)) return {};
  if (K.is_polytope()) {
    const Polytope& P = K.polytope();
    Points cut;
    for (const auto& tri : P.boundary)
      for (int e = 0; e < 3; ++e) {
        const Vec& a = P.vertices[tri[e]];
        const Vec& b = P.vertices[tri[(e + 1) % 3]];
        const double da = a[2] - level, db = b[2] - level;
        if ((da <= 0 && db >= 0) || (da >= 0 && db <= 0)) {
          if (da == db) continue;
          const Vec p = a + (da / (da - db)) * (b - a);
          cut.push_back(p.head(2));
        }
      }
    if (cut.size() < 3) return {};
    return ordered(cut);
  }
  // An interior point of the section on the segment from the reference point
  // to the top or bottom support point.
  const Vec& ref = K.reference();
  const Vec far = level >= ref[2] ? K.support_point(up) : K.support_point(-up);
  const double t = far[2] == ref[2] ? 0.0 : (level - ref[2]) / (far[2] - ref[2]);
  const Vec q = ref + t * (far - ref);
  Points out;
  for (int k = 0; k < kRays; ++k) {
    double a = 2.0 * std::numbers::pi * k / kRays;
    Vec d = make_vec({std::cos(a), std::sin(a), 0.0});
    Vec p = q + K.ray_exit(q, d) * d;
    out.push_back(p.head(2));
  }
  return out;
}

std::string render_svg(const ConvexBody& K, const CoverConfig& cfg,
                       const std::optional<Vec>& witness, std::optional<double> slice_z) {
  const int dim = K.dim();
  if (dim == 3 && !slice_z) throw Error("render: 3-D bodies need --slice z=<level>");
  if (dim != 2 && dim != 3) throw Error("render: unsupported dimension");
  const Vec& ref = K.reference();

  Points body;
  std::vector<Points> translates;
  if (dim == 2) {
    body = planar_outline(K);
    for (const Vec& x : cfg.centers) {
      Points poly;
      for (const Vec& b : body) poly.push_back(ref + cfg.r * (b - ref) + x);
      translates.push_back(poly);
    }
  } else {
    const double z = *slice_z;
    body = section_outline(K, z);
    if (body.empty()) throw Error("render: the slice misses the body");
    for (const Vec& x : cfg.centers) {
      // Section of ref + r(K − ref) + x at z is the image of K's section at z′.
      const double zp = ref[2] + (z - ref[2] - x[2]) / cfg.r;
      Points poly;
      for (const Vec& b : section_outline(K, zp)) {
        Vec p = ref.head(2) + cfg.r * (b - ref.head(2)) + x.head(2);
        poly.push_back(p);
      }
      translates.push_back(poly);
    }
  }

  double xmin = body.front()[0], xmax = xmin, ymin = body.front()[1], ymax = ymin;
  for (const Vec& p : body) {
    xmin = std::min(xmin, p[0]);
    xmax = std::max(xmax, p[0]);
    ymin = std::min(ymin, p[1]);
    ymax = std::max(ymax, p[1]);
  }
  const double span = std::max({xmax - xmin, ymax - ymin, 1e-12});
  const double scale = 0.9 * kCanvas / span;
  const double cx = 0.5 * (xmin + xmax), cy = 0.5 * (ymin + ymax);
  auto X = [&](double x) { return 0.5 * kCanvas + scale * (x - cx); };
  auto Y = [&](double y) { return 0.5 * kCanvas - scale * (y - cy); };
  auto points_attr = [&](const Points& poly) {
    std::string s;
    for (std::size_t i = 0; i < poly.size(); ++i) {
      if (i) s += ' ';
      s += fmt(X(poly[i][0])) + "," + fmt(Y(poly[i][1]));
    }
    return s;
  };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kCanvas << "\" height=\"" << kCanvas
     << "\" viewBox=\"0 0 " << kCanvas << " " << kCanvas << "\">\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << kCanvas << "\" height=\"" << kCanvas << "\" fill=\"white\"/>\n";
  for (const Points& poly : translates) {
    if (poly.empty()) continue;
    os << "<polygon class=\"translate\" points=\"" << points_attr(poly)
       << "\" fill=\"#3b6fd8\" fill-opacity=\"0.15\" stroke=\"#3b6fd8\" stroke-width=\"1\"/>\n";
  }
  os << "<polygon class=\"body\" points=\"" << points_attr(body)
     << "\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>\n";
  if (witness) {
    const Vec& w = *witness;
    bool on_slice = dim == 2 || std::abs(w[2] - *slice_z) <= 1e-3 * span;
    if (on_slice)
      os << "<circle class=\"witness\" cx=\"" << fmt(X(w[0])) << "\" cy=\"" << fmt(Y(w[1]))
         << "\" r=\"6\" fill=\"red\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace covfun::cli
