#include "covfun/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace covfun {

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw IoError("malformed JSON in " + path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out) throw IoError("write failed for " + path);
}

Json number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

namespace {

double as_double(const Json& j, const char* what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf" || s == "Infinity") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  throw IoError(std::string("expected a number for ") + what);
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw IoError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

Mat mat_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw IoError("matrix must be a non-empty array of rows");
  const int rows = static_cast<int>(j.size());
  const int cols = j.front().is_array() ? static_cast<int>(j.front().size()) : 0;
  if (rows > kMaxDim || cols != rows) throw IoError("matrix must be square of size 2 or 3");
  Mat M(rows, cols);
  for (int r = 0; r < rows; ++r) {
    if (!j[r].is_array() || static_cast<int>(j[r].size()) != cols) throw IoError("ragged matrix");
    for (int c = 0; c < cols; ++c) M(r, c) = as_double(j[r][c], "matrix entry");
  }
  return M;
}

Json mat_to_json(const Mat& M) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < M.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < M.cols(); ++c) row.push_back(number(M(r, c)));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

Json to_json(const Vec& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(number(v[i]));
  return a;
}

Json to_json(const Points& pts) {
  Json a = Json::array();
  for (const Vec& p : pts) a.push_back(to_json(p));
  return a;
}

Vec vec_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || j.size() > kMaxDim) throw IoError("point must be an array of 1 to 3 numbers");
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = as_double(j[i], "coordinate");
  return v;
}

Points points_from_json(const Json& j) {
  if (!j.is_array()) throw IoError("expected an array of points");
  Points out;
  for (const Json& p : j) out.push_back(vec_from_json(p));
  return out;
}

ConvexBody body_from_json(const Json& j) {
  try {
    const std::string type = field(j, "type").get<std::string>();
    ConvexBody K = [&]() {
      if (type == "vpolytope") return ConvexBody::vpolytope(points_from_json(field(j, "vertices")));
      if (type == "hpolytope") {
        std::vector<double> offsets;
        for (const Json& b : field(j, "offsets")) offsets.push_back(as_double(b, "offset"));
        return ConvexBody::hpolytope(points_from_json(field(j, "normals")), offsets);
      }
      if (type == "lpball")
        return ConvexBody::lp_ball(as_double(field(j, "p"), "p"), field(j, "dim").get<int>());
      if (type == "cone")
        return ConvexBody::cone(body_from_json(field(j, "base")), vec_from_json(field(j, "apex")));
      if (type == "affine")
        return ConvexBody::affine(mat_from_json(field(j, "matrix")), vec_from_json(field(j, "shift")),
                                  body_from_json(field(j, "inner")));
      if (type == "reuleaux") return ConvexBody::reuleaux(field(j, "k").get<int>());
      throw IoError("unknown body type \"" + type + "\"");
    }();
    if (j.contains("reference")) K = K.with_reference(vec_from_json(j.at("reference")));
    return K;
  } catch (const Json::exception& e) {
    throw IoError(std::string("malformed body: ") + e.what());
  }
}

Json body_to_json(const ConvexBody& K) {
  Json j;
  switch (K.kind()) {
    case BodyKind::VPolytope:
      j = {{"type", "vpolytope"}, {"vertices", to_json(K.vertices_input())}};
      break;
    case BodyKind::HPolytope: {
      Json off = Json::array();
      for (double b : K.offsets_input()) off.push_back(number(b));
      j = {{"type", "hpolytope"}, {"normals", to_json(K.normals_input())}, {"offsets", off}};
      break;
    }
    case BodyKind::LpBall:
      j = {{"type", "lpball"}, {"p", number(K.lp_exponent())}, {"dim", K.dim()}};
      break;
    case BodyKind::Cone:
      j = {{"type", "cone"}, {"base", body_to_json(K.cone_base())}, {"apex", to_json(K.cone_apex())}};
      break;
    case BodyKind::Affine:
      j = {{"type", "affine"},
           {"matrix", mat_to_json(K.affine_matrix())},
           {"shift", to_json(K.affine_shift())},
           {"inner", body_to_json(K.affine_inner())}};
      break;
    case BodyKind::Reuleaux:
      j = {{"type", "reuleaux"}, {"k", K.reuleaux_k()}};
      break;
  }
  j["reference"] = to_json(K.reference());
  return j;
}

ConvexBody load_body(const std::string& path) { return body_from_json(read_json_file(path)); }

CoverConfig config_from_json(const Json& j) {
  try {
    CoverConfig cfg;
    cfg.r = as_double(field(j, "r"), "r");
    cfg.centers = points_from_json(field(j, "centers"));
    return cfg;
  } catch (const Json::exception& e) {
    throw IoError(std::string("malformed cover config: ") + e.what());
  }
}

Json config_to_json(const CoverConfig& cfg) {
  return {{"r", number(cfg.r)}, {"centers", to_json(cfg.centers)}};
}

CoverConfig load_config(const std::string& path) { return config_from_json(read_json_file(path)); }

Json certificate_to_json(const CoverCertificate& cert) {
  Json j = {{"verdict", to_string(cert.verdict)},
            {"cells_examined", cert.cells_examined},
            {"max_depth", cert.max_depth},
            {"depth_reached", cert.depth_reached},
            {"margin", number(cert.margin)},
            {"unresolved_cells", cert.unresolved_cells},
            {"max_inflation_used", number(cert.max_inflation_used)},
            {"boundary_patches", cert.boundary_patches},
            {"trivial", cert.trivial}};
  j["witness"] = cert.witness ? to_json(*cert.witness) : Json(nullptr);
  if (!cert.extra_witnesses.empty()) j["extra_witnesses"] = to_json(cert.extra_witnesses);
  return j;
}

Json search_result_to_json(const SearchResult& res) {
  return {{"m", res.m},
          {"r_upper", number(res.r_upper)},
          {"volume_floor", number(res.volume_floor)},
          {"sample_value", number(res.sample_value)},
          {"config", config_to_json(res.config)},
          {"certificate", certificate_to_json(res.certificate)},
          {"verify_calls", res.verify_calls},
          {"starts_run", res.starts_run},
          {"from_seed", res.from_seed}};
}

Json bm_result_to_json(const BmResult& res) {
  return {{"distance", number(res.distance)},
          {"ratio", number(res.ratio)},
          {"map", mat_to_json(res.map)},
          {"shift", to_json(res.shift)},
          {"outer_shift", to_json(res.outer_shift)},
          {"evaluations", res.evaluations},
          {"starts", res.starts}};
}

Json net_params_to_json(const NetParams& p) {
  return {{"n", p.n},         {"beta", number(p.beta)}, {"theta", number(p.theta)},
          {"m", p.m},         {"f", number(p.f)},       {"f_over_inner", number(p.ratio)}};
}

Json cap_cover_to_json(const CapCover& caps, bool with_points) {
  Json j = {{"n", caps.n},
            {"theta", number(caps.theta)},
            {"theta_prime", number(caps.theta_prime)},
            {"count", caps.count},
            {"measured_angle", number(caps.measured_angle)},
            {"sample_count", caps.sample_count},
            {"reference_count", number(caps.reference_count)}};
  if (with_points) j["points"] = to_json(caps.points);
  return j;
}

Json snap_result_to_json(const SnapResult& res) {
  return {{"P", {{"vertices", to_json(res.P.vertices)}}},
          {"sigma", number(res.sigma)},
          {"sigma_bound", number(res.sigma_bound)},
          {"sigma_exact", res.sigma_exact},
          {"inner_radius", number(res.inner_radius)},
          {"inner_target", number(res.inner_target)},
          {"bm_log_bound", number(res.bm_log_bound)},
          {"params", net_params_to_json(res.params)}};
}

PointCloud cloud_from_json(const Json& j) {
  try {
    return PointCloud{points_from_json(field(j, "points"))};
  } catch (const Json::exception& e) {
    throw IoError(std::string("malformed point cloud: ") + e.what());
  }
}

Json cloud_to_json(const PointCloud& X) { return {{"points", to_json(X.points)}}; }

Json partition_to_json(const PartitionResult& res) {
  return {{"assignment", res.assignment},
          {"r_ratio", number(res.r_ratio)},
          {"diameter", number(res.diameter)},
          {"exact", res.exact},
          {"estimate", "sampled"}};
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace covfun
