#pragma once

#include "covfun/banach_mazur.hpp"
#include "covfun/betanet.hpp"
#include "covfun/borsuk.hpp"
#include "covfun/cover.hpp"
#include "covfun/search.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace covfun {

using Json = nlohmann::json;

// Raised for unreadable files and malformed documents.
class IoError : public Error {
 public:
  using Error::Error;
};

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// Non-finite values become the strings "inf", "-inf" and "nan".
Json number(double x);
Json to_json(const Vec& v);
Json to_json(const Points& pts);
Vec vec_from_json(const Json& j);
Points points_from_json(const Json& j);

// Body documents:
//   {"type":"vpolytope","vertices":[[...],...]}
//   {"type":"hpolytope","normals":[[...],...],"offsets":[...]}
//   {"type":"lpball","p":2.0 | "inf","dim":3}
//   {"type":"cone","base":<2-D body>,"apex":[x,y,z]}
//   {"type":"affine","matrix":[[...],...],"shift":[...],"inner":<body>}
//   {"type":"reuleaux","k":3}
// An optional "reference" point replaces the default anchor.
ConvexBody body_from_json(const Json& j);
Json body_to_json(const ConvexBody& K);
ConvexBody load_body(const std::string& path);

// {"r":0.5,"centers":[[...],...]}
CoverConfig config_from_json(const Json& j);
Json config_to_json(const CoverConfig& cfg);
CoverConfig load_config(const std::string& path);

Json certificate_to_json(const CoverCertificate& cert);
Json search_result_to_json(const SearchResult& res);
Json bm_result_to_json(const BmResult& res);
Json net_params_to_json(const NetParams& p);
Json cap_cover_to_json(const CapCover& caps, bool with_points);
Json snap_result_to_json(const SnapResult& res);

// {"points":[[...],...]}
PointCloud cloud_from_json(const Json& j);
Json cloud_to_json(const PointCloud& X);
Json partition_to_json(const PartitionResult& res);

// 64-bit FNV-1a of the bytes, as 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace covfun
