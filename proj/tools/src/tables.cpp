#include "covfun/cli/program.hpp"

#include "covfun/constructions.hpp"

#include <cmath>
#include <cstdio>

namespace covfun::cli {

namespace {

struct Entry {
  std::string table;
  std::string row;
  int m = 0;
  std::string target;
  double target_value = 0.0;
  double tol = 0.0;
  std::optional<double> value;
  std::string method;
  std::string body;
};

Json entry_json(const Entry& e) {
  Json j = {{"table", e.table}, {"row", e.row}, {"m", e.m}, {"target", e.target}};
  if (e.method == "open") {
    j["status"] = "open";
    if (e.value) j["best_found"] = number(*e.value);
    return j;
  }
  j["tolerance"] = number(e.tol);
  j["method"] = e.method;
  if (!e.body.empty()) j["body"] = e.body;
  if (e.value) {
    j["value"] = number(*e.value);
    char buf[96];
    std::snprintf(buf, sizeof buf, "<= %s + %g", e.target.c_str(), e.tol);
    j["status"] = *e.value <= e.target_value + e.tol ? buf : "not reached";
  } else {
    j["status"] = "not reached";
  }
  return j;
}

// Verified ratio of a fixed configuration, or nullopt.
std::optional<double> verified(const ConvexBody& K, CoverConfig cfg, double r, double margin,
                               int depth) {
  cfg.r = r;
  CoverOptions opt;
  opt.margin = margin;
  opt.max_depth = depth;
  if (verify_cover(K, cfg, opt).verdict == Verdict::Covered) return r;
  return std::nullopt;
}

CoverConfig vertex_homothets(const ConvexBody& K, double r) {
  // The homothet about vertex v with ratio r is ref + r(K − ref) + (1 − r)(v − ref).
  CoverConfig cfg;
  cfg.r = r;
  for (const Vec& v : K.polytope().vertices) cfg.centers.push_back((1.0 - r) * (v - K.reference()));
  return cfg;
}

}  // namespace

Json run_tables(const TablesOptions& opt) {
  SearchBudget budget;
  budget.max_time = opt.budget_seconds;
  budget.seed = opt.seed;
  budget.starts = opt.starts;
  std::vector<Entry> entries;

  const ConvexBody triangle = regular_polygon(3);
  const ConvexBody square = ConvexBody::lp_ball(std::numeric_limits<double>::infinity(), 2);
  {
    CoverConfig cfg = vertex_homothets(triangle, 2.0 / 3.0);
    entries.push_back({"1", "gamma(2,m)", 3, "2/3", 2.0 / 3.0, 1e-6,
                       verified(triangle, cfg, 2.0 / 3.0 + 1e-6, kCoverMargin, 40), "construction",
                       "triangle"});
    CoverConfig quad = vertex_homothets(square, 0.5);
    entries.push_back({"1", "gamma(2,m)", 4, "1/2", 0.5, 1e-6,
                       verified(square, quad, 0.5 + 1e-6, kCoverMargin, 40), "construction", "square"});
    quad.centers.push_back(quad.centers.front());
    entries.push_back({"1", "gamma(2,m)", 5, "1/2", 0.5, 1e-6,
                       verified(square, quad, 0.5 + 1e-6, kCoverMargin, 40), "construction", "square"});
  }

  const auto battery = planar_battery();
  {
    entries.push_back({"2", "Gamma(2,m)", 3, "1", 1.0, 0.0, 1.0, "trivial", "all"});
    double worst4 = 0.0, worst7 = 0.0, worst8 = 0.0;
    for (const auto& b : battery) {
      worst4 = std::max(worst4, gamma_upper(b.body, 4, budget).r_upper);
      SearchResult g7 = gamma_upper(b.body, 7, budget);
      worst7 = std::max(worst7, g7.r_upper);
      SearchOptions seeded;
      seeded.seed = &g7;
      worst8 = std::max(worst8, gamma_upper(b.body, 8, budget, seeded).r_upper);
    }
    entries.push_back({"2", "Gamma(2,m)", 4, "sqrt(2)/2", std::sqrt(0.5), 0.01, worst4, "search", "battery"});
    entries.push_back({"2", "Gamma(2,m)", 5, "?", 0, 0, std::nullopt, "open", ""});
    entries.push_back({"2", "Gamma(2,m)", 6, "?", 0, 0, std::nullopt, "open", ""});
    entries.push_back({"2", "Gamma(2,m)", 7, "1/2", 0.5, 0.01, worst7, "search", "battery"});
    entries.push_back({"2", "Gamma(2,m)", 8, "1/2", 0.5, 0.01, worst8, "search", "battery"});
  }

  {
    const ConvexBody T = regular_tetrahedron();
    entries.push_back({"3", "gamma_m(T)", 4, "3/4", 0.75, 0.01, gamma_upper(T, 4, budget).r_upper,
                       "search", "tetrahedron"});
    entries.push_back({"3", "gamma_m(T)", 5, "9/13", 9.0 / 13.0, 0.01,
                       gamma_upper(T, 5, budget).r_upper, "search", "tetrahedron"});
    for (int m = 6; m <= 8; ++m) entries.push_back({"3", "gamma_m(T)", m, "?", 0, 0, std::nullopt, "open", ""});

    const ConvexBody K1 = ConvexBody::lp_ball(1.0, 3);
    for (int m = 4; m <= 5; ++m) entries.push_back({"3", "gamma_m(K1)", m, "1", 1.0, 0.0, 1.0, "trivial", "K1"});
    CoverConfig oct;
    for (int i = 0; i < 3; ++i)
      for (double s : {1.0, -1.0}) {
        Vec x = Vec::Zero(3);
        x[i] = s / 3.0;
        oct.centers.push_back(x);
      }
    for (int m = 6; m <= 8; ++m) {
      CoverConfig cfg = oct;
      while (static_cast<int>(cfg.centers.size()) < m) cfg.centers.push_back(cfg.centers.front());
      entries.push_back({"3", "gamma_m(K1)", m, "2/3", 2.0 / 3.0, 1e-9,
                         verified(K1, cfg, 2.0 / 3.0 + 1e-9, 1e-10, 200), "construction", "K1"});
    }

    const ConvexBody K2 = ConvexBody::lp_ball(2.0, 3);
    const std::pair<int, std::pair<const char*, double>> rows[] = {
        {4, {"0.9428", 0.9428}}, {5, {"0.8944", 0.8944}}, {6, {"0.8164", 0.8164}}, {7, {"0.7775", 0.7775}}};
    for (const auto& [m, t] : rows)
      entries.push_back({"3", "gamma_m(K2)", m, t.first, t.second, 0.01, gamma_upper(K2, m, budget).r_upper,
                         "search", "K2"});
    entries.push_back({"3", "gamma_m(K2)", 8, "?", 0, 0, std::nullopt, "open", ""});
  }

  Json out = Json::array();
  for (const Entry& e : entries) out.push_back(entry_json(e));
  return out;
}

}  // namespace covfun::cli
