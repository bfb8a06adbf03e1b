#include "covfun/cli/program.hpp"

#include "covfun/constructions.hpp"
#include "covfun/john.hpp"

#include <cmath>

namespace covfun::cli {

PipelineReport run_program(int n, double c, const std::vector<BodyFile>& bodies,
                           const ProgramOptions& opt) {
  if (n != 2 && n != 3) throw Error("program: n must be 2 or 3");
  if (!(c > 0.0 && c < 1.0)) throw Error("program: c must lie in (0, 1)");
  PipelineReport rep;
  rep.n = n;
  rep.c = c;
  rep.beta = beta_for_gap(c);
  try {
    rep.params = net_params(n, rep.beta);
  } catch (const Error& e) {
    rep.params_error = e.what();
  }
  rep.cardinality_log10 = net_cardinality_log_bound(n, rep.beta, 1.0);

  std::optional<CapCover> caps;
  if (opt.snap && rep.params) caps = cap_cover(n, rep.params->theta, opt.seed);

  SearchBudget budget;
  budget.max_time = opt.budget_seconds;
  budget.seed = opt.seed;
  budget.starts = opt.starts;
  SearchOptions sopt;
  sopt.verify.max_depth = opt.depth;
  const int m = 1 << n;

  bool all_ok = !bodies.empty();
  for (const BodyFile& file : bodies) {
    BodyOutcome out;
    out.name = file.name;
    if (!file.body) {
      out.error = file.error;
      all_ok = false;
      rep.bodies.push_back(std::move(out));
      continue;
    }
    const ConvexBody& K = *file.body;
    if (K.dim() != n) {
      out.error = "body dimension differs from n";
      all_ok = false;
      rep.bodies.push_back(std::move(out));
      continue;
    }
    try {
      JohnResult john = john_normalize(K);
      out.normalized = true;
      if (caps) out.snap = snap_result_to_json(snap_to_net(john.body, *rep.params, *caps));
    } catch (const Error& e) {
      if (out.normalized)
        out.error = std::string("snap: ") + e.what();
      else
        out.normalize_error = e.what();
    }
    // γ is affine invariant, so the search runs on the body as given.
    try {
      out.gamma = gamma_upper(K, m, budget, sopt);
      rep.max_gamma = std::max(rep.max_gamma, out.gamma->r_upper);
      if (!(out.gamma->r_upper <= c)) all_ok = false;
    } catch (const Error& e) {
      out.error = e.what();
      all_ok = false;
    }
    rep.bodies.push_back(std::move(out));
  }
  rep.consistent = all_ok;
  return rep;
}

Json pipeline_to_json(const PipelineReport& rep) {
  Json bodies = Json::array();
  for (const BodyOutcome& b : rep.bodies) {
    Json j = {{"name", b.name}, {"normalized", b.normalized}};
    if (!b.normalize_error.empty()) j["normalize_error"] = b.normalize_error;
    if (b.snap) j["snap"] = *b.snap;
    if (b.gamma) {
      j["gamma_upper"] = number(b.gamma->r_upper);
      j["within_c"] = b.gamma->r_upper <= rep.c;
      j["search"] = search_result_to_json(*b.gamma);
    }
    if (!b.error.empty()) j["error"] = b.error;
    bodies.push_back(j);
  }
  Json j = {{"n", rep.n},
            {"c_n", number(rep.c)},
            {"m", 1 << rep.n},
            {"beta", number(rep.beta)},
            {"net_cardinality_log10", number(rep.cardinality_log10)},
            {"net_cardinality_constant", "c = 1 (nominal)"},
            {"bodies", bodies},
            {"max_gamma", number(rep.max_gamma)},
            {"verdict", rep.consistent ? "consistent" : "inconsistent"}};
  j["net_params"] = rep.params ? net_params_to_json(*rep.params) : Json(nullptr);
  if (!rep.params_error.empty()) j["net_params_error"] = rep.params_error;
  return j;
}

}  // namespace covfun::cli
