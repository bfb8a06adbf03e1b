#pragma once

#include "covfun/cli/bodies.hpp"
#include "covfun/io.hpp"

namespace covfun::cli {

struct ProgramOptions {
  double budget_seconds = 60.0;
  std::uint64_t seed = 1;
  int starts = 16;
  int depth = 40;
  bool snap = false;  // also snap each John-normalized body to the radial grid
};

struct BodyOutcome {
  std::string name;
  bool normalized = false;
  std::string normalize_error;
  std::optional<Json> snap;
  std::optional<SearchResult> gamma;
  std::string error;
};

// The desk-scale Hadwiger program: β from the target c_n, the net
// parameters and log-cardinality for that β, then a verified γ_(2ⁿ) bound
// for each body of the supplied set.
struct PipelineReport {
  int n = 0;
  double c = 0.0;
  double beta = 0.0;
  std::optional<NetParams> params;
  std::string params_error;
  double cardinality_log10 = 0.0;
  std::vector<BodyOutcome> bodies;
  double max_gamma = 0.0;
  bool consistent = false;  // every body has a verified bound <= c
};

PipelineReport run_program(int n, double c, const std::vector<BodyFile>& bodies,
                           const ProgramOptions& opt);
Json pipeline_to_json(const PipelineReport& report);

struct TablesOptions {
  double budget_seconds = 20.0;
  std::uint64_t seed = 1;
  int starts = 16;
};

// Re-derives the checkable entries of the known-value tables as verified
// upper bounds; unknown entries are reported as "open".
Json run_tables(const TablesOptions& opt);

}  // namespace covfun::cli
