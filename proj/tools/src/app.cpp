#include "covfun/cli/app.hpp"

#include "covfun/cli/bodies.hpp"
#include "covfun/cli/program.hpp"
#include "covfun/cli/svg.hpp"
#include "covfun/io.hpp"
#include "covfun/john.hpp"
#include "covfun/metrics.hpp"
#include "covfun/sampling.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <ctime>
#include <ostream>

namespace covfun::cli {

namespace {

struct Flags {
  std::string body;
  std::string config;
  std::string other;
  std::string svg;
  std::string slice;
  std::string cloud;
  std::string bodies;
  std::string out;
  std::string set = "planar";
  std::uint64_t seed = 1;
  double budget = 60.0;
  int depth = 40;
  int starts = 16;
  bool quiet = false;
  bool snap = false;
  bool points = false;
  int m = 0;
  int n = 0;
  int k = 3;
  int samples = 200;
  double beta = 0.0;
  double theta = 0.0;
  double c = 1.0;
  double margin = kCoverMargin;
};

std::string timestamp() {
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

int verdict_code(Verdict v) {
  switch (v) {
    case Verdict::Covered: return 0;
    case Verdict::Uncovered: return 1;
    case Verdict::Unknown: return 2;
  }
  return 2;
}

std::optional<double> parse_slice(const std::string& s) {
  if (s.empty()) return std::nullopt;
  if (s.rfind("z=", 0) != 0) throw CLI::ValidationError("--slice", "expected z=<level>");
  try {
    return std::stod(s.substr(2));
  } catch (const std::exception&) {
    throw CLI::ValidationError("--slice", "expected z=<level>");
  }
}

SearchBudget budget_of(const Flags& f) {
  SearchBudget b;
  b.max_time = f.budget;
  b.seed = f.seed;
  b.starts = f.starts;
  return b;
}

class Runner {
 public:
  Runner(const Flags& f, std::vector<std::string> args) : f_(f), args_(std::move(args)) {}

  // Inputs are digested as parsed documents so formatting does not matter.
  void input(const std::string& key, const Json& doc) { inputs_[key] = doc; }

  int finish(const std::string& command, const Json& outcome, int code, std::ostream& out) {
    Json digest_src = {{"command", command}, {"args", args_}, {"inputs", inputs_}};
    Json report = {{"command", command},
                   {"tool_version", COVFUN_VERSION},
                   {"seed", f_.seed},
                   {"inputs_digest", fnv1a_hex(digest_src.dump())},
                   {"outcome", outcome},
                   {"exit_code", code},
                   {"wall_time", number(elapsed())},
                   {"timestamp", timestamp()}};
    if (!f_.quiet) out << report.dump(2) << "\n";
    return code;
  }

 private:
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

  const Flags& f_;
  std::vector<std::string> args_;
  Json inputs_ = Json::object();
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

ConvexBody read_body(const std::string& path, Runner& run, const char* key = "body") {
  if (path.empty()) throw CLI::ValidationError("--body", "a body file is required");
  Json doc = read_json_file(path);
  run.input(key, doc);
  return body_from_json(doc);
}

CoverConfig read_config(const std::string& path, Runner& run) {
  if (path.empty()) throw CLI::ValidationError("--config", "a config file is required");
  Json doc = read_json_file(path);
  run.input("config", doc);
  return config_from_json(doc);
}

void maybe_svg(const Flags& f, const ConvexBody& K, const CoverConfig& cfg,
               const std::optional<Vec>& witness) {
  if (f.svg.empty()) return;
  write_text_file(f.svg, render_svg(K, cfg, witness, parse_slice(f.slice)));
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Flags f;
  CLI::App app{"Covering functionals of convex bodies: verification, search and tools", "covfun"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--body", f.body, "Body JSON file");
  app.add_option("--config", f.config, "Cover configuration JSON file");
  app.add_option("--seed", f.seed, "Random seed");
  app.add_option("--budget-seconds", f.budget, "Time budget per search");
  app.add_option("--depth", f.depth, "Maximum subdivision depth for verification");
  app.add_option("--starts", f.starts, "Multi-start count for searches");
  app.add_option("--margin", f.margin, "Covering margin for verify and render")->check(CLI::NonNegativeNumber);
  app.add_option("--svg", f.svg, "Write an SVG rendering to this file");
  app.add_option("--slice", f.slice, "Section plane for 3-D rendering, as z=<level>");
  app.add_flag("--quiet", f.quiet, "Suppress the JSON report");

  auto* verify = app.add_subcommand("verify", "Verify that a configuration covers a body");
  auto* gamma = app.add_subcommand("gamma", "Search for a verified upper bound on gamma_m");
  gamma->add_option("-m", f.m, "Number of translates")->required()->check(CLI::PositiveNumber);
  auto* bm = app.add_subcommand("bm", "Upper bound on the Banach-Mazur distance of two bodies");
  bm->add_option("--other", f.other, "Second body JSON file")->required();

  auto* net = app.add_subcommand("net", "Radial-grid net machinery");
  net->require_subcommand(1);
  auto* net_params_cmd = net->add_subcommand("params", "theta and m for a target beta");
  net_params_cmd->add_option("-n", f.n, "Dimension")->required();
  net_params_cmd->add_option("--beta", f.beta, "Target beta")->required();
  auto* net_caps = net->add_subcommand("caps", "Cap covering of the sphere of radius n");
  net_caps->add_option("-n", f.n, "Dimension")->required();
  net_caps->add_option("--theta", f.theta, "Euclidean cap radius")->required();
  net_caps->add_flag("--points", f.points, "Include the cap centers");
  auto* net_card = net->add_subcommand("cardinality", "log10 of the net cardinality bound");
  net_card->add_option("-n", f.n, "Dimension")->required();
  net_card->add_option("--beta", f.beta, "Target beta")->required();
  net_card->add_option("--c", f.c, "Cap covering constant");
  auto* net_snap = net->add_subcommand("snap", "Snap a John-normalized body to the radial grid");
  net_snap->add_option("--beta", f.beta, "Target beta")->required();

  auto* borsuk = app.add_subcommand("borsuk", "Diameter partitions and constant-width bodies");
  borsuk->require_subcommand(1);
  auto* phi = borsuk->add_subcommand("phi", "Upper bound on phi_m of a point cloud or sampled body");
  phi->add_option("-m", f.m, "Number of parts")->required()->check(CLI::PositiveNumber);
  phi->add_option("--cloud", f.cloud, "Point cloud JSON file");
  phi->add_option("--samples", f.samples, "Boundary samples when --body is given");
  auto* reuleaux = borsuk->add_subcommand("reuleaux", "Width-1 Reuleaux polygon");
  reuleaux->add_option("-k", f.k, "Odd number of arcs")->required();
  reuleaux->add_option("--out", f.out, "Write the body JSON to this file");
  auto* check = borsuk->add_subcommand("check", "Insphere and circumsphere bounds of a width-1 body");
  check->add_option("-n", f.n, "Dimension (defaults to the body's)");

  auto* program = app.add_subcommand("program", "Run the desk-scale covering program on a body set");
  program->add_option("-n", f.n, "Dimension")->required();
  program->add_option("--c", f.c, "Target c_n")->required();
  program->add_option("--bodies", f.bodies, "Directory of body JSON files")->required();
  program->add_flag("--snap", f.snap, "Snap each normalized body to the radial grid");
  auto* tables = app.add_subcommand("tables", "Re-derive the known-value tables as verified bounds");
  auto* render = app.add_subcommand("render", "Render a body and a configuration as SVG");
  auto* bodies = app.add_subcommand("bodies", "Write a built-in body set as JSON files");
  bodies->add_option("--set", f.set, "planar or space")->check(CLI::IsMember({"planar", "space"}));
  bodies->add_option("--out", f.out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "covfun: " << e.what() << "\n";
    return kExitUsage;
  }

  std::vector<std::string> args(argv + 1, argv + argc);
  Runner run(f, args);
  try {
    if (*verify) {
      ConvexBody K = read_body(f.body, run);
      CoverConfig cfg = read_config(f.config, run);
      CoverOptions opt;
      opt.max_depth = f.depth;
      opt.margin = f.margin;
      CoverCertificate cert = verify_cover(K, cfg, opt);
      maybe_svg(f, K, cfg, cert.witness);
      Json outcome = {{"r", number(cfg.r)}, {"m", cfg.centers.size()}, {"certificate", certificate_to_json(cert)}};
      return run.finish("verify", outcome, verdict_code(cert.verdict), out);
    }
    if (*gamma) {
      ConvexBody K = read_body(f.body, run);
      SearchOptions opt;
      opt.verify.max_depth = f.depth;
      SearchResult res = gamma_upper(K, f.m, budget_of(f), opt);
      maybe_svg(f, K, res.config, res.certificate.witness);
      Json outcome = search_result_to_json(res);
      outcome["certificate_digest"] = fnv1a_hex(certificate_to_json(res.certificate).dump());
      return run.finish("gamma", outcome, verdict_code(res.certificate.verdict), out);
    }
    if (*bm) {
      ConvexBody A = read_body(f.body, run);
      ConvexBody B = read_body(f.other, run, "other");
      return run.finish("bm", bm_result_to_json(bm_distance_upper(A, B, budget_of(f))), 0, out);
    }
    if (*net) {
      if (*net_params_cmd) {
        NetParams p = net_params(f.n, f.beta);
        Json outcome = net_params_to_json(p);
        FBound fb = f_bound(p.n, p.m, p.theta);
        outcome["asymptotic"] = number(fb.asymptotic);
        outcome["envelope"] = number(fb.envelope);
        return run.finish("net params", outcome, 0, out);
      }
      if (*net_caps) {
        return run.finish("net caps", cap_cover_to_json(cap_cover(f.n, f.theta, f.seed), f.points), 0, out);
      }
      if (*net_card) {
        Json outcome = {{"n", f.n},
                        {"beta", number(f.beta)},
                        {"c", number(f.c)},
                        {"log10_bound", number(net_cardinality_log_bound(f.n, f.beta, f.c))}};
        return run.finish("net cardinality", outcome, 0, out);
      }
      ConvexBody K = read_body(f.body, run);
      NetParams p = net_params(K.dim(), f.beta);
      JohnResult john = john_normalize(K);
      SnapResult s = snap_to_net(john.body, p, cap_cover(K.dim(), p.theta, f.seed));
      Json outcome = snap_result_to_json(s);
      outcome["normalization"] = {{"inner_radius", number(john.cert.inner_radius)},
                                  {"outer_radius", number(john.cert.outer_radius)}};
      return run.finish("net snap", outcome, 0, out);
    }
    if (*borsuk) {
      if (*phi) {
        PointCloud X;
        if (!f.cloud.empty()) {
          Json doc = read_json_file(f.cloud);
          run.input("cloud", doc);
          X = cloud_from_json(doc);
        } else {
          X.points = boundary_sample(read_body(f.body, run), f.samples);
        }
        SearchBudget b = budget_of(f);
        return run.finish("borsuk phi", partition_to_json(phi_upper(X, f.m, b)), 0, out);
      }
      if (*reuleaux) {
        ConvexBody R = reuleaux_polygon(f.k);
        if (!f.out.empty()) write_text_file(f.out, body_to_json(R).dump(2) + "\n");
        Json outcome = {{"body", body_to_json(R)},
                        {"area", number(volume(R))},
                        {"diameter", number(diameter(R).value)}};
        return run.finish("borsuk reuleaux", outcome, 0, out);
      }
      ConvexBody K = read_body(f.body, run);
      RadiiCheck c = constant_width_radii_check(K, f.n > 0 ? f.n : K.dim());
      Json outcome = {{"holds", c.holds},         {"r", number(c.r)},
                      {"R", number(c.R)},         {"mu_n", number(c.mu)},
                      {"lower", number(c.lower)}, {"upper", number(c.upper)},
                      {"width_min", number(c.width_min)}, {"width_max", number(c.width_max)}};
      return run.finish("borsuk check", outcome, c.holds ? 0 : 1, out);
    }
    if (*program) {
      ProgramOptions opt;
      opt.budget_seconds = f.budget;
      opt.seed = f.seed;
      opt.starts = f.starts;
      opt.depth = f.depth;
      opt.snap = f.snap;
      auto files = load_body_dir(f.bodies);
      for (const auto& b : files)
        if (b.body) run.input("bodies/" + b.name, body_to_json(*b.body));
      PipelineReport rep = run_program(f.n, f.c, files, opt);
      return run.finish("program", pipeline_to_json(rep), rep.consistent ? 0 : 1, out);
    }
    if (*tables) {
      TablesOptions opt;
      opt.budget_seconds = app.get_option("--budget-seconds")->count() ? f.budget : opt.budget_seconds;
      opt.seed = f.seed;
      opt.starts = f.starts;
      return run.finish("tables", {{"entries", run_tables(opt)}}, 0, out);
    }
    if (*render) {
      if (f.svg.empty()) throw CLI::ValidationError("--svg", "an output file is required");
      ConvexBody K = read_body(f.body, run);
      CoverConfig cfg = read_config(f.config, run);
      std::optional<double> slice = parse_slice(f.slice);
      if (K.dim() == 3 && !slice) throw CLI::ValidationError("--slice", "3-D bodies need --slice z=<level>");
      CoverOptions opt;
      opt.max_depth = f.depth;
      opt.margin = f.margin;
      CoverCertificate cert = verify_cover(K, cfg, opt);
      std::string svg = render_svg(K, cfg, cert.witness, slice);
      write_text_file(f.svg, svg);
      Json outcome = {{"svg", f.svg}, {"bytes", svg.size()}, {"digest", fnv1a_hex(svg)},
                      {"verdict", to_string(cert.verdict)}};
      return run.finish("render", outcome, 0, out);
    }
    if (*bodies) {
      write_body_dir(f.out, f.set == "planar" ? planar_battery() : space_battery());
      return run.finish("bodies", {{"set", f.set}, {"out", f.out}}, 0, out);
    }
  } catch (const CLI::ValidationError& e) {
    err << "covfun: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    err << "covfun: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "covfun: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "covfun: internal error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace covfun::cli
