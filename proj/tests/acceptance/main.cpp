// Acceptance run: one [PASS]/[FAIL] line per criterion, nonzero exit on any failure.
#include "covfun/betanet.hpp"
#include "covfun/borsuk.hpp"
#include "covfun/cli/app.hpp"
#include "covfun/cli/bodies.hpp"
#include "covfun/constructions.hpp"
#include "covfun/io.hpp"
#include "covfun/john.hpp"
#include "covfun/sampling.hpp"
#include "covfun/search.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace covfun;

namespace {

const double kInf = std::numeric_limits<double>::infinity();
const std::string kData = COVFUN_TEST_DATA;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Criterion {
  bool ok = true;
  std::vector<std::string> notes;

  void check(bool cond, const std::string& what) {
    if (!cond) ok = false;
    notes.push_back((cond ? "" : "FAILED ") + what);
  }
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt2(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

int failures = 0;
int index = 0;
std::vector<int> selected;  // empty: run everything

void report(const char* title, const std::function<void(Criterion&)>& body) {
  ++index;
  if (!selected.empty() && std::find(selected.begin(), selected.end(), index) == selected.end()) return;
  Criterion c;
  const auto t0 = Clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.check(false, std::string("exception: ") + e.what());
  }
  const double dt = seconds_since(t0);
  if (!c.ok) ++failures;
  std::printf("[%s] %s (%.1f s)\n", c.ok ? "PASS" : "FAIL", title, dt);
  for (const std::string& n : c.notes) std::printf("    %s\n", n.c_str());
  std::fflush(stdout);
}

SearchBudget budget(double seconds, std::uint64_t seed = 1) {
  SearchBudget b;
  b.max_time = seconds;
  b.seed = seed;
  return b;
}

// Brute-force m-colorability of the conflict graph (edges: distance > threshold).
bool brute_colorable(const Points& pts, double threshold, int m) {
  const int n = static_cast<int>(pts.size());
  std::vector<int> color(n, -1);
  std::function<bool(int, int)> place = [&](int i, int used) {
    if (i == n) return true;
    for (int c = 0; c < std::min(m, used + 1); ++c) {
      bool ok = true;
      for (int j = 0; j < i && ok; ++j) ok = !(color[j] == c && (pts[i] - pts[j]).norm() > threshold);
      if (!ok) continue;
      color[i] = c;
      if (place(i + 1, std::max(used, c + 1))) return true;
    }
    color[i] = -1;
    return false;
  };
  return place(0, 0);
}

ConvexBody random_polygon_about_origin(Rng& rng) {
  std::uniform_real_distribution<> u(0.4, 1.0);
  Points v;
  const int k = 5 + static_cast<int>(rng() % 8);
  for (int i = 0; i < k; ++i) v.push_back(random_direction(2, rng) * u(rng));
  // Keep the origin well inside.
  for (const Vec& d : direction_grid(2, 3)) v.push_back(0.4 * d);
  return ConvexBody::vpolytope(v).with_reference(Vec::Zero(2));
}

Json run_cli(const std::vector<std::string>& args, int& code) {
  std::vector<const char*> argv{"covfun"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  if (out.str().empty()) throw Error("covfun produced no report: " + err.str());
  return Json::parse(out.str());
}

}  // namespace

// Optional arguments select criteria by position, e.g. `covfun_acceptance 3 7`.
int main(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
  report("Cones over a hexagon, a square and a 64-gon are covered by 8 translates at ratio 2/3 + 1e-6",
         [](Criterion& c) {
           for (int k : {6, 4, 64}) {
             const auto t0 = Clock::now();
             const ConvexBody C = cli::cone_over(cli::regular_polygon(k));
             CoverConfig cfg = cone_cover_thm1(C).config;
             cfg.r = 2.0 / 3.0 + 1e-6;
             CoverOptions opt;
             opt.max_depth = 100;
             CoverCertificate cert = verify_cover(C, cfg, opt);
             const double dt = seconds_since(t0);
             c.check(cert.verdict == Verdict::Covered && dt <= 120.0,
                     std::to_string(k) + "-gon cone: " + to_string(cert.verdict) + ", " +
                         std::to_string(cert.cells_examined) + " cells, " + fmt("%.1f s", dt));
           }
         });

  report("l_p balls are covered by the 6 or 8 center configurations at ratio sqrt(2/3) + 1e-4; scalar inequalities hold",
         [](Criterion& c) {
           for (double p : {1.0, 1.5, 2.0, 3.0, kInf}) {
             const auto t0 = Clock::now();
             CoverConfig cfg = lpball_cover_thm2(p);
             cfg.r = std::sqrt(2.0 / 3.0) + 1e-4;
             CoverCertificate cert = verify_cover(ConvexBody::lp_ball(p, 3), cfg);
             const double dt = seconds_since(t0);
             c.check(cert.verdict == Verdict::Covered && cert.max_inflation_used <= 1e-3 && dt <= 300.0,
                     fmt("p=%g: ", p) + to_string(cert.verdict) + fmt2(", inflation %.2e, %.1f s", cert.max_inflation_used, dt));
           }
           int held = 0;
           for (int i = 0; i < 50; ++i) {
             const double p = 2.0 + 62.0 * i / 49.0;
             Thm2Check t = thm2_inequalities(p);
             if (t.first && t.second) ++held;
           }
           c.check(held == 50, std::to_string(held) + "/50 grid points in [2, 64] satisfy both inequalities");
           Thm2Check two = thm2_inequalities(2.0);
           // Independent: 2² + 2 = 6 = 6^(2/2), so (2/3)² + 2(1/3)² equals (2/3)¹ exactly.
           c.check(two.first_exact == 0 && 4 + 2 == 6, "p=2 first inequality is an exact equality (4/9 + 2/9 = 2/3)");
         });

  report("Euclidean ball: search reaches 0.9428, 0.8944, 0.8164, 0.7775 (+0.015), sqrt(2/3) for m = 4..8 (+0.01)",
         [](Criterion& c) {
           const ConvexBody B = ConvexBody::lp_ball(2, 3);
           const double target[] = {0.9428 + 0.01, 0.8944 + 0.01, 0.8164 + 0.01, 0.7775 + 0.015,
                                    std::sqrt(2.0 / 3.0) + 0.01};
           SearchResult prev;
           for (int m = 4; m <= 8; ++m) {
             SearchOptions opt;
             if (m == 8) opt.seed = &prev;
             SearchResult res = gamma_upper(B, m, budget(60), opt);
             const bool ok = res.r_upper <= target[m - 4] && res.certificate.verdict == Verdict::Covered;
             c.check(ok, "m=" + std::to_string(m) + fmt2(": r_upper %.6f (target %.4f)", res.r_upper, target[m - 4]) +
                             fmt(", %.1f s", res.elapsed));
             prev = res;
           }
         });

  report("Regular tetrahedron: search reaches 3/4 + 0.01 (m=4) and 9/13 + 0.015 (m=5) within 120 s each",
         [](Criterion& c) {
           const ConvexBody T = cli::regular_tetrahedron();
           const double target[] = {0.75 + 0.01, 9.0 / 13.0 + 0.015};
           for (int m = 4; m <= 5; ++m) {
             const auto t0 = Clock::now();
             SearchResult res = gamma_upper(T, m, budget(100));
             const double dt = seconds_since(t0);
             c.check(res.r_upper <= target[m - 4] && dt <= 120.0 && res.certificate.verdict == Verdict::Covered,
                     "m=" + std::to_string(m) + fmt2(": r_upper %.6f, %.1f s", res.r_upper, dt));
           }
         });

  report("Octahedron: centers ±e_i/3 cover at 2/3 + 1e-9, and so do 7 and 8 centers", [](Criterion& c) {
    const ConvexBody K1 = ConvexBody::lp_ball(1, 3);
    CoverConfig cfg;
    cfg.r = 2.0 / 3.0 + 1e-9;
    for (int i = 0; i < 3; ++i)
      for (double s : {1.0, -1.0}) {
        Vec x = Vec::Zero(3);
        x[i] = s / 3.0;
        cfg.centers.push_back(x);
      }
    CoverOptions opt;
    opt.margin = 1e-10;
    opt.max_depth = 200;
    for (int m = 6; m <= 8; ++m) {
      CoverCertificate cert = verify_cover(K1, cfg, opt);
      c.check(cert.verdict == Verdict::Covered,
              "m=" + std::to_string(m) + ": " + to_string(cert.verdict) + ", " + std::to_string(cert.cells_examined) + " cells");
      cfg.centers.push_back(cfg.centers.front());
    }
  });

  report("Planar values: square at 1/2, triangle at 2/3, battery gamma_4 <= sqrt(2)/2 + 0.01 and gamma_7 <= 0.51, Levi numbers",
         [](Criterion& c) {
           const ConvexBody square = ConvexBody::lp_ball(kInf, 2);
           CoverConfig quad{0.5 + 1e-6, {}};
           for (double x : {0.5, -0.5})
             for (double y : {0.5, -0.5}) quad.centers.push_back(make_vec({x, y}));
           const double floor = volume_lower_bound(square, 4);
           c.check(verify_cover(square, quad).verdict == Verdict::Covered && std::abs(floor - 0.5) < 1e-12,
                   fmt("square: covered at 0.5 + 1e-6, volume floor %.12f", floor));

           const ConvexBody tri = cli::regular_polygon(3);
           CoverConfig homs{2.0 / 3.0 + 1e-6, {}};
           for (const Vec& v : tri.polytope().vertices) homs.centers.push_back((1.0 / 3.0) * (v - tri.reference()));
           c.check(verify_cover(tri, homs).verdict == Verdict::Covered, "triangle: covered at 2/3 + 1e-6");

           double worst4 = 0, worst7 = 0;
           for (const cli::NamedBody& b : cli::planar_battery()) {
             SearchResult g4 = gamma_upper(b.body, 4, budget(15));
             SearchResult g7 = gamma_upper(b.body, 7, budget(20));
             worst4 = std::max(worst4, g4.r_upper);
             worst7 = std::max(worst7, g7.r_upper);
             const bool ok = g4.r_upper <= std::sqrt(0.5) + 0.01 && g7.r_upper <= 0.51;
             c.check(ok, b.name + fmt2(": gamma_4 <= %.5f, gamma_7 <= %.5f", g4.r_upper, g7.r_upper));
             const int levi = levi_c(b.body);
             c.check(levi == (b.name == "square" ? 4 : 3), b.name + ": Levi number " + std::to_string(levi));
           }
           Mat A(2, 2);
           A << 1.0, 0.7, 0.1, 0.9;
           c.check(levi_c(transform(square, A, make_vec({3, -1}))) == 4, "sheared parallelogram: Levi number 4");
           c.notes.push_back(fmt2("battery maxima: gamma_4 %.5f, gamma_7 %.5f", worst4, worst7));
         });

  report("Continuity transfer: covers of 50 random polygons carry over to 1.01- and 1.1-sandwiched neighbours",
         [](Criterion& c) {
           Rng rng(2024);
           int passed = 0, total = 0;
           for (int i = 0; i < 50; ++i) {
             const ConvexBody K = random_polygon_about_origin(rng);
             SearchBudget b = budget(1.0, 100 + i);
             b.starts = 4;
             SearchResult res = gamma_upper(K, 4, b);
             CoverConfig cover = res.config;
             cover.r = res.r_upper;
             if (verify_cover(K, cover).verdict != Verdict::Covered) {
               c.check(false, "polygon " + std::to_string(i) + fmt(": base cover at r = %.6f does not verify", cover.r) +
                                  " (search " + to_string(res.certificate.verdict) + ")");
               continue;
             }
             for (double eps : {0.01, 0.1}) {
               ++total;
               Points pts = K.polytope().vertices;
               std::uniform_real_distribution<> t(0.0, 1.0);
               for (const Vec& v : K.polytope().vertices)
                 if (t(rng) < 0.5) pts.push_back((1.0 + eps * t(rng)) * v);
               for (const Vec& q : boundary_sample(K, 16)) pts.push_back((1.0 + eps) * q);
               const ConvexBody Kp = ConvexBody::vpolytope(pts).with_reference(Vec::Zero(2));
               bool sandwich = true;
               for (const Vec& v : K.polytope().vertices) sandwich = sandwich && Kp.contains(v, 1e-12);
               for (const Vec& v : Kp.polytope().vertices) sandwich = sandwich && K.gauge(v) <= 1.0 + eps + 1e-12;
               const CoverCertificate cert = verify_cover(Kp, transfer_config(cover, eps));
               if (sandwich && cert.verdict == Verdict::Covered) {
                 ++passed;
               } else {
                 c.check(false, "polygon " + std::to_string(i) + fmt(" eps %g: ", eps) + to_string(cert.verdict) +
                                    (sandwich ? "" : " (sandwich check failed)"));
               }
             }
           }
           c.check(passed == total && total == 100, std::to_string(passed) + "/" + std::to_string(total) + " transfers re-verified");
         });

  report("Net machinery: parameters at beta 0.1, 20 snapped polytopes within 0.5, small f ratio, cardinality bound",
         [](Criterion& c) {
           NetParams p = net_params(3, 0.1);
           c.check(std::abs(p.theta - 0.1 / 21) < 1e-15 && p.m == 210,
                   fmt2("theta %.10f, m %.0f", p.theta, p.m));
           FBound f = f_bound(3, p.m, p.theta);
           c.check(f.value / (1 - p.theta / 3) <= 0.1, fmt("f/(1 - theta/3) = %.6f <= 0.1", f.value / (1 - p.theta / 3)));

           const NetParams half = net_params(3, 0.5);
           const CapCover caps = cap_cover(3, half.theta, 1);
           Rng rng(77);
           int good = 0;
           double worst = 0;
           for (int i = 0; i < 20; ++i) {
             Points pts;
             const int count = 6 + static_cast<int>(rng() % 20);
             for (int k = 0; k < count; ++k) {
               Vec q(3);
               for (int d = 0; d < 3; ++d) q[d] = std::normal_distribution<>(0, 1.0 + 0.5 * d)(rng);
               pts.push_back(q);
             }
             const ConvexBody K = john_normalize(ConvexBody::vpolytope(pts)).body;
             SnapResult s = snap_to_net(K, half, caps);
             bool ok = s.bm_log_bound <= 0.5;
             for (const Vec& v : s.P.vertices) ok = ok && K.contains(v, 1e-9);
             for (const Vec& v : K.polytope().vertices) ok = ok && s.P.max_violation(v / (1 + s.sigma)) <= 1e-9;
             for (double b : s.P.offsets) ok = ok && b >= 1 - half.theta / 3 - 1e-9;
             ok = ok && s.sigma <= half.ratio + 1e-9;
             worst = std::max(worst, s.bm_log_bound);
             if (ok) ++good;
           }
           c.check(good == 20, std::to_string(good) + "/20 snaps re-verified" + fmt(", worst log(1 + sigma) %.5f", worst));

           FBound tiny = f_bound(3, 100000, 1e-4);
           const double ratio = tiny.value / (1 - 1e-4 / 3);
           c.check(ratio < 1e-3, fmt("f(3, 1e5, 1e-4)/(1 - theta/3) = %.3e", ratio));

           // 14³ · 3⁹ · 10³ is an exact integer; the logarithm is taken in extended precision.
           const long double exponent = 2744.0L * 19683.0L * 1000.0L;
           const long double oracle = exponent * std::log10(210.0L);
           const double got = net_cardinality_log_bound(3, 0.1, 1.0);
           char a[32], b[32];
           std::snprintf(a, sizeof a, "%.5e", got);
           std::snprintf(b, sizeof b, "%.5Le", oracle);
           c.check(std::string(a) == b, std::string("log10 cardinality ") + a + " vs oracle " + b);
         });

  report("Diameter partitions: Reuleaux triangle, equilateral triangle, brute-force coloring, constant-width radii, mu_3",
         [](Criterion& c) {
           PointCloud reu{boundary_sample(reuleaux_polygon(3), 200)};
           PartitionResult r3 = phi_upper(reu, 3);
           c.check(r3.r_ratio <= std::sqrt(3.0) / 2 + 0.01, fmt("Reuleaux triangle, 200 samples, m=3: %.6f", r3.r_ratio));

           PointCloud tri;
           for (int i = 0; i < 3; ++i) {
             double a = 2 * std::numbers::pi * i / 3;
             tri.points.push_back(make_vec({std::cos(a), std::sin(a)}));
           }
           const double t2 = phi_upper(tri, 2).r_ratio;
           c.check(t2 == 1.0, fmt("equilateral triangle, m=2: %.17g", t2));

           Rng rng(31);
           int agree = 0;
           std::uniform_real_distribution<> u(-1, 1), ur(0.45, 0.95);
           for (int trial = 0; trial < 100; ++trial) {
             PointCloud X;
             const int count = 3 + static_cast<int>(rng() % 18);
             const int dim = 2 + trial % 2;
             for (int i = 0; i < count; ++i) {
               Vec q(dim);
               for (int d = 0; d < dim; ++d) q[d] = u(rng);
               X.points.push_back(q);
             }
             const int m = 2 + trial % 2;
             const double r = ur(rng);
             const ColoringResult got = conflict_colorable(X, r, m, 1);
             if (got.exact && got.colorable == brute_colorable(X.points, r * cloud_diameter(X), m)) ++agree;
           }
           c.check(agree == 100, std::to_string(agree) + "/100 random clouds agree with brute force");

           for (int k : {3, 5, 7}) {
             RadiiCheck rc = constant_width_radii_check(reuleaux_polygon(k), 2);
             std::string line = "Reuleaux " + std::to_string(k) + fmt2(": r %.9f, R %.9f", rc.r, rc.R);
             bool ok = rc.holds;
             if (k == 3) ok = ok && std::abs(rc.r - rc.lower) <= 1e-6 && std::abs(rc.R - rc.upper) <= 1e-6;
             c.check(ok, line);
           }
           const double mu3 = mu_n(3);
           c.check(std::abs(mu3 - 1.57980) <= 1e-5, fmt("mu_3 = %.7f", mu3));
         });

  report("Pipeline: planar battery at c = 0.75 and the space set at c = sqrt(2/3) are both consistent within 30 minutes",
         [](Criterion& c) {
           const auto t0 = Clock::now();
           int code2 = 0, code3 = 0;
           Json r2 = run_cli({"program", "-n", "2", "--c", "0.75", "--bodies", kData + "/bodies2d", "--budget-seconds", "20"}, code2);
           c.check(r2["outcome"]["verdict"] == "consistent" && code2 == 0,
                   "n=2: " + r2["outcome"]["verdict"].get<std::string>() + fmt(", max gamma %.5f", r2["outcome"]["max_gamma"].get<double>()));
           char c3[32];
           std::snprintf(c3, sizeof c3, "%.17g", std::sqrt(2.0 / 3.0));
           Json r3 = run_cli({"program", "-n", "3", "--c", c3, "--bodies", kData + "/bodies3d", "--budget-seconds", "90",
                              "--depth", "100"}, code3);
           c.check(r3["outcome"]["verdict"] == "consistent" && code3 == 0,
                   "n=3: " + r3["outcome"]["verdict"].get<std::string>() + fmt(", max gamma %.5f", r3["outcome"]["max_gamma"].get<double>()));
           for (const Json& b : r3["outcome"]["bodies"])
             if (b.contains("gamma_upper")) c.notes.push_back("  " + b["name"].get<std::string>() + fmt(": %.5f", b["gamma_upper"].get<double>()));
           const double dt = seconds_since(t0);
           c.check(dt < 1800.0, fmt("total %.0f s", dt));
         });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
