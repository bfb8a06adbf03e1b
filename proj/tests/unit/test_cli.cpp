#include "covfun/cli/app.hpp"
#include "covfun/cli/bodies.hpp"
#include "covfun/cli/svg.hpp"
#include "covfun/io.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace covfun;

namespace {

const std::string kData = COVFUN_TEST_DATA;
const std::string kScratch = std::string(COVFUN_BINARY_DIR) + "/cli_scratch";

struct CliRun {
  int code;
  std::string out;
  std::string err;
  Json report() const { return Json::parse(out); }
};

CliRun covfun_run(std::vector<std::string> args) {
  args.insert(args.begin(), "covfun");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override { std::filesystem::create_directories(kScratch); }
};

}  // namespace

TEST_F(Cli, VerifyExitCodes) {
  CliRun covered = covfun_run({"verify", "--body", kData + "/square.json", "--config", kData + "/square_quadrants.json",
                            "--margin", "0"});
  EXPECT_EQ(covered.code, 0) << covered.err;
  EXPECT_EQ(covered.report()["outcome"]["certificate"]["verdict"], "Covered");

  CliRun uncovered = covfun_run({"verify", "--body", kData + "/square.json", "--config", kData + "/square_quadrants_049.json"});
  EXPECT_EQ(uncovered.code, 1);
  const Json w = uncovered.report()["outcome"]["certificate"]["witness"];
  ASSERT_EQ(w.size(), 2u);
  EXPECT_NEAR(w[0].get<double>(), 0.0, 1e-9);
  EXPECT_NEAR(w[1].get<double>(), 0.0, 1e-9);
}

TEST_F(Cli, ReportFields) {
  CliRun r = covfun_run({"net", "params", "-n", "3", "--beta", "0.1"});
  ASSERT_EQ(r.code, 0) << r.err;
  Json j = r.report();
  for (const char* key : {"command", "tool_version", "seed", "inputs_digest", "outcome", "exit_code", "wall_time", "timestamp"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j["outcome"]["m"], 210);
}

TEST_F(Cli, DigestIgnoresFormatting) {
  const std::string body = kScratch + "/square_digest.json";
  const std::string cfg = kData + "/square_quadrants_049.json";
  const Json doc = read_json_file(kData + "/square.json");
  std::ofstream(body) << doc.dump(4);
  CliRun a = covfun_run({"verify", "--body", body, "--config", cfg});
  std::ofstream(body) << doc.dump();
  CliRun b = covfun_run({"verify", "--body", body, "--config", cfg});
  EXPECT_EQ(a.report()["inputs_digest"], b.report()["inputs_digest"]);
  std::ofstream(body) << R"({"type":"lpball","p":"inf","dim":2,"reference":[0.1,0]})";
  CliRun c = covfun_run({"verify", "--body", body, "--config", cfg});
  EXPECT_NE(a.report()["inputs_digest"], c.report()["inputs_digest"]);
}

TEST_F(Cli, UsageAndIoErrors) {
  EXPECT_EQ(covfun_run({"verify", "--body", kData + "/missing.json", "--config", kData + "/square_quadrants.json"}).code,
            cli::kExitUsage);
  EXPECT_EQ(covfun_run({"verify", "--config", kData + "/square_quadrants.json"}).code, cli::kExitUsage);
  EXPECT_EQ(covfun_run({"no-such-command"}).code, cli::kExitUsage);
  EXPECT_EQ(covfun_run({"--help"}).code, 0);
}

TEST_F(Cli, RenderPlanarAndSlice) {
  const std::string svg = kScratch + "/square.svg";
  CliRun r = covfun_run({"render", "--body", kData + "/square.json", "--config", kData + "/square_quadrants_049.json",
                      "--svg", svg});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string text = slurp(svg);
  EXPECT_NE(text.find("<svg"), std::string::npos);
  EXPECT_NE(text.find("class=\"witness\""), std::string::npos);
  std::size_t translates = 0;
  for (std::size_t pos = 0; (pos = text.find("class=\"translate\"", pos)) != std::string::npos; ++pos) ++translates;
  EXPECT_EQ(translates, 4u);

  const std::string cube = kData + "/bodies3d/cube.json";
  const std::string cfg = kScratch + "/cube_cfg.json";
  std::ofstream(cfg) << R"({"r":0.6,"centers":[[0.5,0.5,0.5],[-0.5,-0.5,-0.5]]})";
  EXPECT_EQ(covfun_run({"render", "--body", cube, "--config", cfg, "--svg", kScratch + "/cube.svg"}).code, cli::kExitUsage);
  EXPECT_EQ(covfun_run({"render", "--body", cube, "--config", cfg, "--svg", kScratch + "/cube.svg", "--slice", "z=0.2"}).code, 0);
}

TEST_F(Cli, BorsukCommands) {
  CliRun reu = covfun_run({"borsuk", "reuleaux", "-k", "5", "--out", kScratch + "/reuleaux5.json"});
  EXPECT_EQ(reu.code, 0) << reu.err;
  EXPECT_EQ(load_body(kScratch + "/reuleaux5.json").kind(), BodyKind::Reuleaux);
  CliRun check = covfun_run({"borsuk", "check", "--body", kScratch + "/reuleaux5.json", "-n", "2"});
  EXPECT_EQ(check.code, 0) << check.err;
  EXPECT_EQ(covfun_run({"borsuk", "reuleaux", "-k", "4"}).code, cli::kExitUsage);
}

TEST_F(Cli, Batteries) {
  EXPECT_EQ(cli::planar_battery().size(), 10u);
  EXPECT_EQ(cli::space_battery().size(), 6u);
  EXPECT_EQ(cli::load_body_dir(kData + "/bodies2d").size(), 10u);
}
