// Runs the tmink executable and inspects what it writes.
// Usage: cli_checks <path-to-tmink> <data-dir>

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "tmink/io.hpp"

namespace fs = std::filesystem;
using tmink::io::json;

namespace {

std::string g_exe;
std::string g_data;

struct CliRun {
  int status;
  fs::path dir;
};

CliRun run(const std::string& name, const std::string& args) {
  const fs::path dir = fs::temp_directory_path() / ("tmink_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string cmd = "cd '" + dir.string() + "' && '" + g_exe + "' " + args + " > stdout.txt 2> stderr.txt";
  const int raw = std::system(cmd.c_str());
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, dir};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string data(const std::string& f) { return "'" + g_data + "/" + f + "'"; }

}  // namespace

TEST(Cli, TorsionOfUnitSquareMatchesSeriesValue) {
  const CliRun r = run("torsion", "torsion --input " + data("unit_square.json") + " --output out.json");
  ASSERT_EQ(r.status, 0);
  const json j = json::parse(slurp(r.dir / "out.json"));
  EXPECT_NEAR(j["tau_energy"].get<double>(), 0.140577, 0.005 * 0.140577);
  EXPECT_NEAR(j["tau_mass"].get<double>(), j["tau_energy"].get<double>(), 1e-6);
}

TEST(Cli, MeasureOfUnitSquareIsSymmetric) {
  const CliRun r = run("measure", "measure --input " + data("unit_square.json") + " --output out.json");
  ASSERT_EQ(r.status, 0);
  const tmink::SurfaceMeasure mu = tmink::io::measure_from_json(json::parse(slurp(r.dir / "out.json")));
  ASSERT_EQ(mu.weights.size(), 4u);
  for (double w : mu.weights) EXPECT_NEAR(w, 0.28115, 0.02 * 0.28115);
}

TEST(Cli, SolveRecoversUnitSquare) {
  const CliRun r = run("solve", "solve --input " + data("square_target.json") + " --output report.json --log log.csv");
  ASSERT_EQ(r.status, 0);
  const json j = json::parse(slurp(r.dir / "report.json"));
  EXPECT_TRUE(j["converged"].get<bool>());
  for (const auto& v : j["h_final"]["values"]) EXPECT_NEAR(v.get<double>(), 0.5, 0.005);
  const tmink::Polygon p = tmink::io::polygon_from_json(j["polygon"]);
  EXPECT_NEAR(p.area(), 1.0, 0.02);
  const std::string log = slurp(r.dir / "log.csv");
  EXPECT_EQ(log.substr(0, log.find('\n')), "iter,J,residual,tau,inradius,circumradius,step");
}

TEST(Cli, SolveLogIsDeterministic) {
  const std::string args = "solve --input " + data("uneven_target.json") + " --seed 7 --output report.json --log log.csv";
  const CliRun a = run("det_a", args);
  const CliRun b = run("det_b", args);
  ASSERT_EQ(a.status, 0);
  ASSERT_EQ(b.status, 0);
  EXPECT_EQ(slurp(a.dir / "log.csv"), slurp(b.dir / "log.csv"));
  EXPECT_EQ(slurp(a.dir / "report.json"), slurp(b.dir / "report.json"));
}

TEST(Cli, IterationLimitWritesPartialReport) {
  const CliRun r = run("limit", "solve --input " + data("uneven_target.json") + " --max-iters 1 --output report.json");
  ASSERT_EQ(r.status, 3);
  const json j = json::parse(slurp(r.dir / "report.json"));
  EXPECT_FALSE(j["converged"].get<bool>());
  EXPECT_EQ(j["iterations"].get<int>(), 1);
  EXPECT_FALSE(j["residual_history"].empty());
}

TEST(Cli, UnbalancedTargetIsRejected) {
  const CliRun r = run("unbalanced", "solve --input " + data("unbalanced_target.json"));
  ASSERT_EQ(r.status, 1);
  EXPECT_NE(slurp(r.dir / "stderr.txt").find("UnbalanceableMeasure"), std::string::npos);
}

TEST(Cli, ParseErrorsNameTheLine) {
  const CliRun r = run("malformed", "solve --input " + data("malformed.json"));
  ASSERT_EQ(r.status, 1);
  const std::string err = slurp(r.dir / "stderr.txt");
  EXPECT_NE(err.find("ParseError"), std::string::npos);
  EXPECT_NE(err.find("malformed.json:4:"), std::string::npos) << err;
}

TEST(Cli, InvariantViolationsAreNamed) {
  CliRun r = run("span", "solve --input " + data("half_plane_target.json"));
  ASSERT_EQ(r.status, 1);
  EXPECT_NE(slurp(r.dir / "stderr.txt").find("positively span"), std::string::npos);
  r = run("zero", "solve --input " + data("zero_weight_target.json"));
  ASSERT_EQ(r.status, 1);
  EXPECT_NE(slurp(r.dir / "stderr.txt").find("must be > 0"), std::string::npos);
}

TEST(Cli, HadamardReportsShrinkingMismatch) {
  const CliRun r = run("hadamard", "hadamard --input " + data("hadamard_pair.json") + " --output out.json");
  ASSERT_EQ(r.status, 0);
  const json j = json::parse(slurp(r.dir / "out.json"));
  const auto& s = j["samples"];
  ASSERT_EQ(s.size(), 3u);
  EXPECT_LT(s[2]["mismatch"].get<double>(), 0.02);
  EXPECT_LE(s[2]["mismatch"].get<double>(), s[1]["mismatch"].get<double>());
}

int main(int argc, char** argv) {
  ::testing::InitGoogleTest(&argc, argv);
  if (argc < 3) {
    std::fprintf(stderr, "usage: cli_checks <tmink> <data-dir>\n");
    return 2;
  }
  g_exe = fs::absolute(argv[1]).string();
  g_data = fs::absolute(argv[2]).string();
  return RUN_ALL_TESTS();
}
