// Runs the built diamond binary and checks output and exit codes.

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

namespace {

struct RunResult {
  int status = -1;
  std::string out;
};

RunResult run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + DIAMOND_CLI_PATH + " " + args + " 2>/dev/null";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

bool has(const std::string& s, const std::string& needle) { return s.find(needle) != std::string::npos; }

}  // namespace

TEST(Cli, BoundsWorkedExample) {
  const auto r = run("bounds --r1 1.2 --r2 1.2 --p1 3 --p2 3");
  EXPECT_EQ(r.status, 0);
  EXPECT_TRUE(has(r.out, "lower  = 1.767133")) << r.out;
  EXPECT_TRUE(has(r.out, "upper  = 1.767133")) << r.out;
}

TEST(Cli, BoundsZeroAndMacLimited) {
  auto r = run("bounds --r1 0 --r2 0 --p1 3 --p2 3");
  EXPECT_EQ(r.status, 0);
  EXPECT_TRUE(has(r.out, "lower  = 0.000000"));
  EXPECT_TRUE(has(r.out, "cutset = 0.000000"));
  r = run("bounds --r1 5 --r2 5 --p1 3 --p2 3 --format json");
  EXPECT_EQ(r.status, 0);
  EXPECT_TRUE(has(r.out, "\"upper\""));
  EXPECT_TRUE(has(r.out, "1.8502"));
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("").status, 2);
  EXPECT_EQ(run("bounds --r1 1").status, 2);
  EXPECT_EQ(run("bounds --r1 -1 --r2 1 --p1 1 --p2 1").status, 3);
  EXPECT_EQ(run("bounds --r1 1 --r2 1 --p1 1 --p2 1 --format csv").status, 2);
  EXPECT_EQ(run("simulate --trials 0").status, 2);
  EXPECT_EQ(run("simulate --n 36").status, 5);
  EXPECT_EQ(run("simulate --rho 0.95").status, 3);
  EXPECT_EQ(run("example --tol 0.5").status, 2);
  EXPECT_EQ(run("example --output /nonexistent-dir/x.txt").status, 6);
}

TEST(Cli, CapacityCheck) {
  auto r = run("capacity-check --r0 1.2 --p 3");
  EXPECT_EQ(r.status, 0);
  EXPECT_TRUE(has(r.out, "capacity       = 1.767133")) << r.out;
  r = run("capacity-check --r0 0.5 --p 3");
  EXPECT_TRUE(has(r.out, "SourceLimited"));
  EXPECT_TRUE(has(r.out, "capacity       = 1.000000"));
  r = run("capacity-check --r0 2.5 --p 3 --format json");
  EXPECT_TRUE(has(r.out, "\"MacLimited\""));
}

TEST(Cli, SweepCsvHeaderAndRow) {
  const auto r = run("sweep --p 3 --r0-min 1.2 --r0-max 1.3 --steps 2");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out.rfind("r0,p,lower,upper,cutset,capacity_known,capacity,rho_lower,rho_upper\n", 0), 0u);
  EXPECT_TRUE(has(r.out, "\n1.200000,3.000000,1.767133,1.767133,"));
  EXPECT_EQ(run("sweep --p 3 --steps 1").status, 2);
}

TEST(Cli, SimulateDeterministic) {
  const auto a = run("simulate --trials 300 --seed 5");
  const auto b = run("simulate --trials 300 --seed 5 --threads 3");
  EXPECT_EQ(a.status, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_TRUE(has(a.out, "error_rate"));
}

TEST(Cli, ExampleRepeatableAndTolerant) {
  const auto a = run("example");
  EXPECT_EQ(a.status, 0);
  EXPECT_EQ(a.out, run("example").out);
  EXPECT_TRUE(has(a.out, "all deltas <= 1e-3"));
  EXPECT_EQ(run("example --tol 1e-12").status, 0);
}

TEST(Cli, TolerancePrecedence) {
  EXPECT_EQ(run("example", "DIAMOND_TOL=0.5").status, 2);
  EXPECT_EQ(run("example --tol 1e-9", "DIAMOND_TOL=0.5").status, 0);
  EXPECT_EQ(run("example", "DIAMOND_TOL=1e-10").status, 0);
}

TEST(Cli, OutputFile) {
  const std::string path = ::testing::TempDir() + "diamond_cli_example.json";
  ASSERT_EQ(run("example --format json --output " + path).status, 0);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_TRUE(has(ss.str(), "\"pass\": true"));
}
