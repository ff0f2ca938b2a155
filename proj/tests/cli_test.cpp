#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Result {
  int code = -1;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string(D5COUNT_BIN) + " " + args + " 2>/dev/null";
  Result r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

std::string tmp(const std::string& name) { return ::testing::TempDir() + name; }

}  // namespace

TEST(Cli, CountBruteEmitsPointCloud) {
  const auto csv = tmp("pts100.csv");
  const auto r = run("count --method brute --height 100 --emit-points " + csv);
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\"count\":3290"), std::string::npos);
  const auto text = slurp(csv);
  EXPECT_EQ(text.rfind("x0,x1,x2,x3,height\n", 0), 0u);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 3291);
}

TEST(Cli, InvalidInputExitsTwo) {
  EXPECT_EQ(run("count --height 0").code, 2);
  EXPECT_EQ(run("count --height 10 --method nope").code, 2);
  EXPECT_EQ(run("bijection-check").code, 2);
  EXPECT_EQ(run("count --height 5000 --method brute").code, 2);  // above the brute-force ceiling
  EXPECT_EQ(run("count --height 2000000").code, 2);              // above the torsor ceiling
  EXPECT_EQ(run("asymptotic --heights 100,10").code, 2);
  EXPECT_EQ(run("verify --check nonsense").code, 2);
  EXPECT_EQ(run("constant --tol 0").code, 2);
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("--help").code, 0);
}

TEST(Cli, WorkerEnvironmentVariable) {
  EXPECT_EQ(run("count --height 50").out, std::string("{\"command\":\"count\",\"method\":\"torsor\",\"B\":50,\"count\":1230}\n"));
  setenv("D5_WORKERS", "3", 1);
  EXPECT_EQ(run("count --height 50").code, 0);
  setenv("D5_WORKERS", "0", 1);
  EXPECT_EQ(run("count --height 50").code, 2);
  EXPECT_EQ(run("--workers 2 count --height 50").code, 0);  // the flag wins
  unsetenv("D5_WORKERS");
}

TEST(Cli, BijectionCheck) {
  const auto r = run("bijection-check --max-B 200");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\"pass\":true"), std::string::npos);
}

TEST(Cli, ConfigFileAndFlagPrecedence) {
  const auto cfg = tmp("d5.ini");
  std::ofstream(cfg) << "workers=2\n[count]\nheight=20\nmethod=brute\n";
  auto r = run("--config " + cfg + " count");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\"method\":\"brute\",\"B\":20"), std::string::npos);
  r = run("--config " + cfg + " count --height 10");
  EXPECT_NE(r.out.find("\"B\":10,\"count\":118"), std::string::npos);
}

TEST(Cli, DeterministicAcrossWorkerCounts) {
  const std::string args = " verify --check quadratic_sums,psi_sums,eta,omega_infty,torsor_identity --mc-samples 200000";
  const auto a = run("--workers 1" + args), b = run("--workers 3" + args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(run("--workers 2 emit-points --height 60 --torsor").out, run("emit-points --height 60 --torsor").out);
  EXPECT_EQ(run("emit-points --height 60").out, run("emit-points --height 60 --method brute").out);
}

TEST(Cli, ConstantJson) {
  const auto r = run("constant --json --cutoff 10000 --mc-samples 100000");
  EXPECT_EQ(r.code, 0);
  for (const char* k : {"\"alpha\":\"1/230400\"", "\"euler_tail_bound\"", "\"omega_infty_quadrature\"",
                        "\"omega_infty_monte_carlo\"", "\"mc_seed\"", "\"c_sh\""})
    EXPECT_NE(r.out.find(k), std::string::npos) << k;
}

TEST(Cli, VerifyOutputFile) {
  const auto out = tmp("verify.jsonl");
  EXPECT_EQ(run("--output " + out + " verify --check alpha,base_case").code, 0);
  const auto text = slurp(out);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 2);
  EXPECT_NE(text.find("\"check\":\"alpha\""), std::string::npos);
}

TEST(Cli, FailedCheckExitsOne) {
  // k = 4 drifts by more than a factor 2 over Q in {1e3, 1e4, 1e5}.
  EXPECT_EQ(run("verify --check sum_h_k").code, 1);
}
