#include <gtest/gtest.h>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>
#include <vector>

#include <csignal>
#include <fcntl.h>
#include <sys/wait.h>
#include <unistd.h>

#include "cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result cli(std::vector<std::string> args) {
  args.insert(args.begin(), "agcsim");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = agc::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("agc_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                        "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST(Cli, MissingScenarioExitsTwoNamingPath) {
  const auto r = cli({"--scenario", "/no/such/scenario.ini"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("/no/such/scenario.ini"), std::string::npos);
}

TEST(Cli, BadConfigExitsNonZero) {
  TempDir tmp;
  const auto ini = tmp.path / "bad.ini";
  std::ofstream(ini) << "[sim]\ndt = 0.007\n";
  const auto r = cli({"--scenario", ini.string(), "--out", (tmp.path / "o.csv").string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("sim.dt"), std::string::npos);
}

TEST(Cli, UnknownFlagIsUsageError) { EXPECT_EQ(cli({"--frobnicate"}).code, 2); }

TEST(Cli, SeedRunsAreIdentical) {
  TempDir tmp;
  const std::string scn = std::string(AGC_SOURCE_DIR) + "/scenarios/rectangle.ini";
  const auto a = tmp.path / "a.csv", b = tmp.path / "b.csv";
  ASSERT_EQ(cli({"--scenario", scn, "--seed", "42", "--duration", "20", "--out", a.string()}).code, 0);
  ASSERT_EQ(cli({"--scenario", scn, "--seed", "42", "--duration", "20", "--out", b.string()}).code, 0);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_EQ(slurp(tmp.path / "a.summary.json"), slurp(tmp.path / "b.summary.json"));
  EXPECT_GT(slurp(a).size(), 1000u);
}

TEST(Cli, RectangleSummaryReportsEndpoint) {
  TempDir tmp;
  const std::string scn = std::string(AGC_SOURCE_DIR) + "/scenarios/rectangle.ini";
  const auto r = cli({"--scenario", scn, "--out", (tmp.path / "rect.csv").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("\"steady_d\": 0.15"), std::string::npos) << r.out;
  EXPECT_TRUE(fs::exists(tmp.path / "rect.summary.json"));
}

TEST(Cli, BadEndpointRejected) {
  TempDir tmp;
  const auto r = cli({"--serve", "nowhere:port", "--out", (tmp.path / "x.csv").string()});
  EXPECT_EQ(r.code, 2);
}

TEST(Cli, LiveModeStopsAtDurationAndFlushes) {
  TempDir tmp;
  const auto out = tmp.path / "live.csv";
  const auto r = cli({"--serve", "127.0.0.1:0", "--duration", "0.3", "--out", out.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("serving ws://127.0.0.1:"), std::string::npos);
  std::ifstream in(out);
  std::string line;
  int rows = -1;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 300);
}

TEST(Cli, InterruptFlushesTelemetry) {
  TempDir tmp;
  const auto out = tmp.path / "live.csv";
  const std::string out_s = out.string();
  const pid_t pid = fork();
  ASSERT_GE(pid, 0);
  if (pid == 0) {
    const int devnull = ::open("/dev/null", O_WRONLY);
    dup2(devnull, STDOUT_FILENO);
    execl(AGC_BINARY, AGC_BINARY, "--serve", "127.0.0.1:0", "--out", out_s.c_str(), nullptr);
    _exit(127);
  }
  std::this_thread::sleep_for(std::chrono::milliseconds(700));
  kill(pid, SIGINT);
  int status = 0;
  waitpid(pid, &status, 0);
  ASSERT_TRUE(WIFEXITED(status));
  EXPECT_EQ(WEXITSTATUS(status), 0);
  std::ifstream in(out);
  std::string line, last;
  int rows = -1;
  while (std::getline(in, line)) {
    ++rows;
    last = line;
  }
  EXPECT_GT(rows, 100);
  EXPECT_EQ(std::count(last.begin(), last.end(), ','), 34);  // last row complete
}
