#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <string>

#include "powerdown/io.h"

namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun Cli(const std::string& args) {
  const std::string command = std::string(POWERDOWN_CLI) + " " + args + " 2>/dev/null";
  CliRun run;
  FILE* pipe = popen(command.c_str(), "r");
  if (pipe == nullptr) return run;
  char buffer[4096];
  std::size_t got;
  while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0) run.out.append(buffer, got);
  const int status = pclose(pipe);
  run.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return run;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("powerdown_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
    Write("gap.txt", "1 1 8\n5\n0 1 1\n1 7 1\n2 4 1\n4 6 1\n7 8 1\n");
    Write("good.sup", "2\n0 3 1\n5 8 1\n");
    Write("bad.sup", "3\n0 1 1\n4 6 1\n7 8 1\n");
    Write("crowded.txt", "1 0 3\n2\n0 2 2\n1 3 2\n");
    Write("broken.txt", "1 1 8\n2\n0 1 1\n");
  }
  void TearDown() override { fs::remove_all(dir_); }

  void Write(const std::string& name, const std::string& text) { powerdown::WriteFile(Path(name), text); }
  std::string Path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(CliTest, SolvePrintsAVerifiedSchedule) {
  const CliRun run = Cli("solve " + Path("gap.txt") + " --exact --report json");
  EXPECT_EQ(run.code, 0);
  EXPECT_NE(run.out.find("\"status\": \"ok\""), std::string::npos) << run.out;
  EXPECT_NE(run.out.find("\"exact\": \"7\""), std::string::npos) << run.out;
  const CliRun text = Cli("solve " + Path("gap.txt"));
  EXPECT_EQ(text.code, 0);
  EXPECT_NE(text.out.find("machine 0:"), std::string::npos) << text.out;
}

TEST_F(CliTest, SolveWritesTheScheduleFile) {
  const CliRun run = Cli("solve " + Path("gap.txt") + " --mode restricted --epsilon 1/2 --unit-steps -o " +
                      Path("gap.sched"));
  EXPECT_EQ(run.code, 0);
  EXPECT_TRUE(fs::exists(Path("gap.sched")));
}

TEST_F(CliTest, InfeasibleInstanceExitsWithTwo) {
  const CliRun run = Cli("solve " + Path("crowded.txt") + " --report json");
  EXPECT_EQ(run.code, 2);
  EXPECT_NE(run.out.find("infeasible"), std::string::npos) << run.out;
}

TEST_F(CliTest, CheckReportsFeasibility) {
  EXPECT_EQ(Cli("check " + Path("gap.txt") + " " + Path("good.sup")).code, 0);
  const CliRun bad = Cli("check " + Path("gap.txt") + " " + Path("bad.sup") + " --report json");
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.out.find("\"feasible\": false"), std::string::npos) << bad.out;
}

TEST_F(CliTest, BadInputExitsWithThree) {
  EXPECT_EQ(Cli("solve " + Path("broken.txt")).code, 3);
  EXPECT_EQ(Cli("solve " + Path("missing.txt")).code, 3);
  EXPECT_EQ(Cli("solve " + Path("gap.txt") + " --mode sideways").code, 3);
  EXPECT_EQ(Cli("frobnicate").code, 3);
}

TEST_F(CliTest, GenIsDeterministicAndBenchCoversTheCorpus) {
  fs::create_directories(dir_ / "corpus");
  for (int seed : {1, 2}) {
    const std::string out = Path("corpus/i" + std::to_string(seed) + ".txt");
    EXPECT_EQ(Cli("gen --seed " + std::to_string(seed) + " -n 4 -m 2 -D 8 -Q 2 -o " + out).code, 0);
  }
  EXPECT_EQ(Cli("gen --seed 1 -n 4 -m 2 -D 8 -Q 2").out, powerdown::ReadFile(Path("corpus/i1.txt")));
  const CliRun bench = Cli("bench " + Path("corpus"));
  EXPECT_EQ(bench.code, 0);
  EXPECT_EQ(bench.out.rfind("file,n,m,D,Q,P,lp,alg,opt", 0), 0u) << bench.out;
  EXPECT_EQ(std::count(bench.out.begin(), bench.out.end(), '\n'), 3);
}

}  // namespace
