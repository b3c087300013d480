#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

struct Result {
  int code = -1;
  std::string out;
};

// Runs the CLI with stderr folded into stdout.
Result cli(const std::string& args) {
  std::string cmd = std::string(SORTSYNTH_CLI) + " " + args + " 2>&1";
  Result r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() / ("sortsynth-cli-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }
  std::string outDir() const { return "--out-dir " + (dir / "out").string(); }
  fs::path dir;
};

}  // namespace

TEST_F(Cli, SynthRunVerify) {
  auto s = cli("synth Sort --alt meta " + outDir());
  ASSERT_EQ(s.code, 0) << s.out;
  EXPECT_NE(s.out.find("Sort[X] = cons(min[X],Sort[Trim[X]]) | neq(X,nil)"), std::string::npos);
  for (const char* f : {"Sort.alg", "min.alg", "Trim.alg", "minA.alg", "TrimA.alg", "Sort.trace.txt"})
    EXPECT_TRUE(fs::exists(dir / "out" / f)) << f;

  auto r = cli("run Sort \"[2,1,3]\" " + outDir());
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "[1,2,3]\n");

  auto v = cli("verify Sort " + outDir());
  EXPECT_EQ(v.code, 0);
  EXPECT_EQ(v.out, "pass (364 exhaustive + 200 random)\n");
}

TEST_F(Cli, AllWritesOneDirectoryPerVariant) {
  auto s = cli("synth Merge --all " + outDir());
  ASSERT_EQ(s.code, 0) << s.out;
  for (int k = 1; k <= 3; ++k) EXPECT_TRUE(fs::exists(dir / "out" / ("variant-" + std::to_string(k)) / "Merge.alg"));
  EXPECT_FALSE(fs::exists(dir / "out" / "variant-4"));
  EXPECT_TRUE(fs::exists(dir / "out" / "rejected.txt"));

  auto r = cli("run Merge \"[3,1,2]\" \"[]\" --variant 1 " + outDir());
  EXPECT_EQ(r.out, "[1,2,3]\n");
  auto v = cli("verify Merge " + outDir());
  EXPECT_EQ(v.code, 0) << v.out;
  EXPECT_NE(v.out.find("variant-3: pass"), std::string::npos);
}

TEST_F(Cli, TraceLabels) {
  auto t = cli("trace Sort --alt all");
  ASSERT_EQ(t.code, 0);
  EXPECT_NE(t.out.find("Alternative 1\n"), std::string::npos);
  EXPECT_NE(t.out.find("Case 1.1: "), std::string::npos);
  EXPECT_NE(t.out.find("Case 2.1: "), std::string::npos);
  auto tree = cli("trace Insert --trace-format tree");
  ASSERT_EQ(tree.code, 0);
  EXPECT_EQ(tree.out.front(), '[');
}

TEST_F(Cli, DeterministicOutput) {
  auto a = cli("trace Sort --alt all --all");
  auto b = cli("trace Sort --alt all --all");
  EXPECT_EQ(a.out, b.out);
}

TEST_F(Cli, ProofFailureExitsTwo) {
  std::ifstream in(std::string(SORTSYNTH_SOURCE_DIR) + "/theories/sorting.thy");
  std::stringstream text;
  text << in.rdbuf() << "spec Grow(X) requires true ensures exists(V,and(eqms(ms(V),ms(X)),lt(V,X)))\n";
  fs::path theory = dir / "bad.thy";
  std::ofstream(theory) << text.str();
  auto s = cli("synth Grow --max-depth 10 --theory " + theory.string() + " " + outDir());
  EXPECT_EQ(s.code, 2) << s.out;
  EXPECT_NE(s.out.find("proof failed"), std::string::npos);
}

TEST_F(Cli, CounterexampleExitsThree) {
  fs::create_directories(dir / "out");
  std::ofstream(dir / "out" / "Sort.alg") << "Sort[nil] = nil\nSort[cons(a,U)] = cons(a,U)\n";
  auto v = cli("verify Sort " + outDir());
  EXPECT_EQ(v.code, 3);
  EXPECT_NE(v.out.find("FAIL inputs ([2,1])"), std::string::npos) << v.out;
}

TEST_F(Cli, InputErrorsExitFour) {
  EXPECT_EQ(cli("synth Nope").code, 4);
  EXPECT_EQ(cli("synth Sort --cover bogus").code, 4);
  EXPECT_EQ(cli("run Sort \"[1,2]\" " + outDir()).code, 4);  // nothing synthesized yet
  EXPECT_EQ(cli("verify Sort --theory " + (dir / "missing.thy").string()).code, 4);
  EXPECT_EQ(cli("").code, 4);
  fs::path theory = dir / "free.thy";
  std::ofstream(theory) << "spec Grow(X) requires true ensures exists(V,eqms(ms(V),union(mse(a),ms(X))))\n";
  auto free = cli("synth Grow --theory " + theory.string());
  EXPECT_EQ(free.code, 4);
  EXPECT_NE(free.out.find("free variable a"), std::string::npos) << free.out;
}
