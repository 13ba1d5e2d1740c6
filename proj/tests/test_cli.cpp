#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dio/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "dio");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  int code = dio::cli::dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("dio_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    std::ofstream(dir_ / "identity.rep") << "REP r=2\nx1 - x2\n";
    std::ofstream(dir_ / "square.rep") << "REP r=2\nx1 - x2^2\n";
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const char* name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, ReduceFullNaturals) {
  auto r = run({"reduce", "--ring", "n", "--mode", "full", "--cap", "1000000", "--out", path("a.ens"), "x1 = x2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(slurp(path("a.ens")).find("n 625\n"), std::string::npos);
  EXPECT_TRUE(fs::exists(path("a.cert")));
}

TEST_F(Cli, OutputsAreDeterministic) {
  for (const char* name : {"a.ens", "b.ens"}) {
    ASSERT_EQ(run({"reduce", "--ring", "z", "--mode", "full", "--out", path(name), "x1 = x2"}).code, 0);
  }
  EXPECT_EQ(slurp(path("a.ens")), slurp(path("b.ens")));
  EXPECT_EQ(slurp(path("a.cert")), slurp(path("b.cert")));
  for (const char* name : {"c.ens", "d.ens"}) {
    ASSERT_EQ(run({"fn-system", "--rep", path("square.rep"), "--ring", "n", "--n", "13", "--out", path(name)}).code, 0);
  }
  EXPECT_EQ(slurp(path("c.ens")), slurp(path("d.ens")));
  EXPECT_EQ(slurp(path("c.layout")), slurp(path("d.layout")));
}

TEST_F(Cli, Info) {
  auto r = run({"info", "--rep", path("identity.rep"), "--ring", "n"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("s=3\n"), std::string::npos);
  EXPECT_NE(r.out.find("w(f)=10\n"), std::string::npos);
  auto z = run({"info", "--ring", "z", "x1 = x2"});
  ASSERT_EQ(z.code, 0);
  EXPECT_NE(z.out.find("card(T) full_Z=625\n"), std::string::npos);
}

TEST_F(Cli, BelowThreshold) {
  auto r = run({"fn-system", "--rep", path("identity.rep"), "--ring", "n", "--n", "9", "--out", path("f.ens")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("error[E_BELOW_THRESHOLD]: n below threshold 10"), std::string::npos);
  EXPECT_FALSE(fs::exists(path("f.ens")));
  EXPECT_FALSE(fs::exists(path("f.layout")));
}

TEST_F(Cli, ErrorCodes) {
  EXPECT_EQ(run({"reduce", "--out", path("x.ens"), "x1 + = 2"}).code, 2);
  EXPECT_NE(run({"reduce", "--out", path("x.ens"), "x1 + = 2"}).err.find("error[E_SYNTAX]"), std::string::npos);
  EXPECT_EQ(run({"reduce", "--out", path("x.ens"), "x1 = x1"}).code, 2);
  EXPECT_EQ(run({"reduce", "--mode", "sideways", "x1 = 2"}).code, 2);
  EXPECT_EQ(run({"reduce", "--ring", "q", "x1 = 2"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"solve", "--ens", path("missing.ens")}).code, 2);
  auto big = run({"reduce", "--mode", "full", "--cap", "100", "--out", path("y.ens"), "x1 = x2"});
  EXPECT_EQ(big.code, 3);
  EXPECT_NE(big.err.find("error[E_FAMILY_TOO_LARGE]"), std::string::npos);
  EXPECT_FALSE(fs::exists(path("y.ens")));
  EXPECT_FALSE(fs::exists(path("y.cert")));
  EXPECT_FALSE(fs::exists(path("y.ens.tmp")));
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(Cli, EnvironmentOverridesCap) {
  ::setenv("DIO_CAP", "10", 1);
  auto r = run({"reduce", "--mode", "full", "--out", path("e.ens"), "x1 = x2"});
  ::unsetenv("DIO_CAP");
  EXPECT_EQ(r.code, 3);
}

TEST_F(Cli, VerifyEquivalence) {
  ASSERT_EQ(run({"reduce", "--ring", "n", "--out", path("v.ens"), "x1*x2 = 6"}).code, 0);
  auto r = run({"verify-equiv", "--ens", path("v.ens"), "--cert", path("v.cert"), "--box=0..6", "--report",
                path("v.json"), "--jobs", "2", "x1*x2 = 6"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_NE(r.out.find("roots 4\n"), std::string::npos);
  EXPECT_NE(slurp(path("v.json")).find("\"passed\": true"), std::string::npos);
  // A certificate for a different equation fails verification.
  auto wrong = run({"verify-equiv", "--ens", path("v.ens"), "--cert", path("v.cert"), "--box=0..6", "x1*x2 = 8"});
  EXPECT_EQ(wrong.code, 1);
}

TEST_F(Cli, SolveAndPin) {
  ASSERT_EQ(run({"fn-system", "--rep", path("square.rep"), "--ring", "n", "--n", "12", "--out", path("p.ens")}).code, 0);
  auto pin = run({"verify-pin", "--ens", path("p.ens"), "--expected", "144", "--rep", path("square.rep")});
  EXPECT_EQ(pin.code, 0) << pin.out << pin.err;
  auto bad = run({"verify-pin", "--ens", path("p.ens"), "--expected", "143", "--rep", path("square.rep")});
  EXPECT_EQ(bad.code, 1);
  auto solve = run({"solve", "--ens", path("p.ens"), "--ring", "n", "--box=0..2", "--project", "2"});
  EXPECT_EQ(solve.code, 0) << solve.err;
  EXPECT_NE(solve.out.find("144 12\n"), std::string::npos);
}
