#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(ARNOLD_CAT_EXE) + " " + args + " 2>&1";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  while (std::fgets(buf, sizeof buf, pipe)) r.out += buf;
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("arnold_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const auto p = (dir_ / name).string();
    std::ofstream(p) << text;
    return p;
  }

  std::filesystem::path dir_;
};

TEST_F(Cli, UsageErrorsExitOne) {
  EXPECT_EQ(run("").code, 1);
  EXPECT_EQ(run("frobnicate").code, 1);
  EXPECT_EQ(run("weights").code, 1);
  EXPECT_EQ(run("weights --n 0").code, 1);
  EXPECT_EQ(run("--help").code, 0);
}

TEST_F(Cli, WeightsSubcommand) {
  const auto r = run("weights --n 4 --compare");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("(4,6,12)"), std::string::npos);
  EXPECT_NE(r.out.find("identical"), std::string::npos);
  EXPECT_EQ(run("weights --n 4 --bound 5").code, 2);
}

TEST_F(Cli, BuildPrintsExactCouplings) {
  const auto r = run("build --params 1,1,1 --extrema");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\"28\""), std::string::npos);
  EXPECT_NE(r.out.find("2.64575131106,-49,minimum,3,0"), std::string::npos);
  EXPECT_EQ(run("build --params 1,1,1 --weights 1,3 --exact").code, 2);
  EXPECT_EQ(run("build --params 1,x").code, 2);
  EXPECT_EQ(run("build --params 1,1 --couplings 2,1").code, 2);
}

TEST_F(Cli, SolveWritesSpectrum) {
  const auto cfg = write("c.json", R"({"schema": 1, "potential": {"params": [2]}, "states": 4})");
  const auto out = (dir_ / "s.csv").string();
  const auto r = run("solve --config " + cfg + " --out " + out + " --dump-psi " + (dir_ / "psi.csv").string());
  EXPECT_EQ(r.code, 0) << r.out;
  std::ifstream in(out);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "n,E,parity,splitting_partner,weight_region_0,weight_region_1");
  EXPECT_TRUE(std::filesystem::exists(dir_ / "psi.csv"));
}

TEST_F(Cli, NumericalFailureExitsThree) {
  const auto cfg = write("leak.json", R"({"schema": 1, "potential": {"params": [2]},
                                          "grid": {"half_width": 2.2, "points": 1001}, "states": 8})");
  const auto r = run("solve --config " + cfg);
  EXPECT_EQ(r.code, 3) << r.out;
  EXPECT_NE(r.out.find("numerical failure"), std::string::npos);
}

TEST_F(Cli, InvalidConfigExitsTwo) {
  const auto cfg = write("bad.json", R"({"schema": 1, "potential": {"params": [1], "couplings": [1]}, "bogus": 1})");
  const auto r = run("solve --config " + cfg);
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("conflicting forms"), std::string::npos);
  EXPECT_NE(r.out.find("bogus"), std::string::npos);
  EXPECT_EQ(run("solve --config " + (dir_ / "missing.json").string()).code, 2);
}

TEST_F(Cli, LocusAndScan) {
  const auto l = run("locus --path k5_alpha_beta --alpha 1");
  EXPECT_EQ(l.code, 0);
  EXPECT_NE(l.out.find("1,lower,0.19088"), std::string::npos);
  EXPECT_NE(l.out.find("1,upper,1.1504"), std::string::npos);
  const auto s = run("scan --path k5_alpha_beta --alpha 1 --beta-range 1:1.3:0.05");
  EXPECT_EQ(s.code, 0);
  EXPECT_NE(s.out.find("relocalizes near beta = 1.12"), std::string::npos);
  EXPECT_EQ(run("scan --path k5_alpha_beta --alpha 1 --beta-range 1:1.3").code, 2);
  EXPECT_EQ(run("locus --path k7_eta --beta 1").code, 2);
  const auto swap = run("locus --path k5_alpha_beta --beta 1.15 --alpha-range 0.5:2");
  EXPECT_EQ(swap.code, 0);
  EXPECT_NE(swap.out.find("1.15,lower,0.9992"), std::string::npos);
}

TEST_F(Cli, ReproduceFigure) {
  const auto r = run("reproduce fig2 --out-dir " + dir_.string());
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(std::filesystem::exists(dir_ / "fig2.svg"));
  EXPECT_EQ(run("reproduce fig42").code, 2);
}

}  // namespace
