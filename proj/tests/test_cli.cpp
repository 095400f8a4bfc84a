#include "biorth/matrix_io.hpp"
#include "cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "biorth");
  std::ostringstream out, err;
  const int code = biorth::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("biorth_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string prefix(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(invoke({}).code, 2);
  EXPECT_EQ(invoke({"frobnicate"}).code, 2);
  EXPECT_EQ(invoke({"model-problem", "--n", "0"}).code, 2);
  EXPECT_EQ(invoke({"model-problem", "--n", "abc"}).code, 2);
  EXPECT_EQ(invoke({"model-problem", "--solver", "newton"}).code, 2);
  EXPECT_EQ(invoke({"penalty", "--alpha", "0"}).code, 2);
  EXPECT_EQ(invoke({"penalty", "--alpha", "-3"}).code, 2);
  EXPECT_EQ(invoke({"funmap", "--synthetic", "--q", "4", "--k", "8"}).code, 2);
  EXPECT_EQ(invoke({"check", "--suite", "nope"}).code, 2);
  const Outcome r = invoke({"model-problem", "--n", "0"});
  EXPECT_NE(r.err.find("--n"), std::string::npos);
}

TEST_F(CliTest, ModelProblemTraceAndDeterminism) {
  const Outcome a = invoke({"model-problem", "--n", "12", "--seed", "3", "--max-iters", "30",
                            "--out", prefix("a")});
  ASSERT_EQ(a.code, 0) << a.err;
  const Outcome b = invoke({"model-problem", "--n", "12", "--seed", "3", "--max-iters", "30",
                            "--out", prefix("b")});
  ASSERT_EQ(b.code, 0) << b.err;
  const biorth::Trace tr = biorth::read_trace(prefix("a") + ".trace.csv");
  EXPECT_LE(tr.size(), 31u);
  for (const auto& r : tr) EXPECT_LE(r.feas_err, 1e-8);
  EXPECT_EQ(slurp(prefix("a") + ".X.txt"), slurp(prefix("b") + ".X.txt"));
  EXPECT_EQ(slurp(prefix("a") + ".Y.txt"), slurp(prefix("b") + ".Y.txt"));
  EXPECT_NE(a.out.find("final_cost="), std::string::npos);
  EXPECT_NE(a.out.find("stop_reason="), std::string::npos);
  const biorth::Matrix x = biorth::read_matrix(prefix("a") + ".X.txt");
  const biorth::Matrix y = biorth::read_matrix(prefix("a") + ".Y.txt");
  EXPECT_LE((x * y - biorth::Matrix::Identity(12, 12)).norm(), 1e-9);
}

TEST_F(CliTest, PenaltyIsOnlyApproximatelyFeasible) {
  const Outcome r = invoke({"penalty", "--n", "15", "--alpha", "100", "--out", prefix("p")});
  ASSERT_EQ(r.code, 0) << r.err;
  const biorth::Trace tr = biorth::read_trace(prefix("p") + ".trace.csv");
  EXPECT_GT(tr.back().feas_err, 1e-6);
}

TEST_F(CliTest, SyntheticFunmap) {
  const std::vector<std::string> args = {"funmap", "--synthetic", "--q", "30", "--k", "6",
                                         "--seed", "2", "--max-iters", "400"};
  auto a1 = args;
  a1.insert(a1.end(), {"--out", prefix("f1")});
  auto a2 = args;
  a2.insert(a2.end(), {"--out", prefix("f2")});
  const Outcome r1 = invoke(a1);
  ASSERT_EQ(r1.code, 0) << r1.err;
  const Outcome r2 = invoke(a2);
  EXPECT_EQ(slurp(prefix("f1") + ".C1.txt"), slurp(prefix("f2") + ".C1.txt"));
  const biorth::Trace tr = biorth::read_trace(prefix("f1") + ".trace.csv");
  EXPECT_LE(tr.back().cost, 1e-8);
  EXPECT_NE(r1.out.find("recovery_c1="), std::string::npos);
  EXPECT_TRUE(fs::exists(prefix("f1") + ".recovery.txt"));
}

TEST_F(CliTest, DefaultSyntheticFunmapRecoversGroundTruth) {
  const Outcome r = invoke({"funmap", "--synthetic", "--out", prefix("d")});
  ASSERT_EQ(r.code, 0) << r.err;
  const biorth::Trace tr = biorth::read_trace(prefix("d") + ".trace.csv");
  EXPECT_LE(tr.back().cost, 1e-8);
  EXPECT_LE(tr.back().feas_err, 1e-10);
  const biorth::Matrix c1 = biorth::read_matrix(prefix("d") + ".C1.txt");
  const biorth::Matrix c2 = biorth::read_matrix(prefix("d") + ".C2.txt");
  EXPECT_LE((c1 * c2 - biorth::Matrix::Identity(16, 16)).norm(), 1e-10);
}

TEST_F(CliTest, FunmapFileErrors) {
  biorth::write_matrix(prefix("A.txt"), biorth::Matrix::Identity(5, 3));
  biorth::write_matrix(prefix("B.txt"), biorth::Matrix::Identity(4, 3));
  const Outcome r = invoke({"funmap", "--a", prefix("A.txt"), "--b", prefix("B.txt")});
  EXPECT_EQ(r.code, 1);
  EXPECT_FALSE(r.err.empty());
  EXPECT_EQ(invoke({"funmap", "--a", prefix("none.txt"), "--b", prefix("B.txt")}).code, 1);
  EXPECT_EQ(invoke({"funmap"}).code, 2);
}

TEST_F(CliTest, FunmapFromFiles) {
  biorth::Matrix a = biorth::Matrix::Identity(6, 3);
  a(4, 1) = 0.5;
  biorth::write_matrix(prefix("A.txt"), a);
  biorth::write_matrix(prefix("B.txt"), a);
  const Outcome r = invoke({"funmap", "--a", prefix("A.txt"), "--b", prefix("B.txt"), "--out",
                            prefix("ff"), "--max-iters", "200"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.find("recovery_c1="), std::string::npos);
  const biorth::Matrix c1 = biorth::read_matrix(prefix("ff") + ".C1.txt");
  EXPECT_LE((c1 - biorth::Matrix::Identity(3, 3)).norm(), 1e-6);
}

TEST_F(CliTest, ProjectAtIdentity) {
  biorth::Matrix phi(2, 2), psi(2, 2);
  phi << 1, 2, 3, 4;
  psi << -1, 0.5, 2, 0;
  biorth::write_matrix(prefix("X0.txt"), biorth::Matrix::Identity(2, 2));
  biorth::write_matrix(prefix("Y0.txt"), biorth::Matrix::Identity(2, 2));
  biorth::write_matrix(prefix("Phi.txt"), phi);
  biorth::write_matrix(prefix("Psi.txt"), psi);
  const Outcome r = invoke({"project", "--x0", prefix("X0.txt"), "--y0", prefix("Y0.txt"),
                            "--phi", prefix("Phi.txt"), "--psi", prefix("Psi.txt"), "--out",
                            prefix("proj")});
  ASSERT_EQ(r.code, 0) << r.err;
  const biorth::Matrix u = biorth::read_matrix(prefix("proj") + ".X.txt");
  const biorth::Matrix v = biorth::read_matrix(prefix("proj") + ".Y.txt");
  EXPECT_LE((u - (phi - psi) / 2).norm(), 1e-15);
  EXPECT_LE((v - (psi - phi) / 2).norm(), 1e-15);
  const auto pos = r.out.find("tangent_residual=");
  ASSERT_NE(pos, std::string::npos);
  EXPECT_LE(std::stod(r.out.substr(pos + 17)), 1e-10 * 2);
}

TEST_F(CliTest, ProjectRejectsInfeasibleBase) {
  biorth::write_matrix(prefix("X0.txt"), 2.0 * biorth::Matrix::Identity(2, 2));
  biorth::write_matrix(prefix("Y0.txt"), biorth::Matrix::Identity(2, 2));
  biorth::write_matrix(prefix("Phi.txt"), biorth::Matrix::Identity(2, 2));
  const Outcome r = invoke({"project", "--x0", prefix("X0.txt"), "--y0", prefix("Y0.txt"),
                            "--phi", prefix("Phi.txt"), "--psi", prefix("Phi.txt")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("||XY - I||"), std::string::npos) << r.err;
}

TEST_F(CliTest, CheckSuites) {
  const Outcome one = invoke({"check", "--suite", "projection-oracle", "--trials", "5"});
  EXPECT_EQ(one.code, 0) << one.out;
  EXPECT_EQ(one.out.find("PASS projection-oracle"), 0u);
  EXPECT_EQ(std::count(one.out.begin(), one.out.end(), '\n'), 1);

  const Outcome all = invoke({"check", "--trials", "4"});
  EXPECT_EQ(all.code, 0) << all.out;
  EXPECT_EQ(all.out.find("FAIL"), std::string::npos) << all.out;

  const Outcome strict = invoke({"check", "--tol", "0", "--trials", "2"});
  EXPECT_EQ(strict.code, 1);
  EXPECT_NE(strict.out.find("FAIL"), std::string::npos);
}
