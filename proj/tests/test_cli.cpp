#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "dualspace/cli.hpp"
#include "test_helpers.hpp"

using namespace dualspace;
using namespace testing_helpers;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "dualspace");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("dualspace-cli-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string file(const std::string& name, const std::string& content) {
    const auto p = (dir_ / name).string();
    cli::write_file(p, content);
    return p;
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

const std::string kShift1 = "field: GF(7)\nrows: omega\ncols: omega\nkind: shift 1\n";
const std::string kShift2 = "field: GF(7)\nrows: omega\ncols: omega\nkind: shift 2\n";

}  // namespace

TEST_F(CliTest, ApplyIdentityRightToBasisVector) {
  const auto m = file("id.dsm", "field: GF(2)\nrows: omega\ncols: omega\nkind: identity\n");
  const auto v = file("d0.dsv", "field: GF(2)\ndim: omega\nkind: sparse\n0 1\n");
  const auto r = run_cli({"apply", "--matrix", m, "--vector", v, "--side", "right", "--out", path("o.dsv")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(cli::read_file(path("o.dsv")), io::serialize(FinSuppVec::basis(gf(2), Dim::omega(), 0)));
}

TEST_F(CliTest, ApplyLeftShiftsAProductVector) {
  const auto m = file("s1.dsm", kShift1);
  const auto v = file("y.dsv", "field: GF(7)\ndim: omega\nkind: prefix\nprefix: 1 2 3\ntail: repeat 4 5\n");
  const auto r = run_cli({"apply", "--matrix", m, "--vector", v, "--side", "left"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "field: GF(7)\ndim: omega\nkind: prefix\nprefix: 2 3\ntail: repeat 4 5\n");
}

TEST_F(CliTest, ApplyRightRejectsInfiniteSupport) {
  const auto m = file("s1.dsm", kShift1);
  const auto v = file("y.dsv", "field: GF(7)\ndim: omega\nkind: prefix\nprefix: 1\ntail: repeat 4\n");
  EXPECT_EQ(run_cli({"apply", "--matrix", m, "--vector", v}).code, 15);
}

TEST_F(CliTest, ComposeShifts) {
  const auto a = file("shift1.dsm", kShift1);
  const auto b = file("shift2.dsm", kShift2);
  const auto r = run_cli({"compose", a, b});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("kind: shift 3\n"), std::string::npos);
  const auto r2 = run_cli({"compose", "--matrix", a, "--matrix", b, "--out", path("c.dsm")});
  EXPECT_EQ(r2.code, 0);
  EXPECT_EQ(cli::read_file(path("c.dsm")), r.out);
}

TEST_F(CliTest, DualReportsOrientationFlip) {
  const auto m = file("s1.dsm", kShift1);
  const auto r = run_cli({"dual", "--matrix", m});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, kShift1);
  EXPECT_EQ(r.err, "orientation: RightOnFinSupp -> LeftOnProd\n");
  const auto back = run_cli({"dual", "--matrix", m, "--side", "left", "--out", path("d.dsm")});
  EXPECT_EQ(back.out, "orientation: LeftOnProd -> RightOnFinSupp\n");
  EXPECT_EQ(cli::read_file(path("d.dsm")), kShift1);
}

TEST_F(CliTest, LimitThreadAndRoundtrip) {
  const auto v = file("y.dsv", "field: GF(5)\ndim: omega\nkind: prefix\nprefix:\ntail: repeat 1 2\n");
  const auto t = run_cli({"limit", "--vector", v, "--depth", "3"});
  EXPECT_EQ(t.code, 0);
  EXPECT_EQ(t.out, "1\n1 2\n1 2 1\n");
  const auto rt = run_cli({"limit", "--vector", v, "--depth", "64", "--mode", "roundtrip"});
  EXPECT_EQ(rt.code, 0);
  EXPECT_EQ(rt.out, "roundtrip depth=64 pass\n");
  EXPECT_EQ(run_cli({"limit", "--vector", v, "--depth", "0"}).code, 2);
  const auto fin = file("f.dsv", "field: GF(5)\ndim: 3\nkind: sparse\n0 1\n");
  EXPECT_EQ(run_cli({"limit", "--vector", fin, "--depth", "2"}).code, 7);
}

TEST_F(CliTest, VerifyAdjointDefaults) {
  const auto r = run_cli({"verify", "--suite", "adjoint", "--cases", "1000", "--seed", "42"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out, "# dualspace verify seed=42 cases=1000 trunc=64\nadjoint 1000 pass\n");
}

TEST_F(CliTest, VerifyIsDeterministic) {
  const auto a = run_cli({"verify", "--cases", "40", "--seed", "7"});
  const auto b = run_cli({"verify", "--cases", "40", "--seed", "7"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST_F(CliTest, SeedFromEnvironmentAndFlagOverride) {
  ::setenv("DUALSPACE_SEED", "1234", 1);
  const auto env = run_cli({"verify", "--suite", "full", "--cases", "5"});
  const auto flag = run_cli({"verify", "--suite", "full", "--cases", "5", "--seed", "9"});
  ::unsetenv("DUALSPACE_SEED");
  EXPECT_EQ(env.out.substr(0, env.out.find('\n')), "# dualspace verify seed=1234 cases=5 trunc=64");
  EXPECT_EQ(flag.out.substr(0, flag.out.find('\n')), "# dualspace verify seed=9 cases=5 trunc=64");
}

TEST_F(CliTest, ExitCodesPerErrorClass) {
  const auto shift = file("s.dsm", kShift1);
  const auto diag = file("d.dsm", "field: GF(7)\nrows: omega\ncols: omega\nkind: diagblock\nblock: 2 3\n");
  const auto gf5 = file("g5.dsv", "field: GF(5)\ndim: omega\nkind: sparse\n0 1\n");
  const auto fin = file("fin.dsv", "field: GF(7)\ndim: 4\nkind: sparse\n0 1\n");

  EXPECT_EQ(run_cli({}).code, 2);
  EXPECT_EQ(run_cli({"frobnicate"}).code, 2);
  EXPECT_EQ(run_cli({"verify", "--suite", "nope"}).code, 2);
  EXPECT_EQ(run_cli({"verify", "--cases", "0"}).code, 2);
  EXPECT_EQ(run_cli({"apply", "--matrix", shift, "--vector", gf5, "--side", "up"}).code, 2);
  EXPECT_EQ(run_cli({"compose", shift}).code, 2);
  EXPECT_EQ(run_cli({"compose", shift, path("missing.dsm")}).code, 3);
  EXPECT_EQ(run_cli({"compose", shift, file("bad.dsm", "field: GF(7)\nrows: 2\n")}).code, 4);
  EXPECT_EQ(run_cli({"compose", shift, file("z.dsm", "field: GF(7)\nrows: omega\ncols: omega\nkind: triplets\n0 0 0\n")})
                .code,
            5);
  EXPECT_EQ(run_cli({"apply", "--matrix", shift, "--vector", gf5}).code, 6);
  EXPECT_EQ(run_cli({"apply", "--matrix", shift, "--vector", fin}).code, 7);
  const auto r = run_cli({"compose", shift, diag});
  EXPECT_EQ(r.code, 12);
  EXPECT_NE(r.err.find("UnrepresentableComposite"), std::string::npos);
}

TEST(CliExitCodes, AreDistinct) {
  std::set<int> codes{cli::kExitOk, cli::kExitLawFailed, cli::kExitUsage};
  const ErrorKind kinds[] = {
      ErrorKind::IoError,          ErrorKind::ParseError,          ErrorKind::InvariantViolation,
      ErrorKind::FieldMismatch,    ErrorKind::DimensionMismatch,   ErrorKind::IndexOutOfRange,
      ErrorKind::DivisionByZero,   ErrorKind::BadTruncation,       ErrorKind::IncompatibleThread,
      ErrorKind::UnrepresentableComposite, ErrorKind::Undecidable, ErrorKind::TruncationTooSmall,
      ErrorKind::PreconditionViolated,     ErrorKind::InvalidArgument};
  for (auto k : kinds) codes.insert(cli::exit_code(k));
  EXPECT_EQ(codes.size(), std::size(kinds) + 3);
}

TEST(FormatReport, Examples) {
  const VerifyOptions opt;
  EXPECT_EQ(format_report({}, opt), "# dualspace verify seed=42 cases=1000 trunc=64\n");

  LawResult bad{"functor", 10, 1, Counterexample{"x", {}}, std::string("out/counterexample-functor")};
  EXPECT_EQ(format_report({bad}, opt),
            "# dualspace verify seed=42 cases=1000 trunc=64\nfunctor 10 fail counterexample=out/counterexample-functor\n");

  std::vector<LawResult> all;
  for (auto it = suite_names().rbegin(); it != suite_names().rend(); ++it) all.push_back({*it, 3, 0, {}, {}});
  const auto report = format_report(all, opt);
  EXPECT_EQ(report,
            "# dualspace verify seed=42 cases=1000 trunc=64\n"
            "adjoint 3 pass\nexact 3 pass\nfaithful 3 pass\nfull 3 pass\nfunctor 3 pass\nlimits 3 pass\n");
}

TEST_F(CliTest, CounterexamplesAreWrittenForFailingLaws) {
  std::vector<LawResult> results{
      {"adjoint", 5, 0, {}, {}},
      {"functor", 5, 2, Counterexample{"case 3: mismatch", {{"a.dsm", kShift1}}}, {}}};
  cli::write_counterexamples(results, dir_.string());
  EXPECT_FALSE(results[0].counterexample_path);
  ASSERT_TRUE(results[1].counterexample_path);
  const fs::path base = *results[1].counterexample_path;
  EXPECT_EQ(base, dir_ / "counterexample-functor");
  EXPECT_EQ(cli::read_file((base / "note.txt").string()), "case 3: mismatch\n");
  EXPECT_EQ(cli::read_file((base / "a.dsm").string()), kShift1);
  EXPECT_NE(format_report(results, {}).find("functor 5 fail counterexample=" + base.string()), std::string::npos);
}
