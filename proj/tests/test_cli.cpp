#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace fs = std::filesystem;
using namespace weldkit;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run weldkit_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(WELDKIT_DATA_DIR) + "/" + name; }

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("weldkit_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                        "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const auto path = (dir_ / name).string();
    std::ofstream(path) << text;
    return path;
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, EquivThreeStrandAgainstGz) {
  const auto r = weldkit_cli({"equiv", "--moveset", "BV", data("three_strand.gd"), data("gz01.gd")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("equivalent"), std::string::npos);
}

TEST_F(Cli, EquivDistinctExitsOne) {
  const auto r = weldkit_cli({"equiv", "--moveset", "VC", data("arrow12.gd"), data("arrow12neg.gd")});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out.rfind("distinct", 0), 0u);
}

TEST_F(Cli, InvOfEmptyIsZeroMatrix) {
  const auto r = weldkit_cli({"inv", "--moveset", "F", data("empty.gd")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, ". 0 0\n0 . 0\n0 0 .\n");
}

TEST_F(Cli, InvThreeStrand) {
  auto r = weldkit_cli({"inv", data("three_strand.gd")});
  EXPECT_EQ(r.out, ". 1 0\n0 . 0\n1 0 .\n");
  r = weldkit_cli({"inv", "--moveset", "BV", data("three_strand.gd")});
  EXPECT_EQ(r.out, "(0,1)\n");
}

TEST_F(Cli, MalformedInputReportsPosition) {
  const auto r = weldkit_cli({"parse", data("malformed.gd")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("line 3, column 9"), std::string::npos) << r.err;
}

TEST_F(Cli, ParseRoundTrip) {
  for (const char* name : {"three_strand.gd", "gz01.gd", "g1011.gd", "empty.gd", "arrow12.gd"}) {
    const auto r = weldkit_cli({"parse", data(name)});
    ASSERT_EQ(r.code, 0) << name;
    const auto again = weldkit_cli({"parse", write("copy.gd", r.out)});
    EXPECT_EQ(again.out, r.out) << name;
  }
}

TEST_F(Cli, ParseWordFile) {
  const auto r = weldkit_cli({"parse", data("welded.wd")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("strands 3\n", 0), 0u);
}

TEST_F(Cli, NormalizeOutputIsEquivalent) {
  for (int seed = 1; seed <= 5; ++seed) {
    const auto rnd = weldkit_cli({"random", "--strands", "3", "--length", "6", "--seed", std::to_string(seed)});
    ASSERT_EQ(rnd.code, 0);
    const auto in = write("in.gd", rnd.out);
    const auto norm = weldkit_cli({"normalize", "--moveset", "BV", in, "--trace-out", path("t.trace")});
    ASSERT_EQ(norm.code, 0) << norm.err;
    const auto out = write("out.gd", norm.out);
    EXPECT_EQ(weldkit_cli({"equiv", "--moveset", "BV", in, out}).code, 0);
    const auto replay = weldkit_cli({"apply", in, "--trace", path("t.trace")});
    ASSERT_EQ(replay.code, 0) << replay.err;
    EXPECT_EQ(replay.out, norm.out);
  }
}

TEST_F(Cli, NormalizeOtherMovesets) {
  const auto r = weldkit_cli({"normalize", "--moveset", "F", data("three_strand.gd")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(weldkit_cli({"equiv", "--moveset", "F", data("three_strand.gd"), write("f.gd", r.out)}).code, 0);
  EXPECT_EQ(weldkit_cli({"normalize", "--moveset", "SV", data("three_strand.gd")}).code, 2);
  EXPECT_EQ(weldkit_cli({"normalize", "--moveset", "F", data("three_strand.gd"), "--trace-out", path("x")}).code, 2);
}

TEST_F(Cli, ApplyAndExpandMacroAgree) {
  const auto direct = weldkit_cli({"apply", data("arrow12.gd"), "--move", "VC", "--arrow", "1"});
  ASSERT_EQ(direct.code, 0) << direct.err;
  EXPECT_EQ(direct.out, "strands 2\narrow 1 + 2.0 1.0\n");
  const auto macro = weldkit_cli({"expand-macro", data("arrow12.gd"), "--move", "VC", "--arrow", "1"});
  ASSERT_EQ(macro.code, 0) << macro.err;
  const auto replay = weldkit_cli({"apply", data("arrow12.gd"), "--trace", write("vc.trace", macro.out)});
  EXPECT_EQ(replay.out, direct.out);
}

TEST_F(Cli, ApplyInsertion) {
  const auto r = weldkit_cli({"apply", data("empty.gd"), "--move", "R1", "--direction", "b", "--at", "2.0,2.1",
                              "--sign", "-"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "strands 3\narrow 1 - 2.0 2.1\n");
}

TEST_F(Cli, ApplyMismatchIsInputError) {
  EXPECT_EQ(weldkit_cli({"apply", data("arrow12.gd"), "--move", "R1", "--arrow", "1"}).code, 2);
  EXPECT_EQ(weldkit_cli({"apply", data("arrow12.gd"), "--move", "R2"}).code, 2);
  EXPECT_EQ(weldkit_cli({"apply", data("arrow12.gd")}).code, 2);
}

TEST_F(Cli, SearchPrintsTraceOrNotFound) {
  auto r = weldkit_cli({"search", data("r2pair.wd"), data("empty.gd")});
  EXPECT_EQ(r.code, 2);  // strand counts differ
  r = weldkit_cli({"search", data("arrow12.gd"), data("arrow21.gd"), "--moveset", "VC", "--depth", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("move VC forward arrows=1"), std::string::npos);
  r = weldkit_cli({"search", data("arrow12.gd"), data("arrow21.gd"), "--depth", "2", "--nodes", "500"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "NOT FOUND (budget exhausted)\n");
}

TEST_F(Cli, RandomIsDeterministic) {
  const std::vector<std::string> args{"random", "--strands", "4", "--length", "9", "--seed", "42", "--classical"};
  const auto a = weldkit_cli(args), b = weldkit_cli(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("classical"), std::string::npos);
  const auto w = weldkit_cli({"random", "--strands", "3", "--seed", "1", "--format", "word"});
  EXPECT_NE(w.out.find("word "), std::string::npos);
}

TEST_F(Cli, StackAddsVlk) {
  const auto r = weldkit_cli({"stack", data("arrow12.gd"), data("arrow12.gd")});
  ASSERT_EQ(r.code, 0);
  const auto inv = weldkit_cli({"inv", write("s.gd", r.out)});
  EXPECT_EQ(inv.out, ". 2\n0 .\n");
}

TEST_F(Cli, PhiPrintsOneLinePerGenerator) {
  const auto r = weldkit_cli({"phi", data("arrow12.gd")});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "x1 -> (e)^-1 x1 (e)\nx2 -> (x1)^-1 x2 (x1)\n");
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(weldkit_cli({}).code, 2);
  EXPECT_EQ(weldkit_cli({"frobnicate"}).code, 2);
  EXPECT_EQ(weldkit_cli({"parse", "--unknown", data("three_strand.gd")}).code, 2);
  EXPECT_EQ(weldkit_cli({"parse", path("missing.gd")}).code, 2);
  EXPECT_EQ(weldkit_cli({"equiv", data("three_strand.gd"), data("gz01.gd")}).code, 2);
  EXPECT_EQ(weldkit_cli({"equiv", "--moveset", "R3", data("three_strand.gd"), data("gz01.gd")}).code, 2);
  EXPECT_EQ(weldkit_cli({"search", data("three_strand.gd"), data("three_strand.gd"), "--depth", "0"}).code, 2);
  EXPECT_EQ(weldkit_cli({"--help"}).code, 0);
  EXPECT_EQ(weldkit_cli({"search", "--help"}).code, 0);
}
