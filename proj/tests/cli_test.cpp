#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "mvr_cli.hpp"

using namespace mvr;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& text) {
  std::string path = ::testing::TempDir() + name;
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST(Cli, MultiplicityStructured) {
  auto r = run({"--format", "structured", "multiplicity", "x1 /\\ ~x1"});
  EXPECT_EQ(r.code, 0);
  auto j = io::parse(r.out);
  EXPECT_EQ(j["verdict"], "FINITE");
  EXPECT_EQ(j["count"], 2);
  EXPECT_EQ(j["certificates"][0]["vertices"].dump(), "[[0,1],[1,2]]");
  EXPECT_EQ(j["certificates"][1]["vertices"].dump(), "[[1,2],[1,1]]");
}

TEST(Cli, MultiplicityInfinite) {
  auto r = run({"multiplicity", "x1 (-) x2", "x2 (-) x1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("INFINITE", 0), 0u) << r.out;
  auto s = run({"--format", "structured", "multiplicity", "--fixture", "L_fold"});
  EXPECT_EQ(io::parse(s.out)["witness"].size(), 2u);
}

TEST(Cli, Tautology) {
  auto yes = run({"tautology", "~~x1 <-> x1"});
  EXPECT_EQ(yes.code, 0);
  EXPECT_EQ(yes.out, "tautology\n");
  auto no = run({"--format", "structured", "tautology", "x1 (+) x1"});
  EXPECT_EQ(no.code, 1);
  auto j = io::parse(no.out);
  EXPECT_FALSE(j["tautology"].get<bool>());
  EXPECT_FALSE(j["witness"].is_null());
}

TEST(Cli, InputErrorsExitTwo) {
  EXPECT_EQ(run({"tautology", "x1 (+"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"--format", "xml", "range", "x1"}).code, 2);
  EXPECT_EQ(run({"multiplicity", "x1 (+) x1"}).code, 2);
  EXPECT_EQ(run({"multiplicity", "--fixture", "nope"}).code, 2);
  EXPECT_EQ(run({"multiplicity", "--map", "/nonexistent.json"}).code, 2);
  EXPECT_EQ(run({"eval", "x1", "--at", "2"}).code, 2);
  EXPECT_EQ(run({"fixture", "fibonacci", "--stage", "9"}).code, 2);
  auto r = run({"range", "x1", "--fixture", "half_meet"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("exactly one"), std::string::npos);
}

TEST(Cli, HelpExitsZero) { EXPECT_EQ(run({"--help"}).code, 0); }

TEST(Cli, Eval) {
  auto r = run({"eval", "x1 (-) x2", "x2 (-) x1", "--at", "1/2, 1/4"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "(1/4,0)\n");
}

TEST(Cli, CheckRetraction) {
  EXPECT_EQ(run({"check-retraction", "x1 /\\ ~x1"}).code, 0);
  auto r = run({"--format", "structured", "check-retraction", "x1 (+) x1"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(io::parse(r.out)["witness"].dump(), "[1,4]");
}

TEST(Cli, RangeRoundTripsThroughFiles) {
  auto r = run({"--format", "structured", "range", "--fixture", "L_fold"});
  ASSERT_EQ(r.code, 0);
  auto t = io::triangulation_from_json(io::parse(r.out));
  EXPECT_EQ(io::to_json(t).dump(2) + "\n", r.out);
  std::string path = temp_file("range.json", r.out);
  EXPECT_EQ(run({"closed-domain", "--triangulation", path}).code, 1);
  auto sq = run({"--format", "structured", "range", "x1", "x2"});
  std::string sq_path = temp_file("square.json", sq.out);
  EXPECT_EQ(run({"closed-domain", "--triangulation", sq_path}).code, 0);
  EXPECT_EQ(run({"interior-connected", "--triangulation", sq_path}).code, 0);
}

TEST(Cli, MapFileRoundTrip) {
  auto f = run({"--format", "structured", "fixture", "half_tau"});
  ASSERT_EQ(f.code, 0);
  std::string path = temp_file("tau.json", f.out);
  auto back = io::pwl_from_json(io::parse(f.out));
  EXPECT_EQ(io::to_json(back).dump(2) + "\n", f.out);
  auto r = run({"--format", "structured", "multiplicity", "--map", path});
  EXPECT_EQ(io::parse(r.out)["count"], 1);
  EXPECT_EQ(run({"same-range", "map:" + path, "fixture:half_meet"}).code, 0);
}

TEST(Cli, ReportRoundTrip) {
  auto r = run({"--format", "structured", "multiplicity", "--fixture", "fibonacci", "--stage", "2"});
  auto report = io::report_from_json(io::parse(r.out));
  EXPECT_EQ(report.count, 4u);
  EXPECT_EQ(io::to_json(report).dump(2) + "\n", r.out);
}

TEST(Cli, IndexBounds) {
  auto r = run({"--format", "structured", "index-bounds", "x1 /\\ ~(x1 (+) x1)"});
  EXPECT_EQ(r.code, 0);
  auto j = io::parse(r.out);
  EXPECT_EQ(j["lower"], 2);
  EXPECT_EQ(j["upper"], 2);
  EXPECT_EQ(j["lambda"], "1/3");
  EXPECT_TRUE(io::parse(run({"--format", "structured", "index-bounds", "--fixture", "cyl_proj"}).out)["unbounded"]
                  .get<bool>());
}

TEST(Cli, SameAlgebra) {
  EXPECT_EQ(run({"same-algebra", "x1 /\\ ~x1", "x1 \\/ ~x1"}).code, 0);
  EXPECT_EQ(run({"same-algebra", "x1 /\\ ~x1", "fixture:half_tau"}).code, 1);
  EXPECT_EQ(run({"same-range", "x1 /\\ ~x1", "fixture:half_join"}).code, 1);
  EXPECT_EQ(run({"same-range", "x1; x2", "fixture:L_fold"}).code, 1);
}

TEST(Cli, Threads) {
  auto one = run({"--format", "structured", "multiplicity", "--fixture", "fibonacci", "--stage", "3"});
  auto two = run({"--threads", "2", "--format", "structured", "multiplicity", "--fixture", "fibonacci", "--stage", "3"});
  EXPECT_EQ(one.code, 0);
  EXPECT_EQ(one.out, two.out);
  EXPECT_EQ(run({"--threads", "0", "range", "x1"}).code, 2);
}

TEST(Cli, FixtureList) {
  auto r = run({"fixture", "--list"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("L_fold"), std::string::npos);
  auto w = run({"--format", "structured", "fixture", "wp", "-p", "3"});
  EXPECT_EQ(io::triangulation_from_json(io::parse(w.out)), wp_domain(3));
}

TEST(Cli, RenderSvg) {
  auto w = run({"--format", "structured", "multiplicity", "--fixture", "fibonacci", "--stage", "1"});
  std::string report = temp_file("fib1.json", w.out);
  auto r = run({"render-svg", report});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("<?xml", 0), 0u);
  EXPECT_NE(r.out.find("version=\"1.1\""), std::string::npos);
  EXPECT_NE(r.out.find("[1,1,1]"), std::string::npos);
  EXPECT_EQ(r.out.find("</svg>"), r.out.size() - 7);
  std::string one_dim = temp_file("half.json", run({"--format", "structured", "range", "x1 /\\ ~x1"}).out);
  EXPECT_EQ(run({"render-svg", one_dim}).code, 2);
}
