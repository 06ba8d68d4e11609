// Runs the built command-line binary from the source directory, so spec
// paths in the output are the relative fixture paths.

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "cli_runner.hpp"

namespace {

namespace fs = std::filesystem;

using testing_support::run_cli;
using testing_support::slurp;

auto run(const std::string& args) { return run_cli(args); }

const char* kGolden[] = {"example1_n1", "example1_n2", "example1_n3", "example1_n4", "example1_n5",
                         "example1_n6", "example2",    "example2_c2", "example2_point", "example1_point"};

void check_snapshot(const std::string& name, const std::string& actual) {
  const fs::path path = fs::path("tests/snapshots") / name;
  if (std::getenv("HYPERTORIC_UPDATE_SNAPSHOTS")) {
    fs::create_directories(path.parent_path());
    std::ofstream os(path);
    os << actual;
    ASSERT_TRUE(os.good()) << "cannot write " << path;
    return;
  }
  ASSERT_TRUE(fs::exists(path)) << "missing snapshot " << path;
  EXPECT_EQ(actual, slurp(path)) << "snapshot " << path;
}

}  // namespace

TEST(Cli, BettiExample1) {
  const auto r = run("betti fixtures/example1_n3.spec");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "P = 1 + t^2 + t^4 + t^6");
}

TEST(Cli, ChambersExample2) {
  const auto r = run("chambers fixtures/example2.spec");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "6 chambers");
}

TEST(Cli, FlowExample1) {
  const auto r = run("flow fixtures/example1_point.spec --json");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["results"]["status"], "converged");
  EXPECT_NEAR(j["results"]["minimizer"][0].get<double>(), 0.6931471806, 1e-6);
}

TEST(Cli, RingReducedExample1) {
  const auto r = run("ring fixtures/example1_n4.spec --reduced");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("reduced: Z[v]/(v^5)"), std::string::npos) << r.out;
}

TEST(Cli, CrossExample2) {
  const auto r = run("cross fixtures/example2.spec --to 1,3 --json");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["results"]["kind"], "mukai_flop");
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("").code, 1);
  EXPECT_EQ(run("frobnicate fixtures/example2.spec").code, 1);
  EXPECT_EQ(run("ring fixtures/example2.spec --mode bogus").code, 1);
  EXPECT_EQ(run("cross fixtures/example2.spec").code, 1);
  EXPECT_EQ(run("walls fixtures/does_not_exist.spec").code, 2);
  for (const char* f : {"bad_rational", "row_mismatch", "missing_torus", "unterminated"}) {
    const auto r = run(std::string("walls fixtures/malformed/") + f + ".spec");
    EXPECT_EQ(r.code, 2) << f;
    EXPECT_FALSE(r.err.empty()) << f;
  }
  EXPECT_EQ(run("validate fixtures/malformed/unsaturated.spec").code, 3);
  EXPECT_EQ(run("validate fixtures/malformed/rank_deficient.spec").code, 3);
  EXPECT_EQ(run("walls fixtures/malformed/rank_deficient.spec").code, 3);
  EXPECT_EQ(run("betti fixtures/malformed/nonregular.spec").code, 3);
  EXPECT_EQ(run("cross fixtures/example2.spec --to 2,2").code, 3);
}

TEST(Cli, MalformedMessagesHaveLineNumbers) {
  const auto r = run("walls fixtures/malformed/bad_rational.spec");
  EXPECT_NE(r.err.find("line "), std::string::npos) << r.err;
  const auto rows = run("walls fixtures/malformed/row_mismatch.spec");
  EXPECT_NE(rows.err.find("row 2"), std::string::npos) << rows.err;
}

TEST(Cli, JsonRoundTrip) {
  for (const char* name : kGolden) {
    const auto r = run(std::string("report fixtures/") + name + ".spec --json");
    ASSERT_EQ(r.code, 0) << name << r.err;
    const auto j = nlohmann::ordered_json::parse(r.out);
    EXPECT_EQ(j.dump(2) + "\n", r.out) << name;
  }
}

TEST(Cli, ReportSnapshots) {
  for (const char* name : kGolden) {
    const std::string spec = std::string("fixtures/") + name + ".spec";
    const auto text = run("report " + spec);
    ASSERT_EQ(text.code, 0) << name << text.err;
    check_snapshot(std::string(name) + ".txt", text.out);
    const auto json = run("report " + spec + " --json");
    ASSERT_EQ(json.code, 0) << name;
    check_snapshot(std::string(name) + ".json", json.out);
  }
}

TEST(Cli, ThreadsDoNotChangeOutput) {
  const auto one = run("report fixtures/example2.spec --threads 1");
  const auto four = run("report fixtures/example2.spec --threads 4");
  EXPECT_EQ(one.out, four.out);
  const auto env = run("report fixtures/example2.spec");
  EXPECT_EQ(one.out, env.out);
}

TEST(Cli, SvgFigures) {
  const fs::path out = fs::temp_directory_path() / ("hypertoric_chambers_" + std::to_string(::getpid()) + ".svg");
  const auto ok = run("chambers fixtures/example2.spec --svg " + out.string());
  ASSERT_EQ(ok.code, 0) << ok.err;
  const std::string svg = slurp(out);
  fs::remove(out);
  EXPECT_NE(svg.find("<svg"), std::string::npos);

  const auto bad = run("arrangement fixtures/example2.spec --svg " + out.string());
  EXPECT_EQ(bad.code, 3);
  EXPECT_NE(bad.err.find("figure requires d=2 or n=2"), std::string::npos) << bad.err;
  EXPECT_FALSE(fs::exists(out));
}
