#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "ddclab/model_io.hpp"

namespace {

const std::string kData = DDCLAB_TEST_DATA;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run lab(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = ddc::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("ddclab_cli_" + name)).string();
}

}  // namespace

TEST(Cli, Prop1Equal) {
  auto r = lab({"prop1", "--input", kData + "/seq.json"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("envelopes equal on [0,4]"), std::string::npos) << r.out;
}

TEST(Cli, Prop1HypothesesFail) {
  const std::string path = temp_path("seq_fail.json");
  std::ofstream(path) << R"({"a": ["1", "4", "2"], "b": ["1", "3", "4", "2", "2"]})";
  auto r = lab({"prop1", "--input", path});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("condition 2 fails at k = 1"), std::string::npos) << r.out;
}

TEST(Cli, DegreesTable) {
  auto r = lab({"degrees", "--input", kData + "/elliptic2.json"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("lambda = (1, 4)"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("chi    = (1, 2, 4)"), std::string::npos) << r.out;
}

TEST(Cli, DegreesCounterModelFails) {
  auto r = lab({"degrees", "--input", kData + "/counter_d.json"});
  EXPECT_EQ(r.code, 1);
}

TEST(Cli, Eq1ScanExitCodes) {
  auto bad = lab({"eq1-scan", "--input", kData + "/counter_d.json", "--format", "json"});
  EXPECT_EQ(bad.code, 1);
  auto j = ddc::Json::parse(bad.out);
  ASSERT_FALSE(j["violations"].empty());
  EXPECT_EQ(j["violations"][0]["k"], 2);
  auto good = lab({"eq1-scan", "--input", kData + "/elliptic2.json"});
  EXPECT_EQ(good.code, 0);
  EXPECT_NE(good.out.find("no violation"), std::string::npos);
}

TEST(Cli, ReportsAreDeterministicAndVersioned) {
  auto a = lab({"verify", "norms", "--seed", "4", "--count", "200", "--format", "json"});
  auto b = lab({"verify", "norms", "--seed", "4", "--count", "200", "--format", "json"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  auto j = ddc::Json::parse(a.out);
  EXPECT_EQ(j["tool"], "lab");
  EXPECT_EQ(j["version"], ddc::cli::version());
  EXPECT_EQ(j["seed"], 4);
}

TEST(Cli, OutputFile) {
  const std::string path = temp_path("report.json");
  std::remove(path.c_str());
  auto r = lab({"envelope", "--input", kData + "/seq.json", "--format", "json", "--output", path});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  auto j = ddc::Json::parse(ddc::read_text_file(path));
  EXPECT_EQ(j["command"], "envelope");
}

TEST(Cli, InvalidInputsExitTwo) {
  const std::string path = temp_path("bad.json");
  std::ofstream(path) << "{\n  \"a\": [\"1\", 2.5]\n}\n";
  auto r = lab({"prop1", "--input", path});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("line 2, field /a/1"), std::string::npos) << r.err;

  EXPECT_EQ(lab({"prop1", "--input", temp_path("does_not_exist.json")}).code, 2);
  EXPECT_EQ(lab({"frobnicate"}).code, 2);
  EXPECT_EQ(lab({"degrees", "--format", "xml", "--input", kData + "/elliptic2.json"}).code, 2);
  EXPECT_EQ(lab({"construct", "abelian", "--g", "1", "--q", "3", "--weil", "1,-3,2"}).code, 2);
  EXPECT_EQ(lab({"construct", "blowup", "--input", "projective:2:2", "--center", "projective:1:2"}).code, 2);
  EXPECT_EQ(lab({}).code, 2);
}

TEST(Cli, HelpAndVersion) {
  auto h = lab({"--help"});
  EXPECT_EQ(h.code, 0);
  EXPECT_NE(h.out.find("eq1-scan"), std::string::npos);
  auto v = lab({"--version"});
  EXPECT_EQ(v.code, 0);
  EXPECT_NE(v.out.find(ddc::cli::version()), std::string::npos);
}

TEST(Cli, Kronecker) {
  auto r = lab({"kronecker", "--theta", "1.618033988749895", "--eps", "0.1", "--format", "json"});
  EXPECT_EQ(r.code, 0);
  auto j = ddc::Json::parse(r.out);
  EXPECT_EQ(j["result"]["s"], -5);
  EXPECT_EQ(j["result"]["t"], 8);
}

TEST(Cli, JordanCertificate) {
  auto r = lab({"jordan", "--input", kData + "/jordan_pair.json", "--format", "json"});
  EXPECT_EQ(r.code, 0);
  auto j = ddc::Json::parse(r.out);
  EXPECT_EQ(j["first"]["block"], 2);
  EXPECT_EQ(j["second"]["block"], 1);
  EXPECT_FALSE(j["exceeds_at_step"].is_null());
}

TEST(Cli, Claim1) {
  auto r = lab({"claim1", "--input", kData + "/elliptic2.json", "--tmax", "8"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("empirical C"), std::string::npos);
}

TEST(Cli, ConstructAndReload) {
  const std::string path = temp_path("hilb2.json");
  auto r = lab({"construct", "hilb2", "--input", "projective:2:2", "--save", path});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("dims = (1, 0, 2, 0, 3, 0, 2, 0, 1)"), std::string::npos) << r.out;
  auto again = lab({"construct", "product", "--input", path, "--with", "projective:0:2", "--format", "json"});
  EXPECT_EQ(again.code, 0);
  auto j = ddc::Json::parse(again.out);
  EXPECT_EQ(j["dims"], ddc::Json::parse("[1, 0, 2, 0, 3, 0, 2, 0, 1]"));

  auto blow = lab({"construct", "blowup", "--input", "projective:2:2", "--center", "projective:0:2", "--codim", "2"});
  EXPECT_NE(blow.out.find("dims = (1, 0, 2, 0, 1)"), std::string::npos) << blow.out;
  auto ab = lab({"construct", "abelian", "--g", "1", "--q", "5", "--weil", "1,-2,5", "--endo", "0,1"});
  EXPECT_EQ(ab.code, 0);
  auto rnd = lab({"construct", "random", "--n", "1", "--dims", "1,2,1", "--base", "4", "--seed", "7", "--format", "json"});
  auto rnd2 = lab({"construct", "random", "--n", "1", "--dims", "1,2,1", "--base", "4", "--seed", "7", "--format", "json"});
  EXPECT_EQ(rnd.code, 0);
  EXPECT_EQ(rnd.out, rnd2.out);
}

TEST(Cli, VerifySuites) {
  for (const char* suite : {"lieberman", "norms", "yamamoto", "prop1-suite", "ddc-suite"}) {
    auto r = lab({"verify", suite, "--seed", "2", "--count", "10"});
    EXPECT_EQ(r.code, 0) << suite << "\n" << r.out;
  }
}
