// Copyright 2026 The qcerase Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

namespace qcerase::cli {
namespace {

using nlohmann::json;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

json invoke_json(const std::vector<std::string>& args) {
  const Result r = invoke(args);
  EXPECT_EQ(r.code, kExitOk) << r.err;
  return json::parse(r.out);
}

TEST(Cli, DecomposeDegenerate) {
  const json j = invoke_json({"decompose", "--r", "0.5", "--p", "0.7071", "--theta", "0"});
  EXPECT_EQ(j["command"], "decompose");
  EXPECT_EQ(j["schema_version"], 1);
  EXPECT_EQ(j["result"]["w"].get<double>(), 0.5);
  EXPECT_TRUE(j["result"]["orthogonal"].get<bool>());
  EXPECT_EQ(j["inputs"]["r"].get<double>(), 0.5);
  EXPECT_EQ(j["inputs"]["p"].get<double>(), 0.7071);
  EXPECT_EQ(j["inputs"]["theta"].get<double>(), 0.0);
  EXPECT_TRUE(j.contains("tolerances"));
}

TEST(Cli, DecomposeByWeight) {
  const json j = invoke_json({"decompose", "--r", "0.3", "--w", "0.5"});
  EXPECT_NEAR(j["result"]["range_state"]["p"].get<double>(), 0.54772255750516611, 1e-15);
  EXPECT_EQ(j["inputs"]["w"].get<double>(), 0.5);
}

TEST(Cli, DecompositionForZeroQ) {
  const json j = invoke_json({"decomposition-for", "--r", "0.3", "--q", "0", "--lambda", "0"});
  EXPECT_EQ(j["result"]["p"].get<double>(), 0.0);
  EXPECT_NEAR(j["result"]["w"].get<double>(), 0.7, 1e-15);
}

TEST(Cli, MeasurementForInDegrees) {
  const json j = invoke_json({"measurement-for", "--r", "0.3", "--p", "0.6", "--theta-deg", "45"});
  EXPECT_NEAR(j["result"]["q"].get<double>(), 0.75337080350088400, 1e-14);
  EXPECT_NEAR(j["result"]["lambda"].get<double>(), 7 * std::numbers::pi / 4, 1e-14);
  EXPECT_NEAR(j["inputs"]["theta"].get<double>(), std::numbers::pi / 4, 1e-15);
}

TEST(Cli, Counter) {
  const json j = invoke_json({"counter", "--r", "0.3", "--p", "1"});
  EXPECT_EQ(j["result"]["counter_range_state"]["p"].get<double>(), 0.0);
}

TEST(Cli, PurifyAndMeasure) {
  const json p = invoke_json({"purify", "--r", "0.3"});
  EXPECT_EQ(p["result"]["composite"].size(), 4u);
  const json m = invoke_json({"measure", "--r", "0.5", "--q", "0.7071067811865476", "--branch", "mu1"});
  ASSERT_EQ(m["result"]["outcomes"].size(), 1u);
  EXPECT_NEAR(m["result"]["outcomes"][0]["probability"].get<double>(), 0.5, 1e-12);
}

TEST(Cli, DistantCheck) {
  const json a = invoke_json({"distant-check", "--r", "0.3", "--q", "0.5"});
  EXPECT_FALSE(a["result"]["distant"].get<bool>());
  const json b = invoke_json({"distant-check", "--r", "0.3", "--q", "1"});
  EXPECT_TRUE(b["result"]["distant"].get<bool>());
}

TEST(Cli, VerifyPasses) {
  const json j = invoke_json({"verify", "--grid-steps", "10"});
  EXPECT_TRUE(j["result"]["passed"].get<bool>());
  EXPECT_LE(j["result"]["max_reconstruction_residual"].get<double>(), 1e-12);
  EXPECT_LE(j["result"]["max_roundtrip_residual"].get<double>(), 1e-12);
}

TEST(Cli, PatternCsvSchema) {
  const Result r = invoke({"pattern", "--format", "csv", "--n", "64"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line.rfind("# qcerase pattern v1;", 0), 0u);
  std::getline(in, line);
  EXPECT_EQ(line, "x,p_i,p_i_c,p_mix");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 64);
}

TEST(Cli, SimulateCsvSchema) {
  const Result r = invoke({"simulate", "--r", "0.5", "--q", "0.7", "--photons", "500", "--screen",
                           "--bins", "16", "--format", "csv"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out.rfind("# qcerase histogram v1;", 0), 0u);
  EXPECT_NE(r.out.find("\nbin,x_lo,x_hi,mu1,mu2\n"), std::string::npos);
}

TEST(Cli, SimulateIsByteIdenticalAndThreadIndependent) {
  const std::vector<std::string> args{"simulate", "--r", "0.3", "--q", "0.753371",
                                      "--lambda-deg", "315", "--photons", "20000", "--seed", "42",
                                      "--screen"};
  const Result a = invoke(args);
  const Result b = invoke(args);
  ASSERT_EQ(a.code, kExitOk) << a.err;
  EXPECT_EQ(a.out, b.out);
  auto threaded = args;
  threaded.insert(threaded.end(), {"--threads", "3"});
  const json ja = json::parse(a.out);
  const json jt = json::parse(invoke(threaded).out);
  EXPECT_EQ(ja["branches"], jt["branches"]);
  EXPECT_EQ(ja["histograms"], jt["histograms"]);
  EXPECT_TRUE(ja.contains("chi_squared"));
}

TEST(Cli, OutFile) {
  const auto path = std::filesystem::temp_directory_path() / "qcerase_cli_test_out.json";
  const Result r = invoke({"purify", "--r", "0.3", "--out", path.string()});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  const json j = json::parse(in);
  EXPECT_EQ(j["command"], "purify");
  std::filesystem::remove(path);
}

TEST(Cli, DomainErrorsExitOneAndNameTheBound) {
  const Result a = invoke({"decompose", "--r", "0.7", "--p", "0.5"});
  EXPECT_EQ(a.code, kExitDomain);
  EXPECT_NE(a.err.find("(0, 1/2]"), std::string::npos) << a.err;
  const Result b = invoke({"decompose", "--r", "0.3", "--p", "1.2"});
  EXPECT_EQ(b.code, kExitDomain);
  EXPECT_NE(b.err.find("[0, 1]"), std::string::npos) << b.err;
  const Result c = invoke({"decompose", "--r", "0.5", "--w", "0.5"});
  EXPECT_EQ(c.code, kExitDomain);
  const Result d = invoke({"decompose", "--r", "0.3", "--w", "0.9"});
  EXPECT_EQ(d.code, kExitDomain);
  EXPECT_NE(d.err.find("[r, 1 - r]"), std::string::npos) << d.err;
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(invoke({}).code, kExitUsage);
  const Result unknown = invoke({"bogus"});
  EXPECT_EQ(unknown.code, kExitUsage);
  EXPECT_NE(unknown.err.find("unknown command"), std::string::npos);
  EXPECT_EQ(invoke({"decompose", "--r", "0.3"}).code, kExitUsage);
  EXPECT_EQ(invoke({"decompose", "--r", "0.3", "--p", "0.5", "--w", "0.5"}).code, kExitUsage);
  EXPECT_EQ(invoke({"decompose", "--p", "0.5"}).code, kExitUsage);
  EXPECT_EQ(invoke({"decompose", "--r", "abc", "--p", "0.5"}).code, kExitUsage);
  EXPECT_EQ(invoke({"measurement-for", "--r", "0.3", "--p", "0.5", "--theta", "1",
                    "--theta-deg", "45"})
                .code,
            kExitUsage);
  EXPECT_EQ(invoke({"purify", "--r", "0.3", "--format", "csv"}).code, kExitUsage);
  EXPECT_EQ(invoke({"simulate", "--r", "0.3", "--q", "1", "--format", "csv"}).code, kExitUsage);
  EXPECT_EQ(invoke({"pattern", "--q", "0.5"}).code, kExitUsage);
  EXPECT_EQ(invoke({"purify", "--r", "0.3", "--nope"}).code, kExitUsage);
}

TEST(Cli, HelpExitsZero) {
  const Result r = invoke({"--help"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("simulate"), std::string::npos);
}

}  // namespace
}  // namespace qcerase::cli
