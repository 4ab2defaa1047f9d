// Copyright 2026 The relqi Authors
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

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

struct Result {
  int rc;
  std::string out, err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("relqi_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

class RemoveScratch : public ::testing::Environment {
 public:
  void TearDown() override { fs::remove_all(scratch()); }
};
const auto* const kRemoveScratch = ::testing::AddGlobalTestEnvironment(new RemoveScratch);

Result run(const std::string& args) {
  const fs::path o = scratch() / "stdout", e = scratch() / "stderr";
  const std::string cmd = std::string("'") + RELQI_CLI + "' " + args + " >'" + o.string() + "' 2>'" + e.string() + "'";
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(o), slurp(e)};
}

json diagnostic(const Result& r) { return json::parse(r.err).at("error"); }

TEST(Cli, ListAndVersion) {
  const Result l = run("--list");
  EXPECT_EQ(l.rc, 0);
  EXPECT_NE(l.out.find("superscatter-demo\n"), std::string::npos);
  EXPECT_EQ(run("--version").rc, 0);
}

TEST(Cli, UsageErrorsExitTwo) {
  for (const char* args : {"", "--scenario nope", "--scenario rindler --bogus", "--scenario rindler --set bogus=1",
                           "--scenario rindler --set novalue", "--scenario rindler --format xml",
                           "--scenario rindler --seed -3", "--scenario rindler --tol.unused=1",
                           "--scenario rindler --config /nonexistent.cfg", "--scenario chsh --grid.points 5"}) {
    const Result r = run(args);
    EXPECT_EQ(r.rc, 2) << args;
    if (r.rc == 2 && !r.err.empty() && r.err[0] == '{') EXPECT_EQ(diagnostic(r).at("exit_code"), 2) << args;
  }
}

TEST(Cli, ValidationErrorsExitThree) {
  for (const char* args : {"--scenario unruh --set constants.c=0", "--selfcheck --set constants.c=0",
                           "--scenario unruh --set accelerations=-1", "--scenario blackhole-evaporate --set M0_kg=0",
                           "--scenario fig2-entropy --set gammas=0.7"}) {
    const Result r = run(args);
    ASSERT_EQ(r.rc, 3) << args;
    const json d = diagnostic(r);
    EXPECT_EQ(d.at("class"), "validation") << args;
    EXPECT_FALSE(d.at("message").get<std::string>().empty());
  }
  std::ofstream(scratch() / "bad.csv") << "# format=relqi-csv/1\n# scenario=rindler\nomega_over_a,mean_n\n1,2\n";
  EXPECT_EQ(run("--validate '" + (scratch() / "bad.csv").string() + "'").rc, 3);
}

TEST(Cli, TightenedToleranceIsToleranceClassExitFour) {
  const fs::path out = scratch() / "sc.json";
  const Result r =
      run("--selfcheck --set criteria=12 --tol.doppler_ratio=2e-4 --out '" + out.string() + "'");
  EXPECT_EQ(r.rc, 4);
  const json doc = json::parse(slurp(out));
  EXPECT_FALSE(doc.at("all_passed").get<bool>());
  ASSERT_EQ(doc.at("criteria").size(), 1u);
  EXPECT_EQ(doc["criteria"][0]["failure_class"], "tolerance");
  EXPECT_EQ(run("--validate '" + out.string() + "'").rc, 0);
}

TEST(Cli, EveryScenarioRoundTripsAndIsDeterministic) {
  const std::string list = run("--list").out;
  std::istringstream ids(list);
  std::string id;
  int n = 0;
  while (std::getline(ids, id)) {
    if (id.empty()) continue;
    ++n;
    std::string extra;
    if (id == "bipartite-concurrence") extra = " --grid.points=7 --set rapidities=0,1";
    if (id == "fig2-entropy") extra = " --grid.points=7";
    for (const char* fmt : {"csv", "json"}) {
      const fs::path a = scratch() / (id + "_a." + fmt), b = scratch() / (id + "_b." + fmt);
      const std::string base = "--scenario " + id + extra + " --seed 11 --format " + fmt + " --out ";
      ASSERT_EQ(run(base + "'" + a.string() + "'").rc, 0) << id;
      ASSERT_EQ(run(base + "'" + b.string() + "'").rc, 0) << id;
      EXPECT_EQ(slurp(a), slurp(b)) << id << " " << fmt;
      EXPECT_EQ(run("--validate '" + a.string() + "'").rc, 0) << id << " " << fmt;
    }
  }
  EXPECT_EQ(n, 13);
}

TEST(Cli, ConfigFileThenFlags) {
  const fs::path cfg = scratch() / "run.cfg";
  std::ofstream(cfg) << "# cluster bound\nscenario = cluster-bound\nseed = 5\nmass = 2\nseparations = 1\nformat = json\n";
  Result r = run("--config '" + cfg.string() + "'");
  ASSERT_EQ(r.rc, 0) << r.err;
  json doc = json::parse(r.out);
  EXPECT_EQ(doc["meta"]["seed"], 5);
  EXPECT_NEAR(doc["rows"][0]["bound"].get<double>(), 1 + 4 * std::exp(-2.0), 1e-14);
  r = run("--config '" + cfg.string() + "' --seed 6 --set mass=1");
  ASSERT_EQ(r.rc, 0);
  doc = json::parse(r.out);
  EXPECT_EQ(doc["meta"]["seed"], 6);
  EXPECT_NEAR(doc["rows"][0]["bound"].get<double>(), 1 + 4 * std::exp(-1.0), 1e-14);
}

TEST(Cli, DocumentedOutputs) {
  json bh = json::parse(run("--scenario blackhole-evaporate").out);
  const double m0 = bh.at("M0_kg").get<double>();
  EXPECT_NEAR(bh["samples"][7]["M"].get<double>() / (m0 / 2), 1.0, 1e-9);

  json cb = json::parse(run("--scenario causality-bell --set haar_draws=5 --set random_probes=2").out);
  EXPECT_NEAR(cb.at("incomplete_bell_advantage").get<double>(), 0.75, 1e-12);

  const std::string fig2 = run("--scenario fig2-entropy --grid.points=7 --set gammas=0 --set theta_steps=3").out;
  std::istringstream lines(fig2);
  std::string line;
  int data = 0;
  while (std::getline(lines, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("theta_rad", 0) == 0) continue;
    ++data;
    EXPECT_EQ(line.substr(line.rfind(',') + 1), "0") << line;
  }
  EXPECT_EQ(data, 3);
}

TEST(Cli, SelfcheckPasses) {
  const Result r = run("--selfcheck");
  EXPECT_EQ(r.rc, 0) << r.out;
  const json doc = json::parse(r.out);
  EXPECT_TRUE(doc.at("all_passed").get<bool>());
  EXPECT_EQ(doc.at("total"), 16);
}

}  // namespace
