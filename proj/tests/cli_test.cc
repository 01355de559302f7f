// Copyright 2026 The graphext Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <nlohmann/json.hpp>

#include "graphext/gnn.h"
#include "graphext/io.h"
#include "gtest/gtest.h"

namespace graphext {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

struct RunResult {
  int exit_code = -1;
  std::string out;
};

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() /
           (std::string("graphext_cli_") + info->name() + "_" +
            std::to_string(::getpid()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Path(const std::string& name) const { return (dir_ / name).string(); }

  RunResult Run(const std::string& args) const {
    const std::string out_file = Path("stdout.txt");
    const std::string cmd = std::string(GRAPHEXT_BIN) + " " + args + " > " +
                            out_file + " 2>" + Path("stderr.txt");
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = Slurp(out_file);
    return r;
  }

  static std::string Slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  void Write(const std::string& name, const std::string& text) const {
    std::ofstream(Path(name), std::ios::binary) << text;
  }

  void MakeModel() {
    Write("arch.json", R"({"kind":"gin","layer_dims":[1,6,6],"head_dims":[6,2]})");
    ASSERT_EQ(Run("gen-model --arch " + Path("arch.json") + " --seed 5 --out " +
                  Path("model.json"))
                  .exit_code,
              0);
  }

  void MakeDataset(int count) {
    ASSERT_EQ(Run("gen-dataset --kind ba-2motifs --seed 9 --count " +
                  std::to_string(count) + " --out " + Path("ds"))
                  .exit_code,
              0);
  }

  fs::path dir_;
};

int CountLines(const std::string& text) {
  int n = 0;
  for (char c : text) n += c == '\n';
  return n;
}

TEST_F(CliTest, GenDatasetWritesRequestedCountDeterministically) {
  ASSERT_EQ(Run("gen-dataset --kind ba-2motifs --seed 3 --out " + Path("a")).exit_code, 0);
  ASSERT_EQ(Run("gen-dataset --kind ba-2motifs --seed 3 --out " + Path("b")).exit_code, 0);
  const std::string a = Slurp(Path("a/graphs.jsonl"));
  EXPECT_EQ(CountLines(a), 1000);
  EXPECT_EQ(a, Slurp(Path("b/graphs.jsonl")));
  const json manifest = json::parse(Slurp(Path("a/manifest.json")));
  EXPECT_EQ(manifest["status"], "ok");
  EXPECT_EQ(manifest["command"], "gen-dataset");
  EXPECT_EQ(manifest["parameters"]["seed"], 3);
}

TEST_F(CliTest, GenDatasetShapes) {
  ASSERT_EQ(Run("gen-dataset --kind ba-shapes --seed 1 --out " + Path("s")).exit_code, 0);
  const Graph g = GraphFromJson(Slurp(Path("s/graphs.jsonl")));
  EXPECT_EQ(g.num_nodes(), 700);
}

TEST_F(CliTest, GenDatasetRejectsUnknownKind) {
  EXPECT_NE(Run("gen-dataset --kind ring --seed 1 --out " + Path("x")).exit_code, 0);
}

TEST_F(CliTest, GenModelIsDeterministic) {
  MakeModel();
  ASSERT_EQ(Run("gen-model --arch " + Path("arch.json") + " --seed 5 --out " +
                Path("again.json"))
                .exit_code,
            0);
  const std::string text = Slurp(Path("model.json"));
  EXPECT_EQ(text, Slurp(Path("again.json")));
  const ModelSpec model = ModelFromJson(text);
  EXPECT_EQ(model.layers.size(), 2u);
  EXPECT_TRUE(fs::exists(Path("model.json.manifest.json")));
}

TEST_F(CliTest, GenModelRejectsInconsistentDims) {
  Write("bad.json", R"({"kind":"gin","layer_dims":[1,6,6],"head_dims":[4,2]})");
  EXPECT_EQ(Run("gen-model --arch " + Path("bad.json") + " --out " + Path("m.json")).exit_code,
            1);
  EXPECT_FALSE(fs::exists(Path("m.json")));
  const json manifest = json::parse(Slurp(Path("m.json.manifest.json")));
  EXPECT_EQ(manifest["status"], "failed");
  EXPECT_EQ(manifest["exit_code"], 1);
}

TEST_F(CliTest, ExplainSingleNodeGraphReturnsPrediction) {
  MakeModel();
  Write("g.json", R"({"num_nodes":1,"feature_dim":1,"features":[[1.0]],"edges":[]})");
  const RunResult r = Run("explain --model " + Path("model.json") + " --graph " +
                          Path("g.json") + " --seed 1");
  ASSERT_EQ(r.exit_code, 0);
  const ImportanceReport report = ReportFromJson(r.out);
  const ModelSpec model = ModelFromJson(Slurp(Path("model.json")));
  const Graph g = GraphFromJson(Slurp(Path("g.json")));
  const Prediction p = Forward(model, g);
  ASSERT_EQ(report.shapley.size(), 1u);
  EXPECT_EQ(report.explained_class, p.label);
  EXPECT_NEAR(report.shapley[0], p.probabilities(p.label), 1e-12);
}

TEST_F(CliTest, ExplainEchoesDefaultSampleCount) {
  MakeModel();
  MakeDataset(3);
  const std::string lines = Slurp(Path("ds/graphs.jsonl"));
  Write("g.json", lines.substr(0, lines.find('\n')));
  ASSERT_EQ(Run("explain --model " + Path("model.json") + " --graph " + Path("g.json") +
                " --seed 2 --out " + Path("r.json"))
                .exit_code,
            0);
  const json manifest = json::parse(Slurp(Path("r.json.manifest.json")));
  EXPECT_EQ(manifest["parameters"]["samples"], 100);
  EXPECT_EQ(ReportFromJson(Slurp(Path("r.json"))).num_samples, 100);
}

TEST_F(CliTest, ExplainIsIndependentOfWorkerCount) {
  MakeModel();
  MakeDataset(2);
  const std::string lines = Slurp(Path("ds/graphs.jsonl"));
  Write("g.json", lines.substr(0, lines.find('\n')));
  const std::string base = "explain --model " + Path("model.json") + " --graph " +
                           Path("g.json") + " --samples 200 --seed 4";
  ASSERT_EQ(Run(base + " --workers 1 --out " + Path("w1.json")).exit_code, 0);
  ASSERT_EQ(Run(base + " --workers 8 --out " + Path("w8.json")).exit_code, 0);
  EXPECT_EQ(Slurp(Path("w1.json")), Slurp(Path("w8.json")));
}

TEST_F(CliTest, ExplainNodeTask) {
  MakeModel();
  Write("g.json",
        R"({"num_nodes":4,"feature_dim":1,"features":[[1],[1],[1],[1]],"edges":[[0,1],[1,2],[2,3]]})");
  const RunResult r = Run("explain --model " + Path("model.json") + " --graph " +
                          Path("g.json") + " --task node --target 1 --samples 50");
  ASSERT_EQ(r.exit_code, 0);
  const ImportanceReport report = ReportFromJson(r.out);
  EXPECT_EQ(report.pinned, std::vector<NodeId>{1});
}

TEST_F(CliTest, ExplainMissingFileIsIoError) {
  MakeModel();
  EXPECT_EQ(Run("explain --model " + Path("model.json") + " --graph " + Path("none.json"))
                .exit_code,
            2);
}

TEST_F(CliTest, EvaluateSweepIsDeterministic) {
  MakeModel();
  MakeDataset(6);
  const std::string base = "evaluate --model " + Path("model.json") + " --dataset " +
                           Path("ds/graphs.jsonl") + " --samples 30 --seed 3";
  ASSERT_EQ(Run(base + " --out " + Path("a.csv")).exit_code, 0);
  ASSERT_EQ(Run(base + " --out " + Path("b.csv")).exit_code, 0);
  const std::string csv = Slurp(Path("a.csv"));
  EXPECT_EQ(CountLines(csv), 6);  // header + 5 levels
  EXPECT_EQ(csv, Slurp(Path("b.csv")));
}

TEST_F(CliTest, EvaluateKeepingEveryNodeHasZeroFidelityMinus) {
  MakeModel();
  MakeDataset(4);
  ASSERT_EQ(Run("evaluate --model " + Path("model.json") + " --dataset " +
                Path("ds/graphs.jsonl") + " --levels 0.01 --samples 10 --out " + Path("e.csv"))
                .exit_code,
            0);
  std::istringstream in(Slurp(Path("e.csv")));
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  std::istringstream fields(row);
  std::string sparsity, fid_plus, fid_minus;
  std::getline(fields, sparsity, ',');
  std::getline(fields, fid_plus, ',');
  std::getline(fields, fid_minus, ',');
  EXPECT_DOUBLE_EQ(std::stod(sparsity), 0.0);  // 0.01 of 25 nodes rounds to none dropped
  EXPECT_DOUBLE_EQ(std::stod(fid_minus), 0.0);
}

TEST_F(CliTest, EvaluateFromReportsDirectory) {
  MakeModel();
  MakeDataset(3);
  ASSERT_EQ(Run("explain --model " + Path("model.json") + " --dataset " +
                Path("ds/graphs.jsonl") + " --samples 20 --out " + Path("reports"))
                .exit_code,
            0);
  EXPECT_TRUE(fs::exists(Path("reports/report_00002.json")));
  ASSERT_EQ(Run("evaluate --model " + Path("model.json") + " --dataset " +
                Path("ds/graphs.jsonl") + " --reports " + Path("reports") + " --out " +
                Path("r.csv"))
                .exit_code,
            0);
  EXPECT_EQ(CountLines(Slurp(Path("r.csv"))), 6);
}

TEST_F(CliTest, OracleAdditiveSucceeds) {
  const RunResult r = Run("oracle --n 3 --builtin additive");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("max discrepancy:"), std::string::npos);
}

TEST_F(CliTest, OracleExternalityWithinTolerance) {
  ASSERT_EQ(Run("oracle --n 4 --builtin externality --out " + Path("o.json")).exit_code, 0);
  const json result = json::parse(Slurp(Path("o.json")));
  EXPECT_LE(result["max_discrepancy"].get<double>(), 1e-12);
}

TEST_F(CliTest, OracleBeyondEnumerationLimitIsCapacityError) {
  const RunResult r = Run("oracle --n 6 --builtin externality");
  EXPECT_EQ(r.exit_code, 3);
  EXPECT_NE(r.out.find("exact:"), std::string::npos);
}

TEST_F(CliTest, RerunFromManifestArgvReproducesCsv) {
  MakeModel();
  MakeDataset(4);
  ASSERT_EQ(Run("evaluate --model " + Path("model.json") + " --dataset " +
                Path("ds/graphs.jsonl") + " --samples 12 --seed 8 --out " + Path("a.csv"))
                .exit_code,
            0);
  const std::string first = Slurp(Path("a.csv"));
  const json manifest = json::parse(Slurp(Path("a.csv.manifest.json")));
  std::string args;
  for (size_t i = 1; i < manifest["argv"].size(); ++i) {
    args += manifest["argv"][i].get<std::string>() + " ";
  }
  fs::remove(Path("a.csv"));
  ASSERT_EQ(Run(args).exit_code, 0);
  EXPECT_EQ(Slurp(Path("a.csv")), first);
}

TEST_F(CliTest, MissingSubcommandFails) { EXPECT_EQ(Run("").exit_code, 1); }

}  // namespace
}  // namespace graphext
