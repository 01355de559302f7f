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

#include "graphext/io.h"

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "graphext/error.h"
#include "gtest/gtest.h"

namespace graphext {
namespace {

using json = nlohmann::json;

ImportanceReport SampleReport() {
  ImportanceReport r;
  r.task = TaskKind::kNode;
  r.explained_class = 2;
  r.node_ids = {0, 3, 4, 9};
  r.shapley = {0.0, 0.41, -0.125, 0.41};
  r.std_errors = {0.0, 0.02, 0.01, 0.1 / 3};
  r.pinned = {0};
  r.num_samples = 100;
  r.seed = 7;
  r.scale = ScoreScale::kProb;
  return r;
}

TEST(ReportJsonTest, NodesSortedByDescendingShapley) {
  const json j = json::parse(ReportToJson(SampleReport()));
  EXPECT_EQ(j["task"], "node");
  EXPECT_EQ(j["explained_class"], 2);
  std::vector<int> ids;
  for (const json& node : j["nodes"]) ids.push_back(node["id"]);
  EXPECT_EQ(ids, (std::vector<int>{3, 9, 0, 4}));
  EXPECT_EQ(j["pinned"], json::array({0}));
  EXPECT_EQ(j["config"]["samples"], 100);
  EXPECT_EQ(j["config"]["seed"], 7);
  EXPECT_EQ(j["config"]["scale"], "prob");
}

TEST(ReportJsonTest, RoundTripIsExact) {
  const ImportanceReport r = SampleReport();
  const ImportanceReport back = ReportFromJson(ReportToJson(r));
  EXPECT_EQ(back.task, r.task);
  EXPECT_EQ(back.explained_class, r.explained_class);
  EXPECT_EQ(back.node_ids, r.node_ids);
  EXPECT_EQ(back.shapley, r.shapley);
  EXPECT_EQ(back.std_errors, r.std_errors);
  EXPECT_EQ(back.pinned, r.pinned);
  EXPECT_EQ(back.num_samples, r.num_samples);
  EXPECT_EQ(back.seed, r.seed);
  EXPECT_EQ(ReportToJson(back), ReportToJson(r));
}

TEST(ReportJsonTest, RejectsPinnedOutsideNodes) {
  EXPECT_THROW(
      ReportFromJson(R"({"task":"graph","explained_class":0,"nodes":[],"pinned":[1],)"
                     R"("config":{"samples":1,"seed":0,"scale":"prob"}})"),
      ParseError);
}

TEST(NamesTest, TaskAndScale) {
  for (TaskKind k : {TaskKind::kGraph, TaskKind::kNode, TaskKind::kLink}) {
    EXPECT_EQ(ParseTaskKind(TaskKindName(k)), k);
  }
  EXPECT_EQ(ParseScale("logit"), ScoreScale::kLogit);
  EXPECT_EQ(ScaleName(ScoreScale::kProb), "prob");
  EXPECT_THROW(ParseTaskKind("edge"), ParseError);
  EXPECT_THROW(ParseScale("log"), ParseError);
}

TEST(ArchJsonTest, ParsesAndValidates) {
  const ArchSpec arch = ArchFromJson(
      R"({"kind":"gin","layer_dims":[10,16,16,8],"head_dims":[8,4,2],"epsilon":0.1})");
  EXPECT_EQ(arch.kind, LayerKind::kGin);
  EXPECT_EQ(arch.num_classes, 2);
  EXPECT_EQ(arch.epsilon, 0.1);
  EXPECT_EQ(ArchFromJson(ArchToJson(arch)).layer_dims, arch.layer_dims);
  EXPECT_THROW(ArchFromJson(R"({"kind":"gin","layer_dims":[10,16],"head_dims":[8,2]})"),
               ModelShapeError);
  EXPECT_THROW(ArchFromJson(R"({"kind":"gat","layer_dims":[1,2],"head_dims":[2,2]})"),
               ParseError);
}

TEST(TextFileTest, IoErrors) {
  EXPECT_THROW(ReadTextFile("/nonexistent/graphext/file.json"), IoError);
  EXPECT_THROW(WriteTextFile("/nonexistent/graphext/file.json", "x"), IoError);
}

}  // namespace
}  // namespace graphext
