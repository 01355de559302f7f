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

#ifndef GRAPHEXT_TOOLS_COMMANDS_H_
#define GRAPHEXT_TOOLS_COMMANDS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace graphext::cli {

// Files read and written by a command, recorded in the run manifest.
struct RunFiles {
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
};

struct GenDatasetOptions {
  std::string kind;  // "ba-2motifs" or "ba-shapes"
  uint64_t seed = 0;
  int count = 1000;  // ba-2motifs only
  std::string out_dir;
};

struct GenModelOptions {
  std::string arch_path;
  uint64_t seed = 0;
  std::string out_path;
};

struct ExplainOptions {
  std::string model_path;
  std::string graph_path;    // one Graph JSON, or
  std::string dataset_path;  // a JSON-lines file explained graph by graph
  std::string task = "graph";
  std::optional<int> target;
  std::vector<int> pair;
  std::optional<int> hops;  // defaults to the number of model layers
  int samples = 100;
  uint64_t seed = 0;
  int workers = 1;
  std::string scale = "prob";
  std::string out;  // report file, or directory when --dataset is used
};

struct EvaluateOptions {
  std::string model_path;
  std::string dataset_path;
  std::string reports_dir;  // empty: explain each graph first
  std::vector<double> levels = {0.5, 0.6, 0.7, 0.8, 0.9};
  int samples = 100;
  uint64_t seed = 0;
  int workers = 1;
  std::string out_path;
};

struct OracleOptions {
  std::optional<int> n;
  std::string fixture_path;
  std::string builtin;  // "additive" or "externality"
  std::string out_path;
};

// File name of the report for graph `index` inside a reports directory.
std::string ReportFileName(int index);

void RunGenDataset(const GenDatasetOptions& options, RunFiles& files);
void RunGenModel(const GenModelOptions& options, RunFiles& files);
void RunExplain(const ExplainOptions& options, RunFiles& files);
void RunEvaluate(const EvaluateOptions& options, RunFiles& files);
// Returns the largest componentwise gap between the two computations.
double RunOracle(const OracleOptions& options, RunFiles& files);

nlohmann::ordered_json Describe(const GenDatasetOptions& options);
nlohmann::ordered_json Describe(const GenModelOptions& options);
nlohmann::ordered_json Describe(const ExplainOptions& options);
nlohmann::ordered_json Describe(const EvaluateOptions& options);
nlohmann::ordered_json Describe(const OracleOptions& options);

}  // namespace graphext::cli

#endif  // GRAPHEXT_TOOLS_COMMANDS_H_
