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

#include "commands.h"

#include <algorithm>
#include <cstdio>
#include <cmath>
#include <filesystem>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <spdlog/spdlog.h>

#include "graphext/datasets.h"
#include "graphext/error.h"
#include "graphext/eval.h"
#include "graphext/explainer.h"
#include "graphext/game.h"
#include "graphext/gnn.h"
#include "graphext/io.h"
#include "graphext/sampler.h"

namespace graphext::cli {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

std::string JoinPath(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

void MakeDirectory(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw IoError("cannot create directory " + dir +
                  (ec ? ": " + ec.message() : std::string()));
  }
}

std::string ReadInput(const std::string& path, RunFiles& files) {
  files.inputs.push_back(path);
  return ReadTextFile(path);
}

void WriteOutput(const std::string& path, const std::string& contents,
                 RunFiles& files) {
  WriteTextFile(path, contents);
  files.outputs.push_back(path);
}

ModelSpec LoadModel(const std::string& path, RunFiles& files) {
  ModelSpec model = ModelFromJson(ReadInput(path, files));
  model.Validate();
  return model;
}

SampleConfig MakeConfig(int samples, uint64_t seed, int workers) {
  SampleConfig config;
  config.num_samples = samples;
  config.seed = seed;
  config.workers = workers;
  config.Validate();
  return config;
}

ImportanceReport ExplainOne(const ModelSpec& model, const Graph& g,
                            const ExplainOptions& options,
                            const SampleConfig& config) {
  const TaskKind kind = ParseTaskKind(options.task);
  const ScoreScale scale = ParseScale(options.scale);
  ExplanationTask task;
  task.kind = kind;
  task.target = options.target;
  if (!options.pair.empty()) {
    if (options.pair.size() != 2) {
      throw ValidationError("--pair takes exactly two node ids");
    }
    task.pair = std::pair(options.pair[0], options.pair[1]);
  }
  if (kind != TaskKind::kGraph) {
    task.hops = options.hops.value_or(static_cast<int>(model.layers.size()));
  } else if (options.hops) {
    throw ValidationError("--hops applies to node and link tasks only");
  }
  task.Validate(g.num_nodes());
  if (kind == TaskKind::kGraph) return ExplainGraph(model, g, config, scale);
  if (scale != ScoreScale::kProb) {
    throw ValidationError("--scale logit applies to graph tasks only");
  }
  return Explain(model, g, task, config);
}

void PrintVector(const char* label, const std::vector<double>& values) {
  std::printf("%s", label);
  for (double v : values) std::printf(" %.17g", v);
  std::printf("\n");
  std::fflush(stdout);
}

}  // namespace

std::string ReportFileName(int index) {
  char name[32];
  std::snprintf(name, sizeof(name), "report_%05d.json", index);
  return name;
}

void RunGenDataset(const GenDatasetOptions& options, RunFiles& files) {
  LabeledGraphSet set;
  if (options.kind == "ba-2motifs") {
    BaTwoMotifsOptions generator;
    generator.count = options.count;
    set = GenerateBaTwoMotifs(options.seed, generator);
  } else if (options.kind == "ba-shapes") {
    set = GenerateBaShapes(options.seed);
  } else {
    throw ValidationError("unknown dataset kind '" + options.kind + "'");
  }
  MakeDirectory(options.out_dir);
  const std::string graphs = JoinPath(options.out_dir, "graphs.jsonl");
  SaveGraphSet(set, graphs);
  files.outputs.push_back(graphs);
  WriteOutput(JoinPath(options.out_dir, "meta.json"), DatasetMetaJson(set) + "\n",
              files);
  spdlog::info("wrote {} graphs to {}", set.graphs.size(), graphs);
}

void RunGenModel(const GenModelOptions& options, RunFiles& files) {
  const ArchSpec arch = ArchFromJson(ReadInput(options.arch_path, files));
  const ModelSpec model = InitModel(arch, options.seed);
  WriteOutput(options.out_path, ModelToJson(model) + "\n", files);
  spdlog::info("wrote model with {} layers to {}", model.layers.size(),
               options.out_path);
}

void RunExplain(const ExplainOptions& options, RunFiles& files) {
  if (options.graph_path.empty() == options.dataset_path.empty()) {
    throw ValidationError("give exactly one of --graph and --dataset");
  }
  const ModelSpec model = LoadModel(options.model_path, files);
  const SampleConfig config =
      MakeConfig(options.samples, options.seed, options.workers);
  if (!options.graph_path.empty()) {
    const Graph g = GraphFromJson(ReadInput(options.graph_path, files));
    const std::string text = ReportToJson(ExplainOne(model, g, options, config));
    if (options.out.empty()) {
      std::printf("%s\n", text.c_str());
    } else {
      WriteOutput(options.out, text + "\n", files);
    }
    return;
  }
  if (options.out.empty()) {
    throw ValidationError("--dataset needs --out <directory>");
  }
  files.inputs.push_back(options.dataset_path);
  const LabeledGraphSet set = LoadGraphSet(options.dataset_path);
  MakeDirectory(options.out);
  for (size_t i = 0; i < set.graphs.size(); ++i) {
    spdlog::debug("explaining graph {} of {}", i + 1, set.graphs.size());
    const ImportanceReport report = ExplainOne(model, set.graphs[i], options, config);
    WriteOutput(JoinPath(options.out, ReportFileName(static_cast<int>(i))),
                ReportToJson(report) + "\n", files);
  }
  spdlog::info("wrote {} reports to {}", set.graphs.size(), options.out);
}

void RunEvaluate(const EvaluateOptions& options, RunFiles& files) {
  const ModelSpec model = LoadModel(options.model_path, files);
  files.inputs.push_back(options.dataset_path);
  const LabeledGraphSet set = LoadGraphSet(options.dataset_path);
  std::vector<FidelityPoint> points;
  if (options.reports_dir.empty()) {
    points = SparsitySweep(model, set.graphs,
                           MakeConfig(options.samples, options.seed, options.workers),
                           options.levels);
  } else {
    std::vector<ImportanceReport> reports;
    for (size_t i = 0; i < set.graphs.size(); ++i) {
      const std::string path =
          JoinPath(options.reports_dir, ReportFileName(static_cast<int>(i)));
      ImportanceReport report = ReportFromJson(ReadInput(path, files));
      if (report.task != TaskKind::kGraph ||
          static_cast<int>(report.node_ids.size()) != set.graphs[i].num_nodes()) {
        throw ValidationError(path + " is not a graph report for graph " +
                              std::to_string(i));
      }
      reports.push_back(std::move(report));
    }
    points = SparsitySweep(model, set.graphs, reports, options.levels);
  }
  const std::string csv = SweepToCsv(points);
  if (options.out_path.empty()) {
    std::printf("%s", csv.c_str());
  } else {
    WriteOutput(options.out_path, csv, files);
  }
}

double RunOracle(const OracleOptions& options, RunFiles& files) {
  if (options.fixture_path.empty() == options.builtin.empty()) {
    throw ValidationError("give exactly one of --fixture and --builtin");
  }
  std::unique_ptr<ValueOracle> oracle;
  int n = 0;
  if (!options.fixture_path.empty()) {
    auto table = std::make_unique<TableOracle>(
        TableOracleFromJson(ReadInput(options.fixture_path, files)));
    n = table->num_players();
    if (options.n && *options.n != n) {
      throw ValidationError("--n " + std::to_string(*options.n) +
                            " does not match the fixture's " +
                            std::to_string(n) + " players");
    }
    oracle = std::move(table);
  } else {
    if (!options.n) throw ValidationError("--builtin needs --n");
    n = *options.n;
    if (n < 1) throw ValidationError("--n must be >= 1");
    if (options.builtin == "additive") {
      oracle = std::make_unique<FunctionOracle>(
          [](const NodeSet& s, const CoalitionStructure&) {
            return static_cast<double>(s.size());
          });
    } else if (options.builtin == "externality") {
      oracle = std::make_unique<FunctionOracle>(
          [](const NodeSet& s, const CoalitionStructure& p) {
            return s.empty() ? 0.0 : s.size() + 0.1 * p.num_blocks();
          });
    } else {
      throw ValidationError("unknown builtin oracle '" + options.builtin + "'");
    }
  }
  json result;
  result["n"] = n;
  const std::vector<double> exact = ExactShapley(*oracle, n);
  PrintVector("exact:", exact);
  result["exact"] = exact;
  auto write_result = [&]() {
    if (!options.out_path.empty()) {
      WriteOutput(options.out_path, result.dump(2) + "\n", files);
    }
  };
  std::vector<double> expectation;
  try {
    expectation = EnumerateSamplerExpectation(*oracle, n);
  } catch (const CapacityError&) {
    write_result();
    throw;
  }
  PrintVector("expectation:", expectation);
  double gap = 0.0;
  for (int i = 0; i < n; ++i) gap = std::max(gap, std::abs(exact[i] - expectation[i]));
  std::printf("max discrepancy: %.3g\n", gap);
  result["expectation"] = expectation;
  result["max_discrepancy"] = gap;
  write_result();
  return gap;
}

json Describe(const GenDatasetOptions& options) {
  json j;
  j["kind"] = options.kind;
  j["seed"] = options.seed;
  j["count"] = options.count;
  j["out"] = options.out_dir;
  return j;
}

json Describe(const GenModelOptions& options) {
  json j;
  j["arch"] = options.arch_path;
  j["seed"] = options.seed;
  j["out"] = options.out_path;
  return j;
}

json Describe(const ExplainOptions& options) {
  json j;
  j["model"] = options.model_path;
  j["graph"] = options.graph_path;
  j["dataset"] = options.dataset_path;
  j["task"] = options.task;
  j["target"] = options.target ? json(*options.target) : json();
  j["pair"] = options.pair;
  j["hops"] = options.hops ? json(*options.hops) : json();
  j["samples"] = options.samples;
  j["seed"] = options.seed;
  j["workers"] = options.workers;
  j["scale"] = options.scale;
  j["out"] = options.out;
  return j;
}

json Describe(const EvaluateOptions& options) {
  json j;
  j["model"] = options.model_path;
  j["dataset"] = options.dataset_path;
  j["reports"] = options.reports_dir;
  j["levels"] = options.levels;
  j["samples"] = options.samples;
  j["seed"] = options.seed;
  j["workers"] = options.workers;
  j["out"] = options.out_path;
  return j;
}

json Describe(const OracleOptions& options) {
  json j;
  j["n"] = options.n ? json(*options.n) : json();
  j["fixture"] = options.fixture_path;
  j["builtin"] = options.builtin;
  j["out"] = options.out_path;
  return j;
}

}  // namespace graphext::cli
