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

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <functional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include "commands.h"
#include "graphext/error.h"
#include "graphext/sampler.h"

namespace graphext::cli {
namespace {

using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;
constexpr int kExitCapacity = 3;

void SetUpLogging() {
  auto logger = spdlog::stderr_logger_mt("graphext");
  logger->set_pattern("[%l] %v");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  const char* env = std::getenv("GRAPHEXT_LOG");
  if (env == nullptr || *env == '\0') return;
  const std::string name = env;
  const spdlog::level::level_enum level = spdlog::level::from_str(name);
  if (level == spdlog::level::off && name != "off") {
    spdlog::warn("ignoring unknown GRAPHEXT_LOG level '{}'", name);
    return;
  }
  spdlog::set_level(level);
}

struct Invocation {
  std::string command;
  json parameters;
  std::string manifest_path;  // empty: no manifest
  std::function<int(RunFiles&)> run;
};

void WriteManifest(const Invocation& inv, const json& argv, const RunFiles& files,
                   int exit_code, const std::string& error, double seconds) {
  json m;
  m["tool"] = "graphext";
  m["version"] = GRAPHEXT_VERSION;
  m["command"] = inv.command;
  m["argv"] = argv;
  m["parameters"] = inv.parameters;
  m["inputs"] = files.inputs;
  m["outputs"] = files.outputs;
  m["status"] = exit_code == kExitOk ? "ok" : "failed";
  m["exit_code"] = exit_code;
  if (!error.empty()) m["error"] = error;
  m["duration_seconds"] = seconds;
  std::FILE* f = std::fopen(inv.manifest_path.c_str(), "w");
  if (f == nullptr) {
    spdlog::error("cannot write manifest {}", inv.manifest_path);
    return;
  }
  const std::string text = m.dump(2) + "\n";
  std::fwrite(text.data(), 1, text.size(), f);
  std::fclose(f);
}

int Execute(const Invocation& inv, const json& argv) {
  const auto start = std::chrono::steady_clock::now();
  RunFiles files;
  int code = kExitOk;
  std::string error;
  try {
    code = inv.run(files);
  } catch (const CapacityError& e) {
    code = kExitCapacity;
    error = e.what();
  } catch (const IoError& e) {
    code = kExitIo;
    error = e.what();
  } catch (const std::exception& e) {
    code = kExitValidation;
    error = e.what();
  }
  if (!error.empty()) std::fprintf(stderr, "graphext %s: error: %s\n", inv.command.c_str(), error.c_str());
  if (!inv.manifest_path.empty()) {
    const double seconds = std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - start)
                               .count();
    WriteManifest(inv, argv, files, code, error, seconds);
  }
  return code;
}

std::string Sidecar(const std::string& path) {
  return path.empty() ? std::string() : path + ".manifest.json";
}

}  // namespace

int Main(int argc, char** argv) {
  SetUpLogging();
  CLI::App app{"Shapley-value node importance for graph neural networks"};
  app.set_version_flag("--version", GRAPHEXT_VERSION);
  app.require_subcommand(1);

  Invocation inv;

  GenDatasetOptions gen_dataset;
  auto* gd = app.add_subcommand("gen-dataset", "Generate a synthetic dataset");
  gd->add_option("--kind", gen_dataset.kind, "ba-2motifs or ba-shapes")
      ->required()
      ->check(CLI::IsMember({"ba-2motifs", "ba-shapes"}));
  gd->add_option("--seed", gen_dataset.seed, "Generator seed");
  gd->add_option("--count", gen_dataset.count, "Number of graphs (ba-2motifs)")
      ->check(CLI::PositiveNumber);
  gd->add_option("--out", gen_dataset.out_dir, "Output directory")->required();
  gd->callback([&] {
    inv = {"gen-dataset", Describe(gen_dataset),
           (std::filesystem::path(gen_dataset.out_dir) / "manifest.json").string(),
           [&](RunFiles& files) {
             RunGenDataset(gen_dataset, files);
             return kExitOk;
           }};
  });

  GenModelOptions gen_model;
  auto* gm = app.add_subcommand("gen-model", "Initialize a model from an architecture file");
  gm->add_option("--arch", gen_model.arch_path, "Architecture JSON")->required();
  gm->add_option("--seed", gen_model.seed, "Initialization seed");
  gm->add_option("--out", gen_model.out_path, "Model JSON to write")->required();
  gm->callback([&] {
    inv = {"gen-model", Describe(gen_model), Sidecar(gen_model.out_path),
           [&](RunFiles& files) {
             RunGenModel(gen_model, files);
             return kExitOk;
           }};
  });

  ExplainOptions explain;
  auto* ex = app.add_subcommand("explain", "Estimate node importance for one prediction");
  ex->add_option("--model", explain.model_path, "Model JSON")->required();
  ex->add_option("--graph", explain.graph_path, "Graph JSON");
  ex->add_option("--dataset", explain.dataset_path, "JSON-lines dataset");
  ex->add_option("--task", explain.task, "graph, node or link")
      ->check(CLI::IsMember({"graph", "node", "link"}));
  ex->add_option("--target", explain.target, "Target node (node task)");
  ex->add_option("--pair", explain.pair, "Endpoints u,v (link task)")->delimiter(',');
  ex->add_option("--hops", explain.hops, "Neighbourhood radius (node/link tasks)");
  ex->add_option("--samples", explain.samples, "Monte Carlo samples")
      ->capture_default_str();
  ex->add_option("--seed", explain.seed, "Sampling seed");
  ex->add_option("--workers", explain.workers, "Worker threads");
  ex->add_option("--scale", explain.scale, "prob or logit (graph task)")
      ->check(CLI::IsMember({"prob", "logit"}));
  ex->add_option("--out", explain.out, "Report file, or directory with --dataset");
  ex->callback([&] {
    const std::string manifest =
        explain.out.empty() ? std::string()
        : explain.dataset_path.empty()
            ? Sidecar(explain.out)
            : (std::filesystem::path(explain.out) / "manifest.json").string();
    inv = {"explain", Describe(explain), manifest, [&](RunFiles& files) {
             RunExplain(explain, files);
             return kExitOk;
           }};
  });

  EvaluateOptions evaluate;
  auto* ev = app.add_subcommand("evaluate", "Fidelity/sparsity sweep over a dataset");
  ev->add_option("--model", evaluate.model_path, "Model JSON")->required();
  ev->add_option("--dataset", evaluate.dataset_path, "JSON-lines dataset")->required();
  ev->add_option("--reports", evaluate.reports_dir,
                 "Directory of graph reports written by explain --dataset");
  ev->add_option("--levels", evaluate.levels, "Target sparsity levels")
      ->delimiter(',')
      ->capture_default_str();
  ev->add_option("--samples", evaluate.samples, "Samples when no --reports");
  ev->add_option("--seed", evaluate.seed, "Seed when no --reports");
  ev->add_option("--workers", evaluate.workers, "Worker threads");
  ev->add_option("--out", evaluate.out_path, "CSV file to write");
  ev->callback([&] {
    inv = {"evaluate", Describe(evaluate), Sidecar(evaluate.out_path),
           [&](RunFiles& files) {
             RunEvaluate(evaluate, files);
             return kExitOk;
           }};
  });

  OracleOptions oracle;
  auto* orc = app.add_subcommand(
      "oracle", "Compare exact Shapley values with the sampler's exact expectation");
  orc->add_option("--n", oracle.n, "Number of players");
  orc->add_option("--fixture", oracle.fixture_path, "TableOracle JSON fixture");
  orc->add_option("--builtin", oracle.builtin, "additive or externality")
      ->check(CLI::IsMember({"additive", "externality"}));
  orc->add_option("--out", oracle.out_path, "JSON result file");
  orc->callback([&] {
    inv = {"oracle", Describe(oracle), Sidecar(oracle.out_path),
           [&](RunFiles& files) {
             return RunOracle(oracle, files) <= 1e-9 ? kExitOk : kExitValidation;
           }};
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }
  json args = json::array();
  for (int i = 0; i < argc; ++i) args.push_back(argv[i]);
  return Execute(inv, args);
}

}  // namespace graphext::cli

int main(int argc, char** argv) { return graphext::cli::Main(argc, argv); }
