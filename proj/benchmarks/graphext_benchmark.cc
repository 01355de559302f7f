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

#include <cstdint>
#include <numeric>
#include <vector>

#include <benchmark/benchmark.h>

#include "graphext/datasets.h"
#include "graphext/explainer.h"
#include "graphext/game.h"
#include "graphext/gnn.h"
#include "graphext/graph.h"
#include "graphext/rng.h"
#include "graphext/sampler.h"

namespace graphext {
namespace {

ModelSpec MakeModel(int layers, int width) {
  ArchSpec arch;
  arch.kind = LayerKind::kGin;
  arch.layer_dims.push_back(1);
  for (int i = 0; i < layers; ++i) arch.layer_dims.push_back(width);
  arch.head_dims = {width, width, 2};
  return InitModel(arch, 11);
}

NodeSet AllNodes(int n) {
  std::vector<NodeId> ids(n);
  std::iota(ids.begin(), ids.end(), 0);
  return NodeSet(ids);
}

void BM_Forward(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Graph g = GenerateBa(n, 2, 3);
  const ModelSpec model = MakeModel(3, 16);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Forward(model, g));
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_Forward)->RangeMultiplier(2)->Range(16, 512);

void BM_NetworkValueGrandCoalition(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Graph g = GenerateBa(n, 2, 3);
  const ModelSpec model = MakeModel(3, 16);
  const NodeSet s = AllNodes(n);
  const CoalitionStructure p = CoalitionStructure::GrandCoalition(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(NetworkValue(g, model, 1, s, p));
  }
}
BENCHMARK(BM_NetworkValueGrandCoalition)->RangeMultiplier(2)->Range(16, 256);

void BM_Transfer(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  RandomStream rng(5);
  const CoalitionStructure p = PartitionFromCycles(KnuthShuffle(n, rng));
  std::vector<NodeId> half;
  for (int i = 0; i < n; i += 2) half.push_back(i);
  const NodeSet s(half);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Transfer(p, s));
  }
}
BENCHMARK(BM_Transfer)->RangeMultiplier(4)->Range(8, 512);

// Additive game with one cheap externality term.
class SyntheticOracle : public ValueOracle {
 public:
  double Value(const NodeSet& s, const CoalitionStructure& p) const override {
    return static_cast<double>(s.size()) + 0.01 * p.num_blocks();
  }
};

void BM_EstimateShapley(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  SyntheticOracle oracle;
  SampleConfig config;
  config.num_samples = 100;
  config.seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(EstimateShapley(oracle, n, config));
  }
}
BENCHMARK(BM_EstimateShapley)->RangeMultiplier(2)->Range(8, 128);

void BM_ExactShapley(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  SyntheticOracle oracle;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ExactShapley(oracle, n));
  }
}
BENCHMARK(BM_ExactShapley)->DenseRange(3, 7)->Unit(benchmark::kMillisecond);

void BM_ExplainGraph(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Graph g = GenerateBa(n, 2, 7);
  const ModelSpec model = MakeModel(3, 8);
  SampleConfig config;
  config.num_samples = 100;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ExplainGraph(model, g, config));
  }
}
BENCHMARK(BM_ExplainGraph)->Arg(25)->Arg(50)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace graphext

BENCHMARK_MAIN();
