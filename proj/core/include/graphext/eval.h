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

#ifndef GRAPHEXT_EVAL_H_
#define GRAPHEXT_EVAL_H_

#include <span>
#include <string>
#include <vector>

#include "graphext/explainer.h"
#include "graphext/gnn.h"
#include "graphext/graph.h"
#include "graphext/sampler.h"

namespace graphext {

// A graph, a node mask over it and the class the fidelity is measured on.
struct EvalItem {
  const Graph* graph = nullptr;
  std::vector<bool> mask;
  int label = 0;
};

// (X * mask, A): features of unmasked nodes are zeroed, edges untouched.
// With `complement` the mask is inverted first.
Graph ApplyFeatureMask(const Graph& g, const std::vector<bool>& mask,
                       bool complement = false);

std::vector<bool> MaskFromNodeSet(const NodeSet& nodes, int num_nodes);

// mean_i f(G_i)_{y_i} - f(G_i^{1-M_i})_{y_i}
double FidelityPlus(const ModelSpec& model, std::span<const EvalItem> items);

// mean_i f(G_i)_{y_i} - f(G_i^{M_i})_{y_i}
double FidelityMinus(const ModelSpec& model, std::span<const EvalItem> items);

// mean_i (1 - |M_i| / num_nodes_i). Throws ValidationError on a 0-node graph.
double Sparsity(std::span<const EvalItem> items);

struct FidelityPoint {
  double sparsity = 0.0;
  double fidelity_plus = 0.0;
  double fidelity_minus = 0.0;
  double k_mean = 0.0;
};

// Node count kept at a target sparsity: round((1 - level) * n) in [1, n].
int KeepCount(double level, int num_nodes);

// One point per level. Graph i is masked with TopKMask(reports[i], k_i) and
// scored against reports[i].explained_class. Points are sorted by measured
// sparsity. Levels must lie in (0, 1).
std::vector<FidelityPoint> SparsitySweep(
    const ModelSpec& model, std::span<const Graph> graphs,
    std::span<const ImportanceReport> reports, std::span<const double> levels);

// Computes one graph-task report per graph with `config`, then sweeps.
std::vector<FidelityPoint> SparsitySweep(const ModelSpec& model,
                                         std::span<const Graph> graphs,
                                         const SampleConfig& config,
                                         std::span<const double> levels);

// Header `sparsity,fidelity_plus,fidelity_minus,k_mean`, one row per point.
std::string SweepToCsv(std::span<const FidelityPoint> points);

}  // namespace graphext

#endif  // GRAPHEXT_EVAL_H_
