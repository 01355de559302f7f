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

#ifndef GRAPHEXT_DATASETS_H_
#define GRAPHEXT_DATASETS_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "graphext/graph.h"

namespace graphext {

enum class MotifShape { kHouse, kCycle };

struct LabeledGraphSet {
  std::string kind = "custom";
  uint64_t seed = 0;
  int num_classes = 0;
  std::vector<Graph> graphs;
  std::vector<int> labels;
  // Per-node classes, one vector per graph; empty when not applicable.
  std::vector<std::vector<int>> node_labels;
  // Planted motif nodes per graph; empty when not applicable.
  std::vector<std::vector<NodeId>> ground_truth;
};

// Barabasi-Albert preferential attachment. Starts from an m_attach-clique;
// every later node links to m_attach distinct earlier nodes drawn with
// probability proportional to degree (uniformly while all degrees are 0).
// Features are the constant 1 (feature_dim 1). Requires 1 <= m_attach < n.
Graph GenerateBa(int n, int m_attach, uint64_t seed);

// Motif edges on local indices 0..4. House: square 0-1-3-2 with apex 4 on
// top of 2-3; node 0 is the attachment point.
std::vector<Edge> MotifEdges(MotifShape shape);

struct BaShapesOptions {
  int base_nodes = 300;
  int m_attach = 5;
  int num_houses = 80;
};

// One graph: BA base plus houses, each linked to a uniformly chosen base node
// by one edge at its node 0. Node classes: 0 base, 1 apex, 2 middle,
// 3 bottom.
LabeledGraphSet GenerateBaShapes(uint64_t seed, const BaShapesOptions& options = {});

struct BaTwoMotifsOptions {
  int count = 1000;
  int base_nodes = 20;
  int m_attach = 1;
  MotifShape class0_motif = MotifShape::kHouse;
  MotifShape class1_motif = MotifShape::kCycle;
};

// `count` graphs, graph i labelled i % 2: BA base plus one 5-node motif
// (nodes base_nodes..base_nodes+4) linked to a random base node by one edge.
LabeledGraphSet GenerateBaTwoMotifs(uint64_t seed,
                                    const BaTwoMotifsOptions& options = {});

// JSON lines, one graph object (with "label") per line. Load throws ParseError
// naming the 1-based line of a bad record; an empty file is an empty set.
void SaveGraphSet(const LabeledGraphSet& set, const std::string& path);
LabeledGraphSet LoadGraphSet(const std::string& path);

// Sidecar {"kind", "seed", "num_graphs", "num_classes", "ground_truth",
// "node_labels"}.
std::string DatasetMetaJson(const LabeledGraphSet& set);
// Fills kind/seed/num_classes/ground_truth/node_labels of `set` from meta.
void ApplyDatasetMeta(std::string_view meta_json, LabeledGraphSet& set);

}  // namespace graphext

#endif  // GRAPHEXT_DATASETS_H_
