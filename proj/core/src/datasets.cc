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

#include "graphext/datasets.h"

#include <algorithm>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "graphext/error.h"
#include "graphext/io.h"
#include "graphext/rng.h"

namespace graphext {
namespace {

using json = nlohmann::ordered_json;

constexpr int kMotifSize = 5;

// Edge list of a BA graph on nodes 0..n-1.
std::vector<Edge> BaEdges(int n, int m_attach, RandomStream& rng) {
  std::vector<Edge> edges;
  std::vector<int64_t> degree(n, 0);
  for (int u = 0; u < m_attach; ++u) {
    for (int v = u + 1; v < m_attach; ++v) {
      edges.push_back({u, v});
      ++degree[u];
      ++degree[v];
    }
  }
  std::vector<char> taken(n, 0);
  std::vector<NodeId> targets;
  for (int t = m_attach; t < n; ++t) {
    targets.clear();
    for (int k = 0; k < m_attach; ++k) {
      int64_t total = 0;
      int available = 0;
      for (int u = 0; u < t; ++u) {
        if (!taken[u]) {
          total += degree[u];
          ++available;
        }
      }
      NodeId pick = -1;
      if (total == 0) {
        // No degree mass among the remaining candidates: uniform.
        int r = static_cast<int>(rng.NextBelow(available));
        for (int u = 0; u < t; ++u) {
          if (!taken[u] && r-- == 0) {
            pick = u;
            break;
          }
        }
      } else {
        int64_t r = static_cast<int64_t>(rng.NextBelow(total));
        for (int u = 0; u < t; ++u) {
          if (taken[u]) continue;
          r -= degree[u];
          if (r < 0) {
            pick = u;
            break;
          }
        }
      }
      taken[pick] = 1;
      targets.push_back(pick);
    }
    for (NodeId u : targets) {
      taken[u] = 0;
      edges.push_back({u, t});
      ++degree[u];
      ++degree[t];
    }
  }
  return edges;
}

void CheckBaParams(int n, int m_attach) {
  if (m_attach < 1 || m_attach >= n) {
    throw ValidationError("BA generator needs 1 <= m_attach < n, got m_attach = " +
                          std::to_string(m_attach) + ", n = " +
                          std::to_string(n));
  }
}

}  // namespace

Graph GenerateBa(int n, int m_attach, uint64_t seed) {
  CheckBaParams(n, m_attach);
  RandomStream rng(seed);
  return Graph::WithConstantFeatures(n, BaEdges(n, m_attach, rng));
}

std::vector<Edge> MotifEdges(MotifShape shape) {
  if (shape == MotifShape::kHouse) {
    return {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {2, 4}, {3, 4}};
  }
  return {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}};
}

LabeledGraphSet GenerateBaShapes(uint64_t seed, const BaShapesOptions& options) {
  CheckBaParams(options.base_nodes, options.m_attach);
  if (options.num_houses < 0) throw ValidationError("num_houses must be >= 0");
  RandomStream rng(seed);
  std::vector<Edge> edges = BaEdges(options.base_nodes, options.m_attach, rng);
  const int n = options.base_nodes + kMotifSize * options.num_houses;
  std::vector<int> node_labels(n, 0);
  // House roles by local index: bottom (0, 1), middle (2, 3), apex (4).
  constexpr int kRole[kMotifSize] = {3, 3, 2, 2, 1};
  std::vector<NodeId> motif_nodes;
  for (int h = 0; h < options.num_houses; ++h) {
    const int offset = options.base_nodes + kMotifSize * h;
    for (const Edge& e : MotifEdges(MotifShape::kHouse)) {
      edges.push_back({offset + e.u, offset + e.v});
    }
    for (int i = 0; i < kMotifSize; ++i) {
      node_labels[offset + i] = kRole[i];
      motif_nodes.push_back(offset + i);
    }
    const NodeId anchor =
        static_cast<NodeId>(rng.NextBelow(options.base_nodes));
    edges.push_back({anchor, offset});
  }
  LabeledGraphSet set;
  set.kind = "ba_shapes";
  set.seed = seed;
  set.num_classes = 4;
  Graph g = Graph::WithConstantFeatures(n, std::move(edges));
  g.set_label(0);
  g.set_name("ba_shapes");
  set.graphs.push_back(std::move(g));
  set.labels.push_back(0);
  set.node_labels.push_back(std::move(node_labels));
  set.ground_truth.push_back(std::move(motif_nodes));
  return set;
}

LabeledGraphSet GenerateBaTwoMotifs(uint64_t seed,
                                    const BaTwoMotifsOptions& options) {
  if (options.count < 1) throw ValidationError("count must be >= 1");
  CheckBaParams(options.base_nodes, options.m_attach);
  const RandomStream root(seed);
  LabeledGraphSet set;
  set.kind = "ba_2motifs";
  set.seed = seed;
  set.num_classes = 2;
  const int base = options.base_nodes;
  for (int i = 0; i < options.count; ++i) {
    RandomStream rng = root.Substream(static_cast<uint64_t>(i));
    std::vector<Edge> edges = BaEdges(base, options.m_attach, rng);
    const int label = i % 2;
    const MotifShape shape =
        label == 0 ? options.class0_motif : options.class1_motif;
    for (const Edge& e : MotifEdges(shape)) {
      edges.push_back({base + e.u, base + e.v});
    }
    edges.push_back({static_cast<NodeId>(rng.NextBelow(base)), base});
    Graph g = Graph::WithConstantFeatures(base + kMotifSize, std::move(edges));
    g.set_label(label);
    g.set_name("ba_2motifs_" + std::to_string(i));
    set.graphs.push_back(std::move(g));
    set.labels.push_back(label);
    std::vector<NodeId> truth(kMotifSize);
    for (int k = 0; k < kMotifSize; ++k) truth[k] = base + k;
    set.ground_truth.push_back(std::move(truth));
  }
  return set;
}

void SaveGraphSet(const LabeledGraphSet& set, const std::string& path) {
  if (set.graphs.size() != set.labels.size()) {
    throw ValidationError("graphs and labels differ in length");
  }
  std::string out;
  for (size_t i = 0; i < set.graphs.size(); ++i) {
    Graph g = set.graphs[i];
    g.set_label(set.labels[i]);
    out += GraphToJson(g);
    out += '\n';
  }
  WriteTextFile(path, out);
}

LabeledGraphSet LoadGraphSet(const std::string& path) {
  const std::string text = ReadTextFile(path);
  LabeledGraphSet set;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      Graph g = GraphFromJson(line);
      if (!g.label()) throw ParseError("record has no \"label\"");
      set.labels.push_back(*g.label());
      set.num_classes = std::max(set.num_classes, *g.label() + 1);
      set.graphs.push_back(std::move(g));
    } catch (const ParseError& e) {
      throw ParseError(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return set;
}

std::string DatasetMetaJson(const LabeledGraphSet& set) {
  json j;
  j["kind"] = set.kind;
  j["seed"] = set.seed;
  j["num_graphs"] = set.graphs.size();
  j["num_classes"] = set.num_classes;
  j["ground_truth"] = set.ground_truth;
  j["node_labels"] = set.node_labels;
  return j.dump();
}

void ApplyDatasetMeta(std::string_view meta_json, LabeledGraphSet& set) {
  try {
    const json j = json::parse(meta_json.begin(), meta_json.end());
    set.kind = j.at("kind").get<std::string>();
    set.seed = j.at("seed").get<uint64_t>();
    set.num_classes = j.at("num_classes").get<int>();
    set.ground_truth = j.at("ground_truth").get<std::vector<std::vector<NodeId>>>();
    set.node_labels = j.at("node_labels").get<std::vector<std::vector<int>>>();
    if (j.at("num_graphs").get<size_t>() != set.graphs.size()) {
      throw ParseError("meta num_graphs does not match the graph file");
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid dataset meta: ") + e.what());
  }
}

}  // namespace graphext
