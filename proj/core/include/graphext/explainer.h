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

#ifndef GRAPHEXT_EXPLAINER_H_
#define GRAPHEXT_EXPLAINER_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "graphext/game.h"
#include "graphext/gnn.h"
#include "graphext/graph.h"
#include "graphext/sampler.h"

namespace graphext {

enum class TaskKind { kGraph, kNode, kLink };

struct ExplanationTask {
  TaskKind kind = TaskKind::kGraph;
  std::optional<NodeId> target;                     // kNode
  std::optional<std::pair<NodeId, NodeId>> pair;    // kLink
  int hops = 0;                                     // kNode / kLink, >= 1

  // Throws ValidationError if the target does not fit the kind.
  void Validate(int num_nodes) const;
};

// Per-node importance in original graph indices. Pinned nodes (the target of
// a node task, the endpoints of a link task) are listed with value 0 and are
// not players of the game.
struct ImportanceReport {
  TaskKind task = TaskKind::kGraph;
  int explained_class = 0;
  std::vector<NodeId> node_ids;
  std::vector<double> shapley;
  std::vector<double> std_errors;
  std::vector<NodeId> pinned;
  int64_t num_samples = 0;
  uint64_t seed = 0;
  ScoreScale scale = ScoreScale::kProb;
  int64_t oracle_calls = 0;

  double ShapleyOf(NodeId node) const;
};

// Score of the target node on a subgraph; `target` is a local index.
using NodeScorer = std::function<double(const Graph& subgraph, NodeId target)>;
// Score of the (u, v) pair on a subgraph; local indices.
using PairScorer =
    std::function<double(const Graph& subgraph, NodeId u, NodeId v)>;

// Node-task game on `graph` with one node held out of play. Player p is graph
// node players[p]. A component T of S in G_P is worth score(G[T + anchors])
// when some member of T is adjacent to an anchor, else 0.
class AnchoredComponentOracle : public ValueOracle {
 public:
  using Scorer = std::function<double(const Graph& subgraph,
                                      std::span<const NodeId> anchors)>;
  AnchoredComponentOracle(Graph graph, std::vector<NodeId> anchors,
                          Scorer scorer);

  double Value(const NodeSet& s, const CoalitionStructure& p) const override;
  int num_players() const { return static_cast<int>(players_.size()); }
  const std::vector<NodeId>& players() const { return players_; }

 private:
  Graph graph_;
  std::vector<NodeId> anchors_;
  std::vector<NodeId> players_;
  std::vector<char> touches_anchor_;
  Scorer scorer_;
};

// Explains the model's prediction for the whole graph. The explained class is
// the label predicted on the full graph.
ImportanceReport ExplainGraph(const ModelSpec& model, const Graph& g,
                              const SampleConfig& config,
                              ScoreScale scale = ScoreScale::kProb);

// Explains the classification of `target` on its `hops`-hop subgraph.
ImportanceReport ExplainNode(const ModelSpec& model, const Graph& g,
                             NodeId target, int hops,
                             const SampleConfig& config);

// Same game with a caller-provided scorer; `explained_class` is echoed only.
ImportanceReport ExplainNodeWithScorer(const Graph& g, NodeId target, int hops,
                                       const NodeScorer& scorer,
                                       int explained_class,
                                       const SampleConfig& config);

// Explains the model's edge-existence prediction for (u, v).
ImportanceReport ExplainLink(const ModelSpec& model, const Graph& g,
                             std::pair<NodeId, NodeId> pair, int hops,
                             const SampleConfig& config);

ImportanceReport ExplainLinkWithScorer(const Graph& g,
                                       std::pair<NodeId, NodeId> pair,
                                       int hops, const PairScorer& scorer,
                                       int explained_class,
                                       const SampleConfig& config);

// Dispatches on task.kind.
ImportanceReport Explain(const ModelSpec& model, const Graph& g,
                         const ExplanationTask& task,
                         const SampleConfig& config);

// Pinned nodes first, then the highest-valued remaining nodes up to k; ties
// go to the lower node index. Throws ValidationError unless
// max(1, |pinned|) <= k <= |node_ids|.
NodeSet TopKMask(const ImportanceReport& report, int k);

}  // namespace graphext

#endif  // GRAPHEXT_EXPLAINER_H_
