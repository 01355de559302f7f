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

#include "graphext/explainer.h"

#include <algorithm>
#include <deque>
#include <numeric>
#include <string>

#include "graphext/error.h"

namespace graphext {
namespace {

ImportanceReport AssembleReport(TaskKind kind, int explained_class,
                                const std::vector<NodeId>& to_parent,
                                const std::vector<NodeId>& player_local,
                                const std::vector<NodeId>& anchor_local,
                                const ShapleyEstimate* estimate,
                                const SampleConfig& config, ScoreScale scale) {
  struct Row {
    NodeId id;
    double value;
    double error;
  };
  std::vector<Row> rows;
  for (size_t p = 0; p < player_local.size(); ++p) {
    rows.push_back({to_parent[player_local[p]],
                    estimate ? estimate->values[p] : 0.0,
                    estimate ? estimate->std_errors[p] : 0.0});
  }
  ImportanceReport report;
  for (NodeId a : anchor_local) {
    rows.push_back({to_parent[a], 0.0, 0.0});
    report.pinned.push_back(to_parent[a]);
  }
  std::sort(rows.begin(), rows.end(),
            [](const Row& a, const Row& b) { return a.id < b.id; });
  std::sort(report.pinned.begin(), report.pinned.end());
  report.task = kind;
  report.explained_class = explained_class;
  for (const Row& r : rows) {
    report.node_ids.push_back(r.id);
    report.shapley.push_back(r.value);
    report.std_errors.push_back(r.error);
  }
  report.num_samples = config.num_samples;
  report.seed = config.seed;
  report.scale = scale;
  report.oracle_calls = estimate ? estimate->total_oracle_calls : 0;
  return report;
}

void CheckHops(int hops) {
  if (hops < 1) throw ValidationError("hops must be >= 1");
}

void CheckTarget(const Graph& g, NodeId node) {
  if (node < 0 || node >= g.num_nodes()) {
    throw InvalidNodeError("target node " + std::to_string(node) +
                           " out of range");
  }
}

ImportanceReport ExplainAnchored(TaskKind kind, const Graph& g,
                                 std::vector<NodeId> anchors, int hops,
                                 AnchoredComponentOracle::Scorer scorer,
                                 int explained_class,
                                 const SampleConfig& config) {
  config.Validate();
  const Subgraph sub =
      InducedSubgraph(g, KHopNeighborhood(g, anchors, hops));
  std::vector<NodeId> anchor_local;
  for (NodeId a : anchors) {
    auto it = std::lower_bound(sub.to_parent.begin(), sub.to_parent.end(), a);
    anchor_local.push_back(static_cast<NodeId>(it - sub.to_parent.begin()));
  }
  AnchoredComponentOracle oracle(sub.graph, anchor_local, std::move(scorer));
  if (oracle.num_players() == 0) {
    return AssembleReport(kind, explained_class, sub.to_parent, {},
                          anchor_local, nullptr, config, ScoreScale::kProb);
  }
  const ShapleyEstimate estimate =
      EstimateShapley(oracle, oracle.num_players(), config);
  return AssembleReport(kind, explained_class, sub.to_parent, oracle.players(),
                        anchor_local, &estimate, config, ScoreScale::kProb);
}

}  // namespace

void ExplanationTask::Validate(int num_nodes) const {
  auto check = [num_nodes](NodeId node) {
    if (node < 0 || node >= num_nodes) {
      throw InvalidNodeError("task node " + std::to_string(node) +
                             " out of range");
    }
  };
  switch (kind) {
    case TaskKind::kGraph:
      if (target || pair) throw ValidationError("graph task takes no target");
      break;
    case TaskKind::kNode:
      if (!target || pair) throw ValidationError("node task needs a target");
      check(*target);
      CheckHops(hops);
      break;
    case TaskKind::kLink:
      if (!pair || target) throw ValidationError("link task needs a node pair");
      check(pair->first);
      check(pair->second);
      if (pair->first == pair->second) {
        throw ValidationError("link endpoints must differ");
      }
      CheckHops(hops);
      break;
  }
}

double ImportanceReport::ShapleyOf(NodeId node) const {
  for (size_t i = 0; i < node_ids.size(); ++i) {
    if (node_ids[i] == node) return shapley[i];
  }
  throw InvalidNodeError("node " + std::to_string(node) + " not in report");
}

AnchoredComponentOracle::AnchoredComponentOracle(Graph graph,
                                                 std::vector<NodeId> anchors,
                                                 Scorer scorer)
    : graph_(std::move(graph)),
      anchors_(std::move(anchors)),
      touches_anchor_(graph_.num_nodes(), 0),
      scorer_(std::move(scorer)) {
  std::vector<char> is_anchor(graph_.num_nodes(), 0);
  for (NodeId a : anchors_) {
    if (a < 0 || a >= graph_.num_nodes()) {
      throw InvalidNodeError("anchor out of range");
    }
    is_anchor[a] = 1;
  }
  for (NodeId u = 0; u < graph_.num_nodes(); ++u) {
    if (is_anchor[u]) continue;
    players_.push_back(u);
    for (NodeId nb : graph_.neighbors(u)) {
      if (is_anchor[nb]) touches_anchor_[u] = 1;
    }
  }
}

double AnchoredComponentOracle::Value(const NodeSet& s,
                                      const CoalitionStructure& p) const {
  const int k = num_players();
  if (p.num_nodes() != k) {
    throw PartitionError("partition covers " + std::to_string(p.num_nodes()) +
                         " players, game has " + std::to_string(k));
  }
  s.Validate(k);
  // Player index of each graph node, -1 for anchors.
  std::vector<int> player_of(graph_.num_nodes(), -1);
  for (int q = 0; q < k; ++q) player_of[players_[q]] = q;

  std::vector<char> state(k, 0);
  for (NodeId m : s) state[m] = 1;
  std::deque<int> queue;
  double total = 0.0;
  for (NodeId root : s) {
    if (state[root] != 1) continue;
    std::vector<int> component = {root};
    state[root] = 2;
    queue.push_back(root);
    bool touches = false;
    while (!queue.empty()) {
      const int q = queue.front();
      queue.pop_front();
      touches = touches || touches_anchor_[players_[q]];
      for (NodeId nb : graph_.neighbors(players_[q])) {
        const int r = player_of[nb];
        if (r >= 0 && state[r] == 1 && p.SameBlock(q, r)) {
          state[r] = 2;
          component.push_back(r);
          queue.push_back(r);
        }
      }
    }
    if (!touches) continue;

    // Subgraph on component + anchors: player-player edges only inside a
    // block, every edge touching an anchor.
    std::vector<NodeId> nodes;
    for (int q : component) nodes.push_back(players_[q]);
    nodes.insert(nodes.end(), anchors_.begin(), anchors_.end());
    std::sort(nodes.begin(), nodes.end());
    std::vector<int> local(graph_.num_nodes(), -1);
    Eigen::MatrixXd features(nodes.size(), graph_.feature_dim());
    for (size_t i = 0; i < nodes.size(); ++i) {
      local[nodes[i]] = static_cast<int>(i);
      features.row(i) = graph_.features().row(nodes[i]);
    }
    std::vector<Edge> edges;
    for (size_t i = 0; i < nodes.size(); ++i) {
      const NodeId u = nodes[i];
      for (NodeId nb : graph_.neighbors(u)) {
        const int j = local[nb];
        if (j <= static_cast<int>(i)) continue;
        const int pu = player_of[u];
        const int pv = player_of[nb];
        if (pu >= 0 && pv >= 0 && !p.SameBlock(pu, pv)) continue;
        edges.push_back({static_cast<NodeId>(i), j});
      }
    }
    std::vector<NodeId> anchor_local;
    for (NodeId a : anchors_) anchor_local.push_back(local[a]);
    total += scorer_(Graph(static_cast<int>(nodes.size()), std::move(features),
                           std::move(edges)),
                     anchor_local);
  }
  return total;
}

ImportanceReport ExplainGraph(const ModelSpec& model, const Graph& g,
                              const SampleConfig& config, ScoreScale scale) {
  config.Validate();
  if (g.num_nodes() < 1) throw ValidationError("cannot explain an empty graph");
  const int y = Forward(model, g).label;
  const GnnValueOracle oracle(model, g, y, scale);
  const ShapleyEstimate estimate =
      EstimateShapley(oracle, g.num_nodes(), config);
  std::vector<NodeId> ids(g.num_nodes());
  std::iota(ids.begin(), ids.end(), 0);
  return AssembleReport(TaskKind::kGraph, y, ids, ids, {}, &estimate, config,
                        scale);
}

ImportanceReport ExplainNodeWithScorer(const Graph& g, NodeId target, int hops,
                                       const NodeScorer& scorer,
                                       int explained_class,
                                       const SampleConfig& config) {
  CheckTarget(g, target);
  CheckHops(hops);
  return ExplainAnchored(
      TaskKind::kNode, g, {target}, hops,
      [scorer](const Graph& sub, std::span<const NodeId> anchors) {
        return scorer(sub, anchors[0]);
      },
      explained_class, config);
}

ImportanceReport ExplainNode(const ModelSpec& model, const Graph& g,
                             NodeId target, int hops,
                             const SampleConfig& config) {
  CheckTarget(g, target);
  CheckHops(hops);
  const Subgraph sub =
      InducedSubgraph(g, KHopNeighborhood(g, std::span(&target, 1), hops));
  const auto it =
      std::lower_bound(sub.to_parent.begin(), sub.to_parent.end(), target);
  const NodeId local = static_cast<NodeId>(it - sub.to_parent.begin());
  const int y = ForwardNode(model, sub.graph, local).label;
  return ExplainNodeWithScorer(
      g, target, hops,
      [&model, y](const Graph& graph, NodeId t) {
        return ClassScore(ForwardNode(model, graph, t), y, ScoreScale::kProb);
      },
      y, config);
}

ImportanceReport ExplainLinkWithScorer(const Graph& g,
                                       std::pair<NodeId, NodeId> pair,
                                       int hops, const PairScorer& scorer,
                                       int explained_class,
                                       const SampleConfig& config) {
  CheckTarget(g, pair.first);
  CheckTarget(g, pair.second);
  if (pair.first == pair.second) {
    throw ValidationError("link endpoints must differ");
  }
  CheckHops(hops);
  // Anchors in (first, second) order so the scorer sees (u, v) as given.
  return ExplainAnchored(
      TaskKind::kLink, g, {pair.first, pair.second}, hops,
      [scorer](const Graph& sub, std::span<const NodeId> anchors) {
        return scorer(sub, anchors[0], anchors[1]);
      },
      explained_class, config);
}

ImportanceReport ExplainLink(const ModelSpec& model, const Graph& g,
                             std::pair<NodeId, NodeId> pair, int hops,
                             const SampleConfig& config) {
  CheckTarget(g, pair.first);
  CheckTarget(g, pair.second);
  if (pair.first == pair.second) {
    throw ValidationError("link endpoints must differ");
  }
  CheckHops(hops);
  const NodeId ends[2] = {pair.first, pair.second};
  const Subgraph sub = InducedSubgraph(g, KHopNeighborhood(g, ends, hops));
  auto local = [&sub](NodeId node) {
    return static_cast<NodeId>(
        std::lower_bound(sub.to_parent.begin(), sub.to_parent.end(), node) -
        sub.to_parent.begin());
  };
  const int y =
      ForwardLink(model, sub.graph, local(pair.first), local(pair.second))
          .label;
  return ExplainLinkWithScorer(
      g, pair, hops,
      [&model, y](const Graph& graph, NodeId u, NodeId v) {
        return ClassScore(ForwardLink(model, graph, u, v), y,
                          ScoreScale::kProb);
      },
      y, config);
}

ImportanceReport Explain(const ModelSpec& model, const Graph& g,
                         const ExplanationTask& task,
                         const SampleConfig& config) {
  task.Validate(g.num_nodes());
  switch (task.kind) {
    case TaskKind::kGraph:
      return ExplainGraph(model, g, config);
    case TaskKind::kNode:
      return ExplainNode(model, g, *task.target, task.hops, config);
    case TaskKind::kLink:
      return ExplainLink(model, g, *task.pair, task.hops, config);
  }
  throw ValidationError("unknown task kind");
}

NodeSet TopKMask(const ImportanceReport& report, int k) {
  const int total = static_cast<int>(report.node_ids.size());
  const int pinned = static_cast<int>(report.pinned.size());
  if (k < 1 || k > total || k < pinned) {
    throw ValidationError("k = " + std::to_string(k) + " outside [" +
                          std::to_string(std::max(1, pinned)) + ", " +
                          std::to_string(total) + "]");
  }
  std::vector<NodeId> chosen(report.pinned.begin(), report.pinned.end());
  std::vector<int> order;
  for (int i = 0; i < total; ++i) {
    if (!std::binary_search(report.pinned.begin(), report.pinned.end(),
                            report.node_ids[i])) {
      order.push_back(i);
    }
  }
  std::stable_sort(order.begin(), order.end(), [&report](int a, int b) {
    if (report.shapley[a] != report.shapley[b]) {
      return report.shapley[a] > report.shapley[b];
    }
    return report.node_ids[a] < report.node_ids[b];
  });
  for (int i = 0; static_cast<int>(chosen.size()) < k; ++i) {
    chosen.push_back(report.node_ids[order[i]]);
  }
  return NodeSet(std::move(chosen));
}

}  // namespace graphext
