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

#include "graphext/graph.h"

#include <algorithm>
#include <deque>
#include <map>
#include <string>
#include <utility>

#include "graphext/error.h"

namespace graphext {

NodeSet::NodeSet(std::vector<NodeId> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()),
                 members_.end());
}

NodeSet NodeSet::Range(int n) {
  NodeSet out;
  out.members_.resize(n);
  for (int i = 0; i < n; ++i) out.members_[i] = i;
  return out;
}

bool NodeSet::contains(NodeId node) const {
  return std::binary_search(members_.begin(), members_.end(), node);
}

NodeSet NodeSet::With(NodeId node) const {
  NodeSet out = *this;
  auto it = std::lower_bound(out.members_.begin(), out.members_.end(), node);
  if (it == out.members_.end() || *it != node) out.members_.insert(it, node);
  return out;
}

void NodeSet::Validate(int num_nodes) const {
  for (NodeId m : members_) {
    if (m < 0 || m >= num_nodes) {
      throw InvalidNodeError("node " + std::to_string(m) +
                             " out of range for graph with " +
                             std::to_string(num_nodes) + " nodes");
    }
  }
}

CoalitionStructure::CoalitionStructure(std::vector<NodeSet> blocks,
                                       int num_nodes)
    : blocks_(std::move(blocks)), block_of_(num_nodes, -1) {
  if (num_nodes < 0) throw PartitionError("negative node count");
  for (const NodeSet& block : blocks_) {
    if (block.empty()) throw PartitionError("empty block");
  }
  std::sort(blocks_.begin(), blocks_.end(),
            [](const NodeSet& a, const NodeSet& b) {
              return a.front() < b.front();
            });
  int covered = 0;
  for (int b = 0; b < num_blocks(); ++b) {
    for (NodeId node : blocks_[b]) {
      if (node < 0 || node >= num_nodes) {
        throw PartitionError("block member " + std::to_string(node) +
                             " outside [0, " + std::to_string(num_nodes) +
                             ")");
      }
      if (block_of_[node] != -1) {
        throw PartitionError("node " + std::to_string(node) +
                             " appears in more than one block");
      }
      block_of_[node] = b;
      ++covered;
    }
  }
  if (covered != num_nodes) {
    throw PartitionError("blocks cover " + std::to_string(covered) + " of " +
                         std::to_string(num_nodes) + " nodes");
  }
}

CoalitionStructure CoalitionStructure::FromLabels(std::span<const int> labels) {
  std::map<int, std::vector<NodeId>> groups;
  for (int i = 0; i < static_cast<int>(labels.size()); ++i) {
    groups[labels[i]].push_back(i);
  }
  std::vector<NodeSet> blocks;
  blocks.reserve(groups.size());
  for (auto& [label, members] : groups) {
    blocks.emplace_back(std::move(members));
  }
  return CoalitionStructure(std::move(blocks), static_cast<int>(labels.size()));
}

CoalitionStructure CoalitionStructure::Singletons(int n) {
  std::vector<NodeSet> blocks;
  blocks.reserve(n);
  for (int i = 0; i < n; ++i) blocks.push_back(NodeSet{i});
  return CoalitionStructure(std::move(blocks), n);
}

CoalitionStructure CoalitionStructure::GrandCoalition(int n) {
  if (n == 0) return CoalitionStructure({}, 0);
  return CoalitionStructure({NodeSet::Range(n)}, n);
}

bool CoalitionStructure::HasBlock(const NodeSet& s) const {
  if (s.empty()) return false;
  const NodeId first = s.front();
  if (first < 0 || first >= num_nodes()) return false;
  return blocks_[block_of_[first]] == s;
}

Graph::Graph(int num_nodes, Eigen::MatrixXd features, std::vector<Edge> edges)
    : num_nodes_(num_nodes),
      features_(std::move(features)),
      edges_(std::move(edges)) {
  if (num_nodes_ < 0) throw ValidationError("negative node count");
  if (features_.rows() != num_nodes_) {
    throw ValidationError("feature matrix has " +
                          std::to_string(features_.rows()) +
                          " rows, expected " + std::to_string(num_nodes_));
  }
  for (Edge& e : edges_) {
    if (e.u < 0 || e.u >= num_nodes_ || e.v < 0 || e.v >= num_nodes_) {
      throw InvalidNodeError("edge (" + std::to_string(e.u) + ", " +
                             std::to_string(e.v) + ") has an endpoint outside [0, " +
                             std::to_string(num_nodes_) + ")");
    }
    if (e.u == e.v) {
      throw ValidationError("self-loop on node " + std::to_string(e.u));
    }
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges_.begin(), edges_.end());
  auto dup = std::adjacent_find(edges_.begin(), edges_.end());
  if (dup != edges_.end()) {
    throw ValidationError("duplicate edge (" + std::to_string(dup->u) + ", " +
                          std::to_string(dup->v) + ")");
  }

  offsets_.assign(num_nodes_ + 1, 0);
  for (const Edge& e : edges_) {
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  for (int i = 0; i < num_nodes_; ++i) offsets_[i + 1] += offsets_[i];
  adjacency_.resize(2 * edges_.size());
  std::vector<int> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const Edge& e : edges_) adjacency_[cursor[e.u]++] = e.v;
  for (const Edge& e : edges_) adjacency_[cursor[e.v]++] = e.u;
  for (int i = 0; i < num_nodes_; ++i) {
    std::sort(adjacency_.begin() + offsets_[i],
              adjacency_.begin() + offsets_[i + 1]);
  }
}

Graph Graph::WithConstantFeatures(int num_nodes, std::vector<Edge> edges,
                                  int feature_dim, double value) {
  return Graph(num_nodes,
               Eigen::MatrixXd::Constant(num_nodes, feature_dim, value),
               std::move(edges));
}

bool Graph::HasEdge(NodeId a, NodeId b) const {
  if (a < 0 || a >= num_nodes_ || b < 0 || b >= num_nodes_) return false;
  auto nbrs = neighbors(a);
  return std::binary_search(nbrs.begin(), nbrs.end(), b);
}

bool operator==(const Graph& a, const Graph& b) {
  return a.num_nodes_ == b.num_nodes_ &&
         a.features_.rows() == b.features_.rows() &&
         a.features_.cols() == b.features_.cols() &&
         a.features_ == b.features_ && a.edges_ == b.edges_ &&
         a.label_ == b.label_ && a.name_ == b.name_;
}

Subgraph InducedSubgraph(const Graph& g, const NodeSet& s) {
  s.Validate(g.num_nodes());
  const int k = s.size();
  std::vector<int> local(g.num_nodes(), -1);
  Subgraph out;
  out.to_parent = s.members();
  Eigen::MatrixXd features(k, g.feature_dim());
  for (int i = 0; i < k; ++i) {
    local[out.to_parent[i]] = i;
    features.row(i) = g.features().row(out.to_parent[i]);
  }
  std::vector<Edge> edges;
  for (int i = 0; i < k; ++i) {
    for (NodeId nb : g.neighbors(out.to_parent[i])) {
      if (local[nb] > i) edges.push_back({i, local[nb]});
    }
  }
  out.graph = Graph(k, std::move(features), std::move(edges));
  return out;
}

Graph PartitionRestrictedGraph(const Graph& g, const CoalitionStructure& p) {
  if (p.num_nodes() != g.num_nodes()) {
    throw PartitionError("partition covers " + std::to_string(p.num_nodes()) +
                         " nodes, graph has " + std::to_string(g.num_nodes()));
  }
  std::vector<Edge> kept;
  for (const Edge& e : g.edges()) {
    if (p.SameBlock(e.u, e.v)) kept.push_back(e);
  }
  Graph out(g.num_nodes(), g.features(), std::move(kept));
  out.set_label(g.label());
  out.set_name(g.name());
  return out;
}

std::vector<NodeSet> ConnectedComponents(const Graph& g,
                                         const NodeSet& within) {
  within.Validate(g.num_nodes());
  std::vector<char> state(g.num_nodes(), 0);  // 1 = member, 2 = visited
  for (NodeId m : within) state[m] = 1;
  std::vector<NodeSet> components;
  std::deque<NodeId> queue;
  for (NodeId root : within) {
    if (state[root] != 1) continue;
    std::vector<NodeId> members = {root};
    state[root] = 2;
    queue.push_back(root);
    while (!queue.empty()) {
      NodeId u = queue.front();
      queue.pop_front();
      for (NodeId nb : g.neighbors(u)) {
        if (state[nb] == 1) {
          state[nb] = 2;
          members.push_back(nb);
          queue.push_back(nb);
        }
      }
    }
    components.emplace_back(std::move(members));
  }
  return components;
}

NodeSet KHopNeighborhood(const Graph& g, std::span<const NodeId> centers,
                         int hops) {
  std::vector<int> dist(g.num_nodes(), -1);
  std::deque<NodeId> queue;
  for (NodeId c : centers) {
    if (c < 0 || c >= g.num_nodes()) {
      throw InvalidNodeError("center node " + std::to_string(c) +
                             " out of range");
    }
    if (dist[c] == -1) {
      dist[c] = 0;
      queue.push_back(c);
    }
  }
  std::vector<NodeId> reached;
  while (!queue.empty()) {
    NodeId u = queue.front();
    queue.pop_front();
    reached.push_back(u);
    if (dist[u] == hops) continue;
    for (NodeId nb : g.neighbors(u)) {
      if (dist[nb] == -1) {
        dist[nb] = dist[u] + 1;
        queue.push_back(nb);
      }
    }
  }
  return NodeSet(std::move(reached));
}

}  // namespace graphext
