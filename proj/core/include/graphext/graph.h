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

#ifndef GRAPHEXT_GRAPH_H_
#define GRAPHEXT_GRAPH_H_

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace graphext {

using NodeId = int;

// Undirected edge stored with u < v.
struct Edge {
  NodeId u = 0;
  NodeId v = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Sorted set of node indices without duplicates.
class NodeSet {
 public:
  NodeSet() = default;
  // Sorts and removes duplicates.
  explicit NodeSet(std::vector<NodeId> members);
  NodeSet(std::initializer_list<NodeId> members)
      : NodeSet(std::vector<NodeId>(members)) {}

  // {0, 1, ..., n-1}.
  static NodeSet Range(int n);

  bool contains(NodeId node) const;
  int size() const { return static_cast<int>(members_.size()); }
  bool empty() const { return members_.empty(); }
  const std::vector<NodeId>& members() const { return members_; }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }
  NodeId front() const { return members_.front(); }

  // Returns a copy with `node` inserted.
  NodeSet With(NodeId node) const;

  // Throws InvalidNodeError unless every member is in [0, num_nodes).
  void Validate(int num_nodes) const;

  friend bool operator==(const NodeSet&, const NodeSet&) = default;
  friend auto operator<=>(const NodeSet& a, const NodeSet& b) {
    return a.members_ <=> b.members_;
  }

 private:
  std::vector<NodeId> members_;
};

// Partition of {0..n-1} into non-empty, pairwise disjoint blocks.
// Blocks are kept in canonical order (ascending smallest member), so two
// structures describing the same partition compare equal.
class CoalitionStructure {
 public:
  CoalitionStructure() = default;
  // Throws PartitionError if `blocks` is not a partition of {0..num_nodes-1}.
  CoalitionStructure(std::vector<NodeSet> blocks, int num_nodes);

  // labels[i] is the block label of node i; labels may be arbitrary ints.
  static CoalitionStructure FromLabels(std::span<const int> labels);
  static CoalitionStructure Singletons(int n);
  static CoalitionStructure GrandCoalition(int n);

  int num_nodes() const { return static_cast<int>(block_of_.size()); }
  int num_blocks() const { return static_cast<int>(blocks_.size()); }
  const std::vector<NodeSet>& blocks() const { return blocks_; }
  const NodeSet& block(int index) const { return blocks_[index]; }
  // Index into blocks() of the block containing `node`.
  int BlockOf(NodeId node) const { return block_of_[node]; }
  bool SameBlock(NodeId a, NodeId b) const {
    return block_of_[a] == block_of_[b];
  }
  bool HasBlock(const NodeSet& s) const;

  friend bool operator==(const CoalitionStructure& a,
                         const CoalitionStructure& b) {
    return a.blocks_ == b.blocks_;
  }

 private:
  std::vector<NodeSet> blocks_;
  std::vector<int> block_of_;
};

// Node-feature matrix plus an undirected simple edge set. Immutable once
// built; the constructor validates every invariant and builds adjacency.
class Graph {
 public:
  Graph() = default;
  // Edges may be given in either orientation. Throws InvalidNodeError on an
  // out-of-range endpoint and ValidationError on self-loops, duplicate edges
  // or a feature matrix whose row count is not num_nodes.
  Graph(int num_nodes, Eigen::MatrixXd features, std::vector<Edge> edges);

  // Edgeless/featured helpers used throughout tests and generators.
  static Graph WithConstantFeatures(int num_nodes, std::vector<Edge> edges,
                                    int feature_dim = 1, double value = 1.0);

  int num_nodes() const { return num_nodes_; }
  int feature_dim() const { return static_cast<int>(features_.cols()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const Eigen::MatrixXd& features() const { return features_; }
  // Sorted, each with u < v.
  const std::vector<Edge>& edges() const { return edges_; }
  std::span<const NodeId> neighbors(NodeId node) const {
    return {adjacency_.data() + offsets_[node],
            adjacency_.data() + offsets_[node + 1]};
  }
  int degree(NodeId node) const {
    return offsets_[node + 1] - offsets_[node];
  }
  bool HasEdge(NodeId a, NodeId b) const;

  const std::optional<int>& label() const { return label_; }
  void set_label(std::optional<int> label) { label_ = label; }
  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  friend bool operator==(const Graph& a, const Graph& b);

 private:
  int num_nodes_ = 0;
  Eigen::MatrixXd features_;
  std::vector<Edge> edges_;
  std::vector<int> offsets_ = {0};
  std::vector<NodeId> adjacency_;
  std::optional<int> label_;
  std::string name_;
};

// A subgraph together with the map from its dense indices back to the parent.
struct Subgraph {
  Graph graph;
  std::vector<NodeId> to_parent;
};

// Keeps the nodes of `s` (reindexed densely in ascending order) and every
// edge of `g` with both endpoints in `s`.
Subgraph InducedSubgraph(const Graph& g, const NodeSet& s);

// Same node set and features as `g`; keeps edge (u, v) iff u and v share a
// block of `p`.
Graph PartitionRestrictedGraph(const Graph& g, const CoalitionStructure& p);

// Maximal connected pieces of `within` using only edges of `g` whose
// endpoints both lie in `within`. Ordered by smallest member.
std::vector<NodeSet> ConnectedComponents(const Graph& g,
                                         const NodeSet& within);

// Nodes at hop distance <= hops from any of `centers`.
NodeSet KHopNeighborhood(const Graph& g, std::span<const NodeId> centers,
                         int hops);

}  // namespace graphext

#endif  // GRAPHEXT_GRAPH_H_
