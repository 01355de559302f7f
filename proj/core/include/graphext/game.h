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

#ifndef GRAPHEXT_GAME_H_
#define GRAPHEXT_GAME_H_

#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "graphext/gnn.h"
#include "graphext/graph.h"

namespace graphext {

// Largest player count accepted by the exhaustive routines by default.
// Bell(8) = 4140 partitions.
inline constexpr int kDefaultExactCap = 8;

// Partition-function-form value function V(S, P). Implementations must be
// deterministic, return 0 for S = {}, and be safe to call concurrently.
class ValueOracle {
 public:
  virtual ~ValueOracle() = default;
  virtual double Value(const NodeSet& s, const CoalitionStructure& p) const = 0;
};

// Adapts any callable.
class FunctionOracle : public ValueOracle {
 public:
  using Fn = std::function<double(const NodeSet&, const CoalitionStructure&)>;
  explicit FunctionOracle(Fn fn) : fn_(std::move(fn)) {}
  double Value(const NodeSet& s, const CoalitionStructure& p) const override {
    return fn_(s, p);
  }

 private:
  Fn fn_;
};

// V(S, P) = sum over connected components R of S in the partition-restricted
// graph G_P of f(G_P[R])_y.
class GnnValueOracle : public ValueOracle {
 public:
  GnnValueOracle(ModelSpec model, Graph graph, int explained_class,
                 ScoreScale scale = ScoreScale::kProb);
  double Value(const NodeSet& s, const CoalitionStructure& p) const override;

  const Graph& graph() const { return graph_; }
  const ModelSpec& model() const { return model_; }
  int explained_class() const { return explained_class_; }
  ScoreScale scale() const { return scale_; }

 private:
  ModelSpec model_;
  Graph graph_;
  int explained_class_;
  ScoreScale scale_;
};

// Explicit (S, P) -> value table, used for fixtures. Missing entries are 0,
// or throw ValidationError when strict.
class TableOracle : public ValueOracle {
 public:
  explicit TableOracle(int num_players, bool strict = false)
      : num_players_(num_players), strict_(strict) {}

  void Set(const NodeSet& s, const CoalitionStructure& p, double value);
  double Value(const NodeSet& s, const CoalitionStructure& p) const override;

  int num_players() const { return num_players_; }
  bool strict() const { return strict_; }
  void set_strict(bool strict) { strict_ = strict; }
  size_t size() const { return table_.size(); }

  // Entries in a stable (key) order, for serialization.
  std::vector<std::pair<std::pair<NodeSet, CoalitionStructure>, double>>
  Entries() const;

 private:
  static std::string Key(const NodeSet& s, const CoalitionStructure& p);

  int num_players_;
  bool strict_;
  std::map<std::string, std::pair<std::pair<NodeSet, CoalitionStructure>,
                                  double>>
      table_;
};

// Memoizes another oracle by (sorted S, canonical P). Thread-safe.
class CachedOracle : public ValueOracle {
 public:
  explicit CachedOracle(const ValueOracle& inner) : inner_(inner) {}
  double Value(const NodeSet& s, const CoalitionStructure& p) const override;
  size_t hits() const;
  size_t misses() const;

 private:
  const ValueOracle& inner_;
  mutable std::mutex mu_;
  mutable std::unordered_map<std::string, double> cache_;
  mutable size_t hits_ = 0;
  mutable size_t misses_ = 0;
};

// Network-based value: keep edges whose endpoints share a block of p, find
// the components of s by BFS, and sum the model's class-y score over the
// subgraph each component induces in G_P. Returns 0 for empty s.
double NetworkValue(const Graph& g, const ModelSpec& model, int y,
                    const NodeSet& s, const CoalitionStructure& p,
                    ScoreScale scale = ScoreScale::kProb);

// P_[S]: every block loses its members of s, s becomes its own block, and
// emptied blocks are dropped.
CoalitionStructure Transfer(const CoalitionStructure& p, const NodeSet& s);

// Calls `visit` once per set partition of {0..n-1} in restricted-growth-
// string lexicographic order. Throws CapacityError if n > cap.
void ForEachPartition(int n,
                      const std::function<void(const CoalitionStructure&)>& visit,
                      int cap = kDefaultExactCap);

std::vector<CoalitionStructure> EnumeratePartitions(int n,
                                                    int cap = kDefaultExactCap);

// Shapley value with externalities by full enumeration of embedded
// coalitions (S, P), S in P:
//   phi_i = sum prod_{T in P\S} (|T|-1)! / (n-|S|)! * beta_i(S) * V(S, P)
//   beta_i(S) =  (|S|-1)! (n-|S|)! / n!      if i in S
//             = -|S|! (n-|S|-1)! / n!        otherwise
// Coefficients are formed from exact integer factorials. Throws
// CapacityError if n > cap; cap itself may not exceed 12.
std::vector<double> ExactShapley(const ValueOracle& v, int n,
                                 int cap = kDefaultExactCap);

}  // namespace graphext

#endif  // GRAPHEXT_GAME_H_
