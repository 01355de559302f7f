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

#include "graphext/game.h"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <string>

#include "graphext/error.h"

namespace graphext {
namespace {

constexpr int kMaxExactCap = 12;

uint64_t Factorial(int k) {
  uint64_t f = 1;
  for (int i = 2; i <= k; ++i) f *= static_cast<uint64_t>(i);
  return f;
}

void AppendSet(std::string& out, const NodeSet& s) {
  for (NodeId m : s) {
    out += std::to_string(m);
    out += ',';
  }
}

std::string EmbeddedKey(const NodeSet& s, const CoalitionStructure& p) {
  std::string key;
  AppendSet(key, s);
  key += '|';
  for (const NodeSet& block : p.blocks()) {
    AppendSet(key, block);
    key += ';';
  }
  return key;
}

void CheckCap(int n, int cap) {
  if (cap > kMaxExactCap) {
    throw CapacityError("exact enumeration cap " + std::to_string(cap) +
                        " exceeds the supported maximum " +
                        std::to_string(kMaxExactCap));
  }
  if (n < 0) throw ValidationError("negative player count");
  if (n > cap) {
    throw CapacityError("n = " + std::to_string(n) +
                        " exceeds exact enumeration cap " +
                        std::to_string(cap));
  }
}

}  // namespace

GnnValueOracle::GnnValueOracle(ModelSpec model, Graph graph,
                               int explained_class, ScoreScale scale)
    : model_(std::move(model)),
      graph_(std::move(graph)),
      explained_class_(explained_class),
      scale_(scale) {
  model_.Validate();
  if (graph_.feature_dim() != model_.input_dim()) {
    throw ModelShapeError("graph feature_dim does not match model input dim");
  }
  if (explained_class_ < 0 || explained_class_ >= model_.num_classes) {
    throw ValidationError("explained class out of range");
  }
}

double GnnValueOracle::Value(const NodeSet& s,
                             const CoalitionStructure& p) const {
  return NetworkValue(graph_, model_, explained_class_, s, p, scale_);
}

void TableOracle::Set(const NodeSet& s, const CoalitionStructure& p,
                      double value) {
  s.Validate(num_players_);
  if (p.num_nodes() != num_players_) {
    throw PartitionError("table entry partition has wrong player count");
  }
  table_[Key(s, p)] = {{s, p}, value};
}

double TableOracle::Value(const NodeSet& s,
                          const CoalitionStructure& p) const {
  if (s.empty()) return 0.0;
  auto it = table_.find(Key(s, p));
  if (it != table_.end()) return it->second.second;
  if (strict_) {
    throw ValidationError("no table entry for embedded coalition " +
                          Key(s, p));
  }
  return 0.0;
}

std::vector<std::pair<std::pair<NodeSet, CoalitionStructure>, double>>
TableOracle::Entries() const {
  std::vector<std::pair<std::pair<NodeSet, CoalitionStructure>, double>> out;
  out.reserve(table_.size());
  for (const auto& [key, entry] : table_) out.push_back(entry);
  return out;
}

std::string TableOracle::Key(const NodeSet& s, const CoalitionStructure& p) {
  return EmbeddedKey(s, p);
}

double CachedOracle::Value(const NodeSet& s,
                           const CoalitionStructure& p) const {
  const std::string key = EmbeddedKey(s, p);
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(key);
    if (it != cache_.end()) {
      ++hits_;
      return it->second;
    }
  }
  const double value = inner_.Value(s, p);
  std::lock_guard<std::mutex> lock(mu_);
  ++misses_;
  cache_.emplace(key, value);
  return value;
}

size_t CachedOracle::hits() const {
  std::lock_guard<std::mutex> lock(mu_);
  return hits_;
}

size_t CachedOracle::misses() const {
  std::lock_guard<std::mutex> lock(mu_);
  return misses_;
}

double NetworkValue(const Graph& g, const ModelSpec& model, int y,
                    const NodeSet& s, const CoalitionStructure& p,
                    ScoreScale scale) {
  const int n = g.num_nodes();
  if (p.num_nodes() != n) {
    throw PartitionError("partition covers " + std::to_string(p.num_nodes()) +
                         " nodes, graph has " + std::to_string(n));
  }
  s.Validate(n);

  // 0 = outside s, 1 = unvisited member, 2 = assigned to a component.
  std::vector<char> state(n, 0);
  for (NodeId m : s) state[m] = 1;
  std::vector<int> local(n, -1);
  std::deque<NodeId> queue;
  double total = 0.0;
  for (NodeId root : s) {
    if (state[root] != 1) continue;
    std::vector<NodeId> component = {root};
    state[root] = 2;
    queue.push_back(root);
    while (!queue.empty()) {
      const NodeId u = queue.front();
      queue.pop_front();
      for (NodeId nb : g.neighbors(u)) {
        if (state[nb] == 1 && p.SameBlock(u, nb)) {
          state[nb] = 2;
          component.push_back(nb);
          queue.push_back(nb);
        }
      }
    }
    std::sort(component.begin(), component.end());

    const int k = static_cast<int>(component.size());
    Eigen::MatrixXd features(k, g.feature_dim());
    for (int i = 0; i < k; ++i) {
      local[component[i]] = i;
      features.row(i) = g.features().row(component[i]);
    }
    std::vector<Edge> edges;
    for (int i = 0; i < k; ++i) {
      const NodeId u = component[i];
      for (NodeId nb : g.neighbors(u)) {
        if (local[nb] > i && p.SameBlock(u, nb)) edges.push_back({i, local[nb]});
      }
    }
    for (NodeId m : component) local[m] = -1;
    total += ForwardClassScore(
        model, Graph(k, std::move(features), std::move(edges)), y, scale);
  }
  return total;
}

CoalitionStructure Transfer(const CoalitionStructure& p, const NodeSet& s) {
  s.Validate(p.num_nodes());
  if (s.empty()) return p;
  std::vector<NodeSet> blocks;
  blocks.reserve(p.num_blocks() + 1);
  for (const NodeSet& block : p.blocks()) {
    std::vector<NodeId> rest;
    std::set_difference(block.begin(), block.end(), s.begin(), s.end(),
                        std::back_inserter(rest));
    if (!rest.empty()) blocks.emplace_back(std::move(rest));
  }
  blocks.push_back(s);
  return CoalitionStructure(std::move(blocks), p.num_nodes());
}

void ForEachPartition(
    int n, const std::function<void(const CoalitionStructure&)>& visit,
    int cap) {
  CheckCap(n, cap);
  if (n == 0) {
    visit(CoalitionStructure({}, 0));
    return;
  }
  // Restricted growth string: a[0] = 0, a[i] <= 1 + max(a[0..i-1]).
  std::vector<int> a(n, 0);
  std::vector<int> prefix_max(n, 0);
  while (true) {
    visit(CoalitionStructure::FromLabels(a));
    int i = n - 1;
    while (i > 0 && a[i] > prefix_max[i - 1]) --i;
    if (i == 0) return;
    ++a[i];
    prefix_max[i] = std::max(prefix_max[i - 1], a[i]);
    for (int j = i + 1; j < n; ++j) {
      a[j] = 0;
      prefix_max[j] = prefix_max[i];
    }
  }
}

std::vector<CoalitionStructure> EnumeratePartitions(int n, int cap) {
  std::vector<CoalitionStructure> out;
  ForEachPartition(
      n, [&out](const CoalitionStructure& p) { out.push_back(p); }, cap);
  return out;
}

std::vector<double> ExactShapley(const ValueOracle& v, int n, int cap) {
  CheckCap(n, cap);
  std::vector<uint64_t> fact(n + 1);
  for (int k = 0; k <= n; ++k) fact[k] = Factorial(k);
  const double n_fact = static_cast<double>(fact[n]);

  std::vector<double> phi(n, 0.0);
  ForEachPartition(
      n,
      [&](const CoalitionStructure& p) {
        uint64_t all_blocks = 1;
        for (const NodeSet& block : p.blocks()) all_blocks *= fact[block.size() - 1];
        for (const NodeSet& s : p.blocks()) {
          const double value = v.Value(s, p);
          if (value == 0.0) continue;
          const int size = s.size();
          // prod over T != S of (|T|-1)!
          const uint64_t others = all_blocks / fact[size - 1];
          // i in S: others * (|S|-1)! (n-|S|)! / ((n-|S|)! n!)
          const double in_weight =
              static_cast<double>(others * fact[size - 1]) / n_fact;
          // i not in S: others * |S|! (n-|S|-1)! / ((n-|S|)! n!)
          const double out_weight =
              size == n ? 0.0
                        : static_cast<double>(others * fact[size]) /
                              (static_cast<double>(n - size) * n_fact);
          for (int i = 0; i < n; ++i) {
            phi[i] += s.contains(i) ? in_weight * value : -out_weight * value;
          }
        }
      },
      cap);
  return phi;
}

}  // namespace graphext
