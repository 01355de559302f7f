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

#include "graphext/eval.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "graphext/error.h"

namespace graphext {
namespace {

void CheckMask(const EvalItem& item) {
  if (item.graph == nullptr) throw ValidationError("eval item without graph");
  if (static_cast<int>(item.mask.size()) != item.graph->num_nodes()) {
    throw ValidationError("mask length " + std::to_string(item.mask.size()) +
                          " != num_nodes " +
                          std::to_string(item.graph->num_nodes()));
  }
}

double MeanDrop(const ModelSpec& model, std::span<const EvalItem> items,
                bool complement) {
  if (items.empty()) return 0.0;
  double sum = 0.0;
  for (const EvalItem& item : items) {
    CheckMask(item);
    const double full =
        ForwardClassScore(model, *item.graph, item.label, ScoreScale::kProb);
    const double masked = ForwardClassScore(
        model, ApplyFeatureMask(*item.graph, item.mask, complement),
        item.label, ScoreScale::kProb);
    sum += full - masked;
  }
  return sum / static_cast<double>(items.size());
}

}  // namespace

Graph ApplyFeatureMask(const Graph& g, const std::vector<bool>& mask,
                       bool complement) {
  if (static_cast<int>(mask.size()) != g.num_nodes()) {
    throw ValidationError("mask length does not match graph");
  }
  Eigen::MatrixXd features = g.features();
  for (int i = 0; i < g.num_nodes(); ++i) {
    if (mask[i] == complement) features.row(i).setZero();
  }
  Graph out(g.num_nodes(), std::move(features), g.edges());
  out.set_label(g.label());
  out.set_name(g.name());
  return out;
}

std::vector<bool> MaskFromNodeSet(const NodeSet& nodes, int num_nodes) {
  nodes.Validate(num_nodes);
  std::vector<bool> mask(num_nodes, false);
  for (NodeId m : nodes) mask[m] = true;
  return mask;
}

double FidelityPlus(const ModelSpec& model, std::span<const EvalItem> items) {
  return MeanDrop(model, items, /*complement=*/true);
}

double FidelityMinus(const ModelSpec& model, std::span<const EvalItem> items) {
  return MeanDrop(model, items, /*complement=*/false);
}

double Sparsity(std::span<const EvalItem> items) {
  if (items.empty()) return 0.0;
  double sum = 0.0;
  for (const EvalItem& item : items) {
    CheckMask(item);
    const int total = item.graph->num_nodes();
    if (total == 0) throw ValidationError("sparsity of a 0-node graph");
    const auto selected = std::count(item.mask.begin(), item.mask.end(), true);
    sum += 1.0 - static_cast<double>(selected) / total;
  }
  return sum / static_cast<double>(items.size());
}

int KeepCount(double level, int num_nodes) {
  const int k = static_cast<int>(std::lround((1.0 - level) * num_nodes));
  return std::clamp(k, 1, num_nodes);
}

std::vector<FidelityPoint> SparsitySweep(
    const ModelSpec& model, std::span<const Graph> graphs,
    std::span<const ImportanceReport> reports, std::span<const double> levels) {
  if (graphs.size() != reports.size()) {
    throw ValidationError("need one report per graph");
  }
  for (double level : levels) {
    if (!(level > 0.0 && level < 1.0)) {
      throw ValidationError("sparsity level " + std::to_string(level) +
                            " outside (0, 1)");
    }
  }
  std::vector<FidelityPoint> points;
  for (double level : levels) {
    std::vector<EvalItem> items;
    items.reserve(graphs.size());
    double k_sum = 0.0;
    for (size_t i = 0; i < graphs.size(); ++i) {
      const int n = graphs[i].num_nodes();
      if (n == 0) throw ValidationError("cannot sweep a 0-node graph");
      const int k = KeepCount(level, n);
      k_sum += k;
      items.push_back(
          {&graphs[i], MaskFromNodeSet(TopKMask(reports[i], k), n),
           reports[i].explained_class});
    }
    FidelityPoint point;
    point.sparsity = Sparsity(items);
    point.fidelity_plus = FidelityPlus(model, items);
    point.fidelity_minus = FidelityMinus(model, items);
    point.k_mean = graphs.empty() ? 0.0 : k_sum / graphs.size();
    points.push_back(point);
  }
  std::stable_sort(points.begin(), points.end(),
                   [](const FidelityPoint& a, const FidelityPoint& b) {
                     return a.sparsity < b.sparsity;
                   });
  return points;
}

std::vector<FidelityPoint> SparsitySweep(const ModelSpec& model,
                                         std::span<const Graph> graphs,
                                         const SampleConfig& config,
                                         std::span<const double> levels) {
  std::vector<ImportanceReport> reports;
  reports.reserve(graphs.size());
  for (const Graph& g : graphs) reports.push_back(ExplainGraph(model, g, config));
  return SparsitySweep(model, graphs, reports, levels);
}

std::string SweepToCsv(std::span<const FidelityPoint> points) {
  std::string out = "sparsity,fidelity_plus,fidelity_minus,k_mean\n";
  char line[160];
  for (const FidelityPoint& p : points) {
    std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g,%.17g\n", p.sparsity,
                  p.fidelity_plus, p.fidelity_minus, p.k_mean);
    out += line;
  }
  return out;
}

}  // namespace graphext
