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

#include "graphext/gnn.h"

#include <cmath>
#include <string>

#include "graphext/error.h"
#include "graphext/rng.h"

namespace graphext {
namespace {

void ApplyActivation(Activation act, Eigen::MatrixXd& m) {
  if (act == Activation::kRelu) m = m.cwiseMax(0.0);
}

std::string Dims(Eigen::Index rows, Eigen::Index cols) {
  return std::to_string(rows) + "x" + std::to_string(cols);
}

Eigen::MatrixXd Aggregate(const LayerSpec& layer, const Graph& g,
                          const Eigen::MatrixXd& h) {
  const int n = g.num_nodes();
  Eigen::MatrixXd agg(n, h.cols());
  if (layer.kind == LayerKind::kGin) {
    for (int i = 0; i < n; ++i) {
      agg.row(i) = (1.0 + layer.epsilon) * h.row(i);
      for (NodeId j : g.neighbors(i)) agg.row(i) += h.row(j);
    }
  } else {
    for (int i = 0; i < n; ++i) {
      const double di = g.degree(i) + 1.0;
      agg.row(i) = h.row(i) / di;
      for (NodeId j : g.neighbors(i)) {
        agg.row(i) += h.row(j) / std::sqrt(di * (g.degree(j) + 1.0));
      }
    }
  }
  return agg;
}

Prediction RunHead(const ModelSpec& model, Eigen::RowVectorXd x) {
  for (const DenseLayer& dense : model.head) {
    Eigen::MatrixXd y = x * dense.weight;
    y.row(0) += dense.bias.transpose();
    ApplyActivation(dense.activation, y);
    x = y.row(0);
  }
  Prediction p;
  p.logits = x.transpose();
  const double max_logit = p.logits.maxCoeff();
  p.probabilities = (p.logits.array() - max_logit).exp().matrix();
  p.probabilities /= p.probabilities.sum();
  p.label = 0;
  for (int c = 1; c < p.logits.size(); ++c) {
    if (p.logits[c] > p.logits[p.label]) p.label = c;
  }
  return p;
}

void CheckInput(const ModelSpec& model, const Graph& g) {
  model.Validate();
  if (g.feature_dim() != model.input_dim()) {
    throw ModelShapeError("graph feature_dim " +
                          std::to_string(g.feature_dim()) +
                          " does not match model input dim " +
                          std::to_string(model.input_dim()));
  }
}

void CheckNode(const Graph& g, NodeId node) {
  if (node < 0 || node >= g.num_nodes()) {
    throw InvalidNodeError("target node " + std::to_string(node) +
                           " out of range");
  }
}

}  // namespace

void ModelSpec::Validate() const {
  if (layers.empty()) throw ModelShapeError("model has no message-passing layers");
  if (head.empty()) throw ModelShapeError("model has no head layers");
  if (num_classes < 2) throw ModelShapeError("num_classes must be >= 2");
  int dim = layers.front().in_dim();
  for (size_t l = 0; l < layers.size(); ++l) {
    const LayerSpec& layer = layers[l];
    if (layer.in_dim() != dim) {
      throw ModelShapeError("layer " + std::to_string(l) + " expects input dim " +
                            std::to_string(layer.in_dim()) + ", got " +
                            std::to_string(dim));
    }
    if (layer.bias.size() != layer.out_dim()) {
      throw ModelShapeError("layer " + std::to_string(l) + " bias has size " +
                            std::to_string(layer.bias.size()) + ", weight is " +
                            Dims(layer.weight.rows(), layer.weight.cols()));
    }
    dim = layer.out_dim();
  }
  for (size_t l = 0; l < head.size(); ++l) {
    const DenseLayer& dense = head[l];
    if (dense.weight.rows() != dim) {
      throw ModelShapeError("head layer " + std::to_string(l) +
                            " expects input dim " +
                            std::to_string(dense.weight.rows()) + ", got " +
                            std::to_string(dim));
    }
    if (dense.bias.size() != dense.weight.cols()) {
      throw ModelShapeError("head layer " + std::to_string(l) +
                            " bias size mismatch");
    }
    dim = static_cast<int>(dense.weight.cols());
  }
  if (dim != num_classes) {
    throw ModelShapeError("head output dim " + std::to_string(dim) +
                          " != num_classes " + std::to_string(num_classes));
  }
}

bool operator==(const ModelSpec& a, const ModelSpec& b) {
  if (a.readout != b.readout || a.num_classes != b.num_classes ||
      a.output != b.output || a.layers.size() != b.layers.size() ||
      a.head.size() != b.head.size()) {
    return false;
  }
  for (size_t l = 0; l < a.layers.size(); ++l) {
    const LayerSpec& x = a.layers[l];
    const LayerSpec& y = b.layers[l];
    if (x.kind != y.kind || x.epsilon != y.epsilon ||
        x.activation != y.activation || x.weight.rows() != y.weight.rows() ||
        x.weight.cols() != y.weight.cols() || x.weight != y.weight ||
        x.bias.size() != y.bias.size() || x.bias != y.bias) {
      return false;
    }
  }
  for (size_t l = 0; l < a.head.size(); ++l) {
    const DenseLayer& x = a.head[l];
    const DenseLayer& y = b.head[l];
    if (x.activation != y.activation || x.weight.rows() != y.weight.rows() ||
        x.weight.cols() != y.weight.cols() || x.weight != y.weight ||
        x.bias.size() != y.bias.size() || x.bias != y.bias) {
      return false;
    }
  }
  return true;
}

Eigen::MatrixXd NodeEmbeddings(const ModelSpec& model, const Graph& g) {
  CheckInput(model, g);
  Eigen::MatrixXd h = g.features();
  for (const LayerSpec& layer : model.layers) {
    Eigen::MatrixXd next = Aggregate(layer, g, h) * layer.weight;
    next.rowwise() += layer.bias.transpose();
    ApplyActivation(layer.activation, next);
    h = std::move(next);
  }
  return h;
}

Prediction Forward(const ModelSpec& model, const Graph& g) {
  const Eigen::MatrixXd h = NodeEmbeddings(model, g);
  Eigen::RowVectorXd pooled = Eigen::RowVectorXd::Zero(model.embedding_dim());
  if (g.num_nodes() > 0) {
    pooled = h.colwise().sum();
    if (model.readout == Readout::kMean) pooled /= g.num_nodes();
  }
  return RunHead(model, std::move(pooled));
}

Prediction ForwardNode(const ModelSpec& model, const Graph& g, NodeId target) {
  CheckNode(g, target);
  const Eigen::MatrixXd h = NodeEmbeddings(model, g);
  return RunHead(model, h.row(target));
}

Prediction ForwardLink(const ModelSpec& model, const Graph& g, NodeId u,
                       NodeId v) {
  CheckNode(g, u);
  CheckNode(g, v);
  const Eigen::MatrixXd h = NodeEmbeddings(model, g);
  return RunHead(model, h.row(u).cwiseProduct(h.row(v)));
}

double ClassScore(const Prediction& prediction, int y, ScoreScale scale) {
  if (y < 0 || y >= prediction.logits.size()) {
    throw ValidationError("class index " + std::to_string(y) +
                          " out of range for " +
                          std::to_string(prediction.logits.size()) +
                          " classes");
  }
  return scale == ScoreScale::kProb ? prediction.probabilities[y]
                                    : prediction.logits[y];
}

double ForwardClassScore(const ModelSpec& model, const Graph& g, int y,
                         ScoreScale scale) {
  if (y < 0 || y >= model.num_classes) {
    throw ValidationError("class index " + std::to_string(y) +
                          " out of range for " +
                          std::to_string(model.num_classes) + " classes");
  }
  return ClassScore(Forward(model, g), y, scale);
}

void ArchSpec::Validate() const {
  if (layer_dims.size() < 2) {
    throw ModelShapeError("layer_dims needs an input dim and >= 1 layer");
  }
  if (head_dims.size() < 2) {
    throw ModelShapeError("head_dims needs an input dim and >= 1 layer");
  }
  for (int d : layer_dims) {
    if (d < 1) throw ModelShapeError("layer dims must be positive");
  }
  for (int d : head_dims) {
    if (d < 1) throw ModelShapeError("head dims must be positive");
  }
  if (head_dims.front() != layer_dims.back()) {
    throw ModelShapeError("head input dim " + std::to_string(head_dims.front()) +
                          " != last layer dim " +
                          std::to_string(layer_dims.back()));
  }
  if (num_classes < 2) throw ModelShapeError("num_classes must be >= 2");
  if (head_dims.back() != num_classes) {
    throw ModelShapeError("head output dim " + std::to_string(head_dims.back()) +
                          " != num_classes " + std::to_string(num_classes));
  }
}

ModelSpec InitModel(const ArchSpec& arch, uint64_t seed) {
  arch.Validate();
  RandomStream rng(seed);
  auto draw = [&rng](int in_dim, int out_dim, Eigen::MatrixXd& w,
                     Eigen::VectorXd& b) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(in_dim));
    w.resize(in_dim, out_dim);
    b.resize(out_dim);
    for (int r = 0; r < in_dim; ++r) {
      for (int c = 0; c < out_dim; ++c) w(r, c) = rng.NextUniform(-bound, bound);
    }
    for (int c = 0; c < out_dim; ++c) b[c] = rng.NextUniform(-bound, bound);
  };

  ModelSpec model;
  model.readout = arch.readout;
  model.output = arch.output;
  model.num_classes = arch.num_classes;
  for (size_t l = 0; l + 1 < arch.layer_dims.size(); ++l) {
    LayerSpec layer;
    layer.kind = arch.kind;
    layer.epsilon = arch.kind == LayerKind::kGin ? arch.epsilon : 0.0;
    layer.activation = Activation::kRelu;
    draw(arch.layer_dims[l], arch.layer_dims[l + 1], layer.weight, layer.bias);
    model.layers.push_back(std::move(layer));
  }
  for (size_t l = 0; l + 1 < arch.head_dims.size(); ++l) {
    DenseLayer dense;
    dense.activation = l + 2 == arch.head_dims.size() ? Activation::kIdentity
                                                      : Activation::kRelu;
    draw(arch.head_dims[l], arch.head_dims[l + 1], dense.weight, dense.bias);
    model.head.push_back(std::move(dense));
  }
  return model;
}

}  // namespace graphext
