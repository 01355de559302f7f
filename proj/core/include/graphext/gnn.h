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

#ifndef GRAPHEXT_GNN_H_
#define GRAPHEXT_GNN_H_

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "graphext/graph.h"

namespace graphext {

enum class LayerKind { kGcn, kGin };
enum class Activation { kRelu, kIdentity };
enum class Readout { kSum, kMean };
enum class OutputKind { kSoftmax, kLogits };
enum class ScoreScale { kProb, kLogit };

// One message-passing layer.
//   GCN: h_i' = act(sum_{j in N(i) + i} h_j / sqrt((d_i+1)(d_j+1)) W + b)
//   GIN: h_i' = act(((1 + epsilon) h_i + sum_{j in N(i)} h_j) W + b)
struct LayerSpec {
  LayerKind kind = LayerKind::kGin;
  Eigen::MatrixXd weight;  // in_dim x out_dim
  Eigen::VectorXd bias;    // out_dim
  double epsilon = 0.0;    // GIN only
  Activation activation = Activation::kRelu;

  int in_dim() const { return static_cast<int>(weight.rows()); }
  int out_dim() const { return static_cast<int>(weight.cols()); }
};

// Fully connected layer of the classification head: act(x W + b).
struct DenseLayer {
  Eigen::MatrixXd weight;
  Eigen::VectorXd bias;
  Activation activation = Activation::kIdentity;
};

// L message-passing layers, a permutation-invariant readout and an MLP head.
// Graph-level models pool node embeddings with `readout`; node- and
// link-level evaluation (ForwardNode, ForwardLink) skip the readout and feed
// the head with the target embedding(s) instead.
struct ModelSpec {
  std::vector<LayerSpec> layers;
  Readout readout = Readout::kSum;
  std::vector<DenseLayer> head;
  int num_classes = 2;
  OutputKind output = OutputKind::kSoftmax;

  int input_dim() const { return layers.empty() ? 0 : layers.front().in_dim(); }
  int embedding_dim() const {
    return layers.empty() ? 0 : layers.back().out_dim();
  }

  // Throws ModelShapeError if dimensions do not chain or num_classes < 2.
  void Validate() const;

  friend bool operator==(const ModelSpec& a, const ModelSpec& b);
};

struct Prediction {
  Eigen::VectorXd logits;
  // softmax(logits); always filled regardless of ModelSpec::output.
  Eigen::VectorXd probabilities;
  // argmax of logits, lowest index on ties.
  int label = 0;
};

// Final-layer node embeddings (num_nodes x embedding_dim).
Eigen::MatrixXd NodeEmbeddings(const ModelSpec& model, const Graph& g);

// Graph classification. The pooled embedding of a 0-node graph is zero.
Prediction Forward(const ModelSpec& model, const Graph& g);

// Node classification: head applied to the final embedding of `target`.
Prediction ForwardNode(const ModelSpec& model, const Graph& g, NodeId target);

// Link prediction: head applied to h_u * h_v (elementwise). Class 1 is read
// as "edge exists" by convention.
Prediction ForwardLink(const ModelSpec& model, const Graph& g, NodeId u,
                       NodeId v);

// probabilities[y] or logits[y]. Throws ValidationError if y is out of range.
double ClassScore(const Prediction& prediction, int y, ScoreScale scale);

double ForwardClassScore(const ModelSpec& model, const Graph& g, int y,
                         ScoreScale scale);

// Architecture descriptor for seeded initialization. All message-passing
// layers share `kind`; hidden activations are ReLU and the last head layer is
// the identity.
struct ArchSpec {
  LayerKind kind = LayerKind::kGin;
  std::vector<int> layer_dims;  // {in, h1, ..., hL}
  std::vector<int> head_dims;   // {hL, ..., num_classes}
  Readout readout = Readout::kSum;
  OutputKind output = OutputKind::kSoftmax;
  double epsilon = 0.0;
  int num_classes = 2;

  // Throws ModelShapeError on inconsistent dimensions.
  void Validate() const;
};

// Weights and biases uniform in [-1/sqrt(in_dim), 1/sqrt(in_dim)], drawn from
// a RandomStream keyed by `seed` in a fixed layer-major, row-major order.
ModelSpec InitModel(const ArchSpec& arch, uint64_t seed);

}  // namespace graphext

#endif  // GRAPHEXT_GNN_H_
