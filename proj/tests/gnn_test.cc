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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "graphext/error.h"
#include "graphext/io.h"
#include "graphext/rng.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace graphext {
namespace {

using Vec = std::vector<double>;

// Plain-loop forward pass, independent of the Eigen implementation.
Vec NaiveLogits(const ModelSpec& m, const Graph& g) {
  const int n = g.num_nodes();
  std::vector<Vec> h(n);
  for (int i = 0; i < n; ++i) {
    for (int c = 0; c < g.feature_dim(); ++c) h[i].push_back(g.features()(i, c));
  }
  for (const LayerSpec& layer : m.layers) {
    std::vector<Vec> agg(n, Vec(layer.in_dim(), 0.0));
    for (int i = 0; i < n; ++i) {
      for (int c = 0; c < layer.in_dim(); ++c) {
        if (layer.kind == LayerKind::kGcn) {
          const double di = g.degree(i) + 1.0;
          agg[i][c] += h[i][c] / di;
          for (NodeId j : g.neighbors(i)) {
            agg[i][c] += h[j][c] / std::sqrt(di * (g.degree(j) + 1.0));
          }
        } else {
          agg[i][c] += (1.0 + layer.epsilon) * h[i][c];
          for (NodeId j : g.neighbors(i)) agg[i][c] += h[j][c];
        }
      }
    }
    for (int i = 0; i < n; ++i) {
      Vec out(layer.out_dim(), 0.0);
      for (int o = 0; o < layer.out_dim(); ++o) {
        double s = layer.bias(o);
        for (int c = 0; c < layer.in_dim(); ++c) s += agg[i][c] * layer.weight(c, o);
        out[o] = layer.activation == Activation::kRelu ? std::max(0.0, s) : s;
      }
      h[i] = out;
    }
  }
  Vec pooled(m.embedding_dim(), 0.0);
  for (int i = 0; i < n; ++i) {
    for (int c = 0; c < m.embedding_dim(); ++c) pooled[c] += h[i][c];
  }
  if (m.readout == Readout::kMean && n > 0) {
    for (double& x : pooled) x /= n;
  }
  for (const DenseLayer& dense : m.head) {
    Vec out(dense.weight.cols(), 0.0);
    for (int o = 0; o < dense.weight.cols(); ++o) {
      double s = dense.bias(o);
      for (int c = 0; c < dense.weight.rows(); ++c) s += pooled[c] * dense.weight(c, o);
      out[o] = dense.activation == Activation::kRelu ? std::max(0.0, s) : s;
    }
    pooled = out;
  }
  return pooled;
}

ArchSpec GcnArch() {
  ArchSpec arch;
  arch.kind = LayerKind::kGcn;
  arch.layer_dims = {3, 6, 6};
  arch.head_dims = {6, 4, 3};
  arch.num_classes = 3;
  return arch;
}

Graph Relabel(const Graph& g, const std::vector<int>& perm) {
  Eigen::MatrixXd x(g.num_nodes(), g.feature_dim());
  for (int i = 0; i < g.num_nodes(); ++i) x.row(perm[i]) = g.features().row(i);
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) edges.push_back({perm[e.u], perm[e.v]});
  return Graph(g.num_nodes(), x, edges);
}

// Disjoint union, second graph's nodes after the first's.
Graph Union(const Graph& a, const Graph& b) {
  Eigen::MatrixXd x(a.num_nodes() + b.num_nodes(), a.feature_dim());
  x << a.features(), b.features();
  std::vector<Edge> edges = a.edges();
  for (const Edge& e : b.edges()) {
    edges.push_back({e.u + a.num_nodes(), e.v + a.num_nodes()});
  }
  return Graph(a.num_nodes() + b.num_nodes(), x, edges);
}

TEST(ForwardTest, MatchesNaiveImplementation) {
  RandomStream rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const Graph g = testing::RandomGraph(1 + trial % 8, 3, 0.4, rng);
    ArchSpec arch = GcnArch();
    if (trial % 2) {
      arch.kind = LayerKind::kGin;
      arch.epsilon = 0.3;
    }
    arch.readout = trial % 3 == 0 ? Readout::kMean : Readout::kSum;
    const ModelSpec m = InitModel(arch, trial);
    const Vec expected = NaiveLogits(m, g);
    const Prediction p = Forward(m, g);
    for (int c = 0; c < 3; ++c) EXPECT_NEAR(p.logits(c), expected[c], 1e-12);
  }
}

TEST(ForwardTest, SingleNodeGinCollapsesToAffineMap) {
  LayerSpec layer;
  layer.kind = LayerKind::kGin;
  layer.weight.resize(2, 2);
  layer.weight << 1, 2, 3, 4;
  layer.bias.resize(2);
  layer.bias << 0.5, -0.5;
  layer.activation = Activation::kIdentity;
  DenseLayer head;
  head.weight = Eigen::MatrixXd::Identity(2, 2);
  head.bias = Eigen::VectorXd::Zero(2);
  ModelSpec m;
  m.layers = {layer};
  m.head = {head};
  m.output = OutputKind::kLogits;
  Eigen::MatrixXd x(1, 2);
  x << 1.0, -2.0;
  const Prediction p = Forward(m, Graph(1, x, {}));
  EXPECT_DOUBLE_EQ(p.logits(0), 1.0 * 1 - 2.0 * 3 + 0.5);
  EXPECT_DOUBLE_EQ(p.logits(1), 1.0 * 2 - 2.0 * 4 - 0.5);
}

TEST(ForwardTest, EmptyGraphWithZeroBiasesIsUniform) {
  ArchSpec arch = GcnArch();
  ModelSpec m = InitModel(arch, 4);
  for (LayerSpec& l : m.layers) l.bias.setZero();
  for (DenseLayer& d : m.head) d.bias.setZero();
  const Prediction p = Forward(m, Graph(0, Eigen::MatrixXd(0, 3), {}));
  for (int c = 0; c < 3; ++c) EXPECT_DOUBLE_EQ(p.probabilities(c), 1.0 / 3);
  EXPECT_DOUBLE_EQ(ForwardClassScore(m, Graph(0, Eigen::MatrixXd(0, 3), {}), 2,
                                     ScoreScale::kProb),
                   1.0 / 3);
  arch.readout = Readout::kMean;
  const ModelSpec mean = InitModel(arch, 4);
  const Graph empty(0, Eigen::MatrixXd(0, 3), {});
  const Vec expected = NaiveLogits(mean, empty);
  const Prediction q = Forward(mean, empty);
  for (int c = 0; c < 3; ++c) EXPECT_DOUBLE_EQ(q.logits(c), expected[c]);
}

TEST(ForwardTest, TwoCopiesDoubleTheLogits) {
  const ModelSpec m = testing::ZeroBiasLinearHeadModel(LayerKind::kGin, 2, 4, 3, 9);
  Eigen::MatrixXd x(1, 2);
  x << 0.7, -0.2;
  const Graph one(1, x, {});
  const Graph two = Union(one, one);
  const Prediction a = Forward(m, one);
  const Prediction b = Forward(m, two);
  for (int c = 0; c < 3; ++c) EXPECT_DOUBLE_EQ(b.logits(c), 2.0 * a.logits(c));
}

TEST(ForwardTest, ComponentAdditivityAtLogitScale) {
  RandomStream rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    const LayerKind kind = trial % 2 ? LayerKind::kGcn : LayerKind::kGin;
    const ModelSpec m = testing::ZeroBiasLinearHeadModel(kind, 2, 5, 3, trial);
    const Graph g1 = testing::RandomGraph(4, 2, 0.5, rng);
    const Graph g2 = testing::RandomGraph(4, 2, 0.5, rng);
    for (int y = 0; y < 3; ++y) {
      EXPECT_NEAR(ForwardClassScore(m, Union(g1, g2), y, ScoreScale::kLogit),
                  ForwardClassScore(m, g1, y, ScoreScale::kLogit) +
                      ForwardClassScore(m, g2, y, ScoreScale::kLogit),
                  1e-9);
    }
  }
}

TEST(ForwardTest, PermutationInvariance) {
  RandomStream rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + trial % 7;
    const Graph g = testing::RandomGraph(n, 3, 0.45, rng);
    ArchSpec arch = GcnArch();
    arch.kind = trial % 2 ? LayerKind::kGcn : LayerKind::kGin;
    arch.readout = trial % 3 ? Readout::kSum : Readout::kMean;
    const ModelSpec m = InitModel(arch, 100 + trial);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = n - 1; i > 0; --i) {
      std::swap(perm[i], perm[rng.NextBelow(i + 1)]);
    }
    const Prediction a = Forward(m, g);
    const Prediction b = Forward(m, Relabel(g, perm));
    for (int c = 0; c < 3; ++c) EXPECT_NEAR(a.logits(c), b.logits(c), 1e-12);
    EXPECT_EQ(a.label, b.label);
  }
}

TEST(ForwardTest, SoftmaxIsNormalizedAndStable) {
  RandomStream rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    const Graph g = testing::RandomGraph(1 + trial % 9, 3, 0.3, rng);
    ModelSpec m = InitModel(GcnArch(), trial);
    m.head.back().weight *= (trial % 5 == 0) ? 1e4 : 1.0;
    const Prediction p = Forward(m, g);
    EXPECT_NEAR(p.probabilities.sum(), 1.0, 1e-9);
    EXPECT_GE(p.probabilities.minCoeff(), 0.0);
    double total = 0.0;
    for (int y = 0; y < 3; ++y) total += ForwardClassScore(m, g, y, ScoreScale::kProb);
    EXPECT_NEAR(total, 1.0, 1e-9);
    int argmax = 0;
    for (int c = 1; c < 3; ++c) {
      if (p.logits(c) > p.logits(argmax)) argmax = c;
    }
    EXPECT_EQ(p.label, argmax);
  }
}

TEST(ForwardTest, LabelTieBreaksToLowestIndex) {
  ModelSpec m = InitModel(GcnArch(), 1);
  for (DenseLayer& d : m.head) {
    d.weight.setZero();
    d.bias.setZero();
  }
  EXPECT_EQ(Forward(m, Graph::WithConstantFeatures(2, {{0, 1}}, 3)).label, 0);
}

TEST(ForwardTest, IsBitDeterministic) {
  RandomStream rng(5);
  const Graph g = testing::RandomGraph(8, 3, 0.4, rng);
  const ModelSpec m = InitModel(GcnArch(), 3);
  const Prediction a = Forward(m, g);
  const Prediction b = Forward(m, g);
  EXPECT_EQ(a.logits, b.logits);
  EXPECT_EQ(a.probabilities, b.probabilities);
}

TEST(ForwardTest, ShapeAndClassErrors) {
  const ModelSpec m = InitModel(GcnArch(), 3);
  EXPECT_THROW(Forward(m, Graph::WithConstantFeatures(2, {}, 2)), ModelShapeError);
  const Graph g = Graph::WithConstantFeatures(2, {}, 3);
  EXPECT_THROW(ForwardClassScore(m, g, 3, ScoreScale::kProb), ValidationError);
  EXPECT_THROW(ForwardClassScore(m, g, -1, ScoreScale::kProb), ValidationError);
  ModelSpec broken = m;
  broken.layers[1].weight.resize(5, 6);
  EXPECT_THROW(broken.Validate(), ModelShapeError);
  EXPECT_THROW(Forward(broken, g), ModelShapeError);
}

TEST(ForwardNodeTest, HeadAppliedToTargetEmbedding) {
  RandomStream rng(2);
  const Graph g = testing::RandomConnectedGraph(6, 3, 0.2, rng);
  const ModelSpec m = InitModel(GcnArch(), 8);
  const Eigen::MatrixXd h = NodeEmbeddings(m, g);
  for (NodeId t = 0; t < 6; ++t) {
    Eigen::RowVectorXd z = h.row(t);
    for (const DenseLayer& d : m.head) {
      z = z * d.weight + d.bias.transpose();
      if (d.activation == Activation::kRelu) z = z.cwiseMax(0.0);
    }
    const Prediction p = ForwardNode(m, g, t);
    for (int c = 0; c < 3; ++c) EXPECT_NEAR(p.logits(c), z(c), 1e-12);
  }
  EXPECT_THROW(ForwardNode(m, g, 6), InvalidNodeError);
}

TEST(ForwardLinkTest, SymmetricInEndpoints) {
  RandomStream rng(12);
  const Graph g = testing::RandomConnectedGraph(6, 3, 0.2, rng);
  const ModelSpec m = InitModel(GcnArch(), 8);
  EXPECT_EQ(ForwardLink(m, g, 1, 4).logits, ForwardLink(m, g, 4, 1).logits);
}

TEST(InitModelTest, DeterministicPerSeed) {
  ArchSpec arch;
  arch.kind = LayerKind::kGin;
  arch.layer_dims = {10, 16, 16, 8};
  arch.head_dims = {8, 2};
  const ModelSpec a = InitModel(arch, 42);
  const ModelSpec b = InitModel(arch, 42);
  const ModelSpec c = InitModel(arch, 43);
  EXPECT_TRUE(a == b);
  EXPECT_FALSE(a == c);
  EXPECT_EQ(ModelToJson(a), ModelToJson(b));
}

TEST(InitModelTest, LayerShapesAndRange) {
  ArchSpec arch;
  arch.kind = LayerKind::kGin;
  arch.layer_dims = {10, 16, 16, 8};
  arch.head_dims = {8, 2};
  const ModelSpec m = InitModel(arch, 1);
  ASSERT_EQ(m.layers.size(), 3u);
  EXPECT_EQ(m.layers[0].weight.rows(), 10);
  EXPECT_EQ(m.layers[0].weight.cols(), 16);
  EXPECT_EQ(m.layers[1].weight.rows(), 16);
  EXPECT_EQ(m.layers[1].weight.cols(), 16);
  EXPECT_EQ(m.layers[2].weight.rows(), 16);
  EXPECT_EQ(m.layers[2].weight.cols(), 8);
  for (const LayerSpec& l : m.layers) {
    const double bound = 1.0 / std::sqrt(l.in_dim());
    EXPECT_LE(l.weight.cwiseAbs().maxCoeff(), bound);
    EXPECT_LE(l.bias.cwiseAbs().maxCoeff(), bound);
  }
  EXPECT_EQ(m.head.back().activation, Activation::kIdentity);
}

TEST(InitModelTest, RejectsInconsistentDims) {
  ArchSpec arch;
  arch.layer_dims = {4, 8};
  arch.head_dims = {6, 2};
  EXPECT_THROW(InitModel(arch, 0), ModelShapeError);
  arch.head_dims = {8, 3};
  EXPECT_THROW(InitModel(arch, 0), ModelShapeError);
}

TEST(ModelJsonTest, RoundTripIsExact) {
  for (uint64_t seed = 0; seed < 10; ++seed) {
    ArchSpec arch = GcnArch();
    if (seed % 2) {
      arch.kind = LayerKind::kGin;
      arch.epsilon = 0.1 * seed;
    }
    const ModelSpec m = InitModel(arch, seed);
    const ModelSpec back = ModelFromJson(ModelToJson(m));
    EXPECT_TRUE(back == m);
  }
}

TEST(ModelJsonTest, EpsilonPresentIffGin) {
  const char* gcn_with_eps =
      R"({"layers":[{"kind":"gcn","weight":[[1]],"bias":[0],"epsilon":0.0,"activation":"relu"}],)"
      R"("readout":"sum","head":[{"weight":[[1,1]],"bias":[0,0],"activation":"identity"}],)"
      R"("num_classes":2,"output":"softmax"})";
  const char* gin_without_eps =
      R"({"layers":[{"kind":"gin","weight":[[1]],"bias":[0],"activation":"relu"}],)"
      R"("readout":"sum","head":[{"weight":[[1,1]],"bias":[0,0],"activation":"identity"}],)"
      R"("num_classes":2,"output":"softmax"})";
  EXPECT_THROW(ModelFromJson(gcn_with_eps), ParseError);
  EXPECT_THROW(ModelFromJson(gin_without_eps), ParseError);
}

}  // namespace
}  // namespace graphext
