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

#include "graphext/io.h"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "graphext/error.h"

namespace graphext {
namespace {

using json = nlohmann::ordered_json;

json Parse(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

// Runs `fn`, turning nlohmann type/range errors into ParseError.
template <typename Fn>
auto Guard(std::string_view what, Fn&& fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

void RequireObject(const json& j, std::string_view what) {
  if (!j.is_object()) throw ParseError(std::string(what) + " must be an object");
}

void RejectUnknownKeys(const json& j, const std::set<std::string>& allowed,
                       std::string_view what) {
  for (const auto& [key, value] : j.items()) {
    if (!allowed.contains(key)) {
      throw ParseError("unknown key \"" + key + "\" in " + std::string(what));
    }
  }
}

const json& Require(const json& j, const char* key, std::string_view what) {
  auto it = j.find(key);
  if (it == j.end()) {
    throw ParseError(std::string(what) + " is missing \"" + key + "\"");
  }
  return *it;
}

int GetInt(const json& j, std::string_view what) {
  if (!j.is_number_integer()) {
    throw ParseError(std::string(what) + " must be an integer");
  }
  return j.get<int>();
}

double GetNumber(const json& j, std::string_view what) {
  if (!j.is_number()) throw ParseError(std::string(what) + " must be a number");
  return j.get<double>();
}

json MatrixToJson(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

json VectorToJson(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

Eigen::MatrixXd MatrixFromJson(const json& j, std::string_view what,
                               int expected_cols = -1) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
  const int rows = static_cast<int>(j.size());
  int cols = expected_cols;
  if (cols < 0) {
    if (rows == 0) throw ParseError(std::string(what) + " is empty");
    if (!j[0].is_array()) {
      throw ParseError(std::string(what) + " rows must be arrays");
    }
    cols = static_cast<int>(j[0].size());
  }
  Eigen::MatrixXd m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const json& row = j[r];
    if (!row.is_array() || static_cast<int>(row.size()) != cols) {
      throw ParseError(std::string(what) + " row " + std::to_string(r) +
                       " must have " + std::to_string(cols) + " entries");
    }
    for (int c = 0; c < cols; ++c) m(r, c) = GetNumber(row[c], what);
  }
  return m;
}

Eigen::VectorXd VectorFromJson(const json& j, std::string_view what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
  Eigen::VectorXd v(j.size());
  for (size_t i = 0; i < j.size(); ++i) v[i] = GetNumber(j[i], what);
  return v;
}

std::string_view ActivationName(Activation a) {
  return a == Activation::kRelu ? "relu" : "identity";
}

Activation ParseActivation(const json& j) {
  const std::string name = Guard("activation", [&] { return j.get<std::string>(); });
  if (name == "relu") return Activation::kRelu;
  if (name == "identity") return Activation::kIdentity;
  throw ParseError("unknown activation \"" + name + "\"");
}

std::string_view ReadoutName(Readout r) {
  return r == Readout::kSum ? "sum" : "mean";
}

Readout ParseReadout(const json& j) {
  const std::string name = Guard("readout", [&] { return j.get<std::string>(); });
  if (name == "sum") return Readout::kSum;
  if (name == "mean") return Readout::kMean;
  throw ParseError("unknown readout \"" + name + "\"");
}

std::string_view OutputName(OutputKind o) {
  return o == OutputKind::kSoftmax ? "softmax" : "logits";
}

OutputKind ParseOutput(const json& j) {
  const std::string name = Guard("output", [&] { return j.get<std::string>(); });
  if (name == "softmax") return OutputKind::kSoftmax;
  if (name == "logits") return OutputKind::kLogits;
  throw ParseError("unknown output \"" + name + "\"");
}

std::string_view LayerKindName(LayerKind k) {
  return k == LayerKind::kGcn ? "gcn" : "gin";
}

LayerKind ParseLayerKind(const json& j) {
  const std::string name = Guard("kind", [&] { return j.get<std::string>(); });
  if (name == "gcn") return LayerKind::kGcn;
  if (name == "gin") return LayerKind::kGin;
  throw ParseError("unknown layer kind \"" + name + "\"");
}

std::vector<int> IntList(const json& j, std::string_view what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
  std::vector<int> out;
  for (const json& x : j) out.push_back(GetInt(x, what));
  return out;
}

json NodeSetToJson(const NodeSet& s) {
  json out = json::array();
  for (NodeId m : s) out.push_back(m);
  return out;
}

}  // namespace

std::string GraphToJson(const Graph& g) {
  json j;
  j["num_nodes"] = g.num_nodes();
  j["feature_dim"] = g.feature_dim();
  j["features"] = MatrixToJson(g.features());
  json edges = json::array();
  for (const Edge& e : g.edges()) edges.push_back({e.u, e.v});
  j["edges"] = std::move(edges);
  if (g.label()) j["label"] = *g.label();
  if (!g.name().empty()) j["name"] = g.name();
  return j.dump();
}

Graph GraphFromJson(std::string_view text) {
  const json j = Parse(text);
  RequireObject(j, "graph");
  RejectUnknownKeys(
      j, {"num_nodes", "feature_dim", "features", "edges", "label", "name"},
      "graph");
  const int n = GetInt(Require(j, "num_nodes", "graph"), "num_nodes");
  const int d = GetInt(Require(j, "feature_dim", "graph"), "feature_dim");
  if (n < 0 || d < 0) throw ParseError("num_nodes and feature_dim must be >= 0");
  Eigen::MatrixXd features = MatrixFromJson(Require(j, "features", "graph"),
                                            "features", d);
  if (features.rows() != n) {
    throw ParseError("features has " + std::to_string(features.rows()) +
                     " rows, num_nodes is " + std::to_string(n));
  }
  const json& edges_json = Require(j, "edges", "graph");
  if (!edges_json.is_array()) throw ParseError("edges must be an array");
  std::vector<Edge> edges;
  for (const json& e : edges_json) {
    if (!e.is_array() || e.size() != 2) {
      throw ParseError("each edge must be a 2-element array");
    }
    const int u = GetInt(e[0], "edge endpoint");
    const int v = GetInt(e[1], "edge endpoint");
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw ParseError("edge [" + std::to_string(u) + ", " + std::to_string(v) +
                       "] has an endpoint outside [0, " + std::to_string(n) +
                       ")");
    }
    if (u >= v) {
      throw ParseError("edge [" + std::to_string(u) + ", " + std::to_string(v) +
                       "] must satisfy u < v");
    }
    edges.push_back({u, v});
  }
  try {
    Graph g(n, std::move(features), std::move(edges));
    if (j.contains("label")) g.set_label(GetInt(j["label"], "label"));
    if (j.contains("name")) {
      g.set_name(Guard("name", [&] { return j["name"].get<std::string>(); }));
    }
    return g;
  } catch (const ParseError&) {
    throw;
  } catch (const ValidationError& e) {
    throw ParseError(e.what());
  }
}

std::string ModelToJson(const ModelSpec& model) {
  json j;
  json layers = json::array();
  for (const LayerSpec& layer : model.layers) {
    json l;
    l["kind"] = LayerKindName(layer.kind);
    l["weight"] = MatrixToJson(layer.weight);
    l["bias"] = VectorToJson(layer.bias);
    if (layer.kind == LayerKind::kGin) l["epsilon"] = layer.epsilon;
    l["activation"] = ActivationName(layer.activation);
    layers.push_back(std::move(l));
  }
  j["layers"] = std::move(layers);
  j["readout"] = ReadoutName(model.readout);
  json head = json::array();
  for (const DenseLayer& dense : model.head) {
    json h;
    h["weight"] = MatrixToJson(dense.weight);
    h["bias"] = VectorToJson(dense.bias);
    h["activation"] = ActivationName(dense.activation);
    head.push_back(std::move(h));
  }
  j["head"] = std::move(head);
  j["num_classes"] = model.num_classes;
  j["output"] = OutputName(model.output);
  return j.dump();
}

ModelSpec ModelFromJson(std::string_view text) {
  const json j = Parse(text);
  RequireObject(j, "model");
  RejectUnknownKeys(j, {"layers", "readout", "head", "num_classes", "output"},
                    "model");
  ModelSpec model;
  const json& layers = Require(j, "layers", "model");
  if (!layers.is_array()) throw ParseError("layers must be an array");
  for (const json& l : layers) {
    RequireObject(l, "layer");
    RejectUnknownKeys(l, {"kind", "weight", "bias", "epsilon", "activation"},
                      "layer");
    LayerSpec layer;
    layer.kind = ParseLayerKind(Require(l, "kind", "layer"));
    layer.weight = MatrixFromJson(Require(l, "weight", "layer"), "weight");
    layer.bias = VectorFromJson(Require(l, "bias", "layer"), "bias");
    if (layer.kind == LayerKind::kGin) {
      layer.epsilon = GetNumber(Require(l, "epsilon", "gin layer"), "epsilon");
    } else if (l.contains("epsilon")) {
      throw ParseError("epsilon is only valid on gin layers");
    }
    layer.activation = ParseActivation(Require(l, "activation", "layer"));
    model.layers.push_back(std::move(layer));
  }
  model.readout = ParseReadout(Require(j, "readout", "model"));
  const json& head = Require(j, "head", "model");
  if (!head.is_array()) throw ParseError("head must be an array");
  for (const json& h : head) {
    RequireObject(h, "head layer");
    RejectUnknownKeys(h, {"weight", "bias", "activation"}, "head layer");
    DenseLayer dense;
    dense.weight = MatrixFromJson(Require(h, "weight", "head layer"), "weight");
    dense.bias = VectorFromJson(Require(h, "bias", "head layer"), "bias");
    dense.activation = ParseActivation(Require(h, "activation", "head layer"));
    model.head.push_back(std::move(dense));
  }
  model.num_classes = GetInt(Require(j, "num_classes", "model"), "num_classes");
  model.output = ParseOutput(Require(j, "output", "model"));
  model.Validate();
  return model;
}

ArchSpec ArchFromJson(std::string_view text) {
  const json j = Parse(text);
  RequireObject(j, "architecture");
  RejectUnknownKeys(j,
                    {"kind", "layer_dims", "head_dims", "readout", "output",
                     "epsilon", "num_classes"},
                    "architecture");
  ArchSpec arch;
  arch.kind = ParseLayerKind(Require(j, "kind", "architecture"));
  arch.layer_dims = IntList(Require(j, "layer_dims", "architecture"), "layer_dims");
  arch.head_dims = IntList(Require(j, "head_dims", "architecture"), "head_dims");
  if (j.contains("readout")) arch.readout = ParseReadout(j["readout"]);
  if (j.contains("output")) arch.output = ParseOutput(j["output"]);
  if (j.contains("epsilon")) arch.epsilon = GetNumber(j["epsilon"], "epsilon");
  arch.num_classes = j.contains("num_classes")
                         ? GetInt(j["num_classes"], "num_classes")
                         : (arch.head_dims.empty() ? 0 : arch.head_dims.back());
  arch.Validate();
  return arch;
}

std::string ArchToJson(const ArchSpec& arch) {
  json j;
  j["kind"] = LayerKindName(arch.kind);
  j["layer_dims"] = arch.layer_dims;
  j["head_dims"] = arch.head_dims;
  j["readout"] = ReadoutName(arch.readout);
  j["output"] = OutputName(arch.output);
  j["epsilon"] = arch.epsilon;
  j["num_classes"] = arch.num_classes;
  return j.dump();
}

std::string ReportToJson(const ImportanceReport& report) {
  std::vector<size_t> order(report.node_ids.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&report](size_t a, size_t b) {
    if (report.shapley[a] != report.shapley[b]) {
      return report.shapley[a] > report.shapley[b];
    }
    return report.node_ids[a] < report.node_ids[b];
  });
  json j;
  j["task"] = TaskKindName(report.task);
  j["explained_class"] = report.explained_class;
  json nodes = json::array();
  for (size_t i : order) {
    json node;
    node["id"] = report.node_ids[i];
    node["shapley"] = report.shapley[i];
    node["std_error"] = report.std_errors[i];
    nodes.push_back(std::move(node));
  }
  j["nodes"] = std::move(nodes);
  j["pinned"] = report.pinned;
  json config;
  config["samples"] = report.num_samples;
  config["seed"] = report.seed;
  config["scale"] = ScaleName(report.scale);
  j["config"] = std::move(config);
  return j.dump();
}

ImportanceReport ReportFromJson(std::string_view text) {
  const json j = Parse(text);
  RequireObject(j, "report");
  RejectUnknownKeys(j, {"task", "explained_class", "nodes", "pinned", "config"},
                    "report");
  ImportanceReport report;
  report.task = ParseTaskKind(
      Guard("task", [&] { return Require(j, "task", "report").get<std::string>(); }));
  report.explained_class =
      GetInt(Require(j, "explained_class", "report"), "explained_class");
  struct Row {
    NodeId id;
    double value;
    double error;
  };
  std::vector<Row> rows;
  const json& nodes = Require(j, "nodes", "report");
  if (!nodes.is_array()) throw ParseError("nodes must be an array");
  for (const json& node : nodes) {
    RequireObject(node, "report node");
    RejectUnknownKeys(node, {"id", "shapley", "std_error"}, "report node");
    rows.push_back({GetInt(Require(node, "id", "report node"), "id"),
                    GetNumber(Require(node, "shapley", "report node"), "shapley"),
                    GetNumber(Require(node, "std_error", "report node"),
                              "std_error")});
  }
  std::sort(rows.begin(), rows.end(),
            [](const Row& a, const Row& b) { return a.id < b.id; });
  for (const Row& r : rows) {
    report.node_ids.push_back(r.id);
    report.shapley.push_back(r.value);
    report.std_errors.push_back(r.error);
  }
  report.pinned = IntList(Require(j, "pinned", "report"), "pinned");
  std::sort(report.pinned.begin(), report.pinned.end());
  for (NodeId p : report.pinned) {
    if (!std::binary_search(report.node_ids.begin(), report.node_ids.end(), p)) {
      throw ParseError("pinned node " + std::to_string(p) + " not in nodes");
    }
  }
  const json& config = Require(j, "config", "report");
  RequireObject(config, "config");
  report.num_samples = Guard("samples", [&] {
    return Require(config, "samples", "config").get<int64_t>();
  });
  report.seed = Guard("seed", [&] {
    return Require(config, "seed", "config").get<uint64_t>();
  });
  report.scale = ParseScale(Guard("scale", [&] {
    return Require(config, "scale", "config").get<std::string>();
  }));
  return report;
}

TableOracle TableOracleFromJson(std::string_view text, bool strict) {
  const json j = Parse(text);
  if (!j.is_array()) throw ParseError("table oracle must be an array");
  int n = -1;
  std::vector<std::pair<std::pair<NodeSet, CoalitionStructure>, double>> rows;
  for (size_t e = 0; e < j.size(); ++e) {
    const json& entry = j[e];
    const std::string where = "table entry " + std::to_string(e);
    RequireObject(entry, where);
    RejectUnknownKeys(entry, {"s", "p", "v"}, where);
    NodeSet s(IntList(Require(entry, "s", where), "s"));
    const json& p_json = Require(entry, "p", where);
    if (!p_json.is_array()) throw ParseError(where + ": p must be an array");
    std::vector<NodeSet> blocks;
    int covered = 0;
    for (const json& block : p_json) {
      blocks.emplace_back(IntList(block, "p block"));
      covered += static_cast<int>(block.size());
    }
    if (n == -1) n = covered;
    if (covered != n) {
      throw ParseError(where + ": partition covers " + std::to_string(covered) +
                       " players, earlier entries cover " + std::to_string(n));
    }
    try {
      CoalitionStructure p(std::move(blocks), n);
      s.Validate(n);
      rows.push_back({{std::move(s), std::move(p)},
                      GetNumber(Require(entry, "v", where), "v")});
    } catch (const ParseError&) {
      throw;
    } catch (const ValidationError& err) {
      throw ParseError(where + ": " + err.what());
    }
  }
  TableOracle oracle(std::max(n, 0), strict);
  for (const auto& [key, value] : rows) oracle.Set(key.first, key.second, value);
  return oracle;
}

std::string TableOracleToJson(const TableOracle& oracle) {
  json j = json::array();
  for (const auto& [key, value] : oracle.Entries()) {
    json entry;
    entry["s"] = NodeSetToJson(key.first);
    json blocks = json::array();
    for (const NodeSet& block : key.second.blocks()) {
      blocks.push_back(NodeSetToJson(block));
    }
    entry["p"] = std::move(blocks);
    entry["v"] = value;
    j.push_back(std::move(entry));
  }
  return j.dump();
}

std::string_view TaskKindName(TaskKind kind) {
  switch (kind) {
    case TaskKind::kGraph:
      return "graph";
    case TaskKind::kNode:
      return "node";
    case TaskKind::kLink:
      return "link";
  }
  return "graph";
}

TaskKind ParseTaskKind(std::string_view name) {
  if (name == "graph") return TaskKind::kGraph;
  if (name == "node") return TaskKind::kNode;
  if (name == "link") return TaskKind::kLink;
  throw ParseError("unknown task kind \"" + std::string(name) + "\"");
}

std::string_view ScaleName(ScoreScale scale) {
  return scale == ScoreScale::kProb ? "prob" : "logit";
}

ScoreScale ParseScale(std::string_view name) {
  if (name == "prob") return ScoreScale::kProb;
  if (name == "logit") return ScoreScale::kLogit;
  throw ParseError("unknown score scale \"" + std::string(name) + "\"");
}

std::string ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path + " for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("error reading " + path);
  return buffer.str();
}

void WriteTextFile(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw IoError("error writing " + path);
}

}  // namespace graphext
