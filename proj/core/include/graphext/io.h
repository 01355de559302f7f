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

#ifndef GRAPHEXT_IO_H_
#define GRAPHEXT_IO_H_

#include <string>
#include <string_view>

#include "graphext/explainer.h"
#include "graphext/game.h"
#include "graphext/gnn.h"
#include "graphext/graph.h"

// JSON encodings of the library types. Writers emit compact single-line JSON
// with a fixed key order and shortest round-trip doubles, so output bytes are
// a pure function of the value. Readers throw ParseError on malformed input.
namespace graphext {

// {"num_nodes", "feature_dim", "features", "edges", ["label"], ["name"]};
// edges are [u, v] with u < v. Unknown keys are rejected.
std::string GraphToJson(const Graph& g);
Graph GraphFromJson(std::string_view text);

std::string ModelToJson(const ModelSpec& model);
ModelSpec ModelFromJson(std::string_view text);

// {"kind", "layer_dims", "head_dims", "readout", "output", "epsilon",
//  "num_classes"}; only kind, layer_dims and head_dims are required.
ArchSpec ArchFromJson(std::string_view text);
std::string ArchToJson(const ArchSpec& arch);

// Nodes sorted by descending shapley, ties by ascending id.
std::string ReportToJson(const ImportanceReport& report);
ImportanceReport ReportFromJson(std::string_view text);

// [{"s": [...], "p": [[...], ...], "v": number}, ...]. The player count is
// taken from the partitions, which must all cover the same node range.
TableOracle TableOracleFromJson(std::string_view text, bool strict = false);
std::string TableOracleToJson(const TableOracle& oracle);

std::string_view TaskKindName(TaskKind kind);
TaskKind ParseTaskKind(std::string_view name);
std::string_view ScaleName(ScoreScale scale);
ScoreScale ParseScale(std::string_view name);

// Throws IoError.
std::string ReadTextFile(const std::string& path);
void WriteTextFile(const std::string& path, std::string_view contents);

}  // namespace graphext

#endif  // GRAPHEXT_IO_H_
