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

#ifndef GRAPHEXT_ERROR_H_
#define GRAPHEXT_ERROR_H_

#include <stdexcept>
#include <string>

namespace graphext {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input violates a documented precondition (bad parameter, bad task target).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A node index is outside [0, num_nodes).
class InvalidNodeError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Blocks overlap, miss a node, or are empty.
class PartitionError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Model layer dimensions do not chain, or do not match the graph.
class ModelShapeError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// An exhaustive routine was asked for more players than it supports.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// Malformed JSON / JSON-lines input.
class ParseError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// File could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace graphext

#endif  // GRAPHEXT_ERROR_H_
