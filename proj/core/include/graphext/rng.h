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

#ifndef GRAPHEXT_RNG_H_
#define GRAPHEXT_RNG_H_

#include <cstdint>

namespace graphext {

// SplitMix64 finalizer. Bijective on 64-bit words.
uint64_t Mix64(uint64_t x);

// Counter-based random stream: the i-th draw is Mix64(key + i * golden).
// Output depends only on (key, counter), so streams are reproducible across
// platforms and can be split into independent substreams without shared
// state.
class RandomStream {
 public:
  explicit RandomStream(uint64_t key, uint64_t counter = 0)
      : key_(key), counter_(counter) {}

  uint64_t NextU64();

  // Uniform double in [0, 1) with 53 random bits.
  double NextUnit();

  // Uniform double in [lo, hi).
  double NextUniform(double lo, double hi);

  // Uniform integer in [0, bound). Unbiased (rejection sampling). bound > 0.
  uint64_t NextBelow(uint64_t bound);

  // Independent stream keyed by (this key, index). Does not advance *this.
  RandomStream Substream(uint64_t index) const;

  uint64_t key() const { return key_; }
  uint64_t counter() const { return counter_; }

 private:
  uint64_t key_;
  uint64_t counter_;
};

}  // namespace graphext

#endif  // GRAPHEXT_RNG_H_
