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

#include "graphext/rng.h"

#include <limits>

namespace graphext {
namespace {

constexpr uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

}  // namespace

uint64_t Mix64(uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

uint64_t RandomStream::NextU64() {
  ++counter_;
  return Mix64(key_ + counter_ * kGolden);
}

double RandomStream::NextUnit() {
  return static_cast<double>(NextU64() >> 11) * 0x1.0p-53;
}

double RandomStream::NextUniform(double lo, double hi) {
  return lo + (hi - lo) * NextUnit();
}

uint64_t RandomStream::NextBelow(uint64_t bound) {
  // Reject the top partial bucket so every residue is equally likely.
  const uint64_t limit =
      std::numeric_limits<uint64_t>::max() -
      std::numeric_limits<uint64_t>::max() % bound;
  uint64_t x = NextU64();
  while (x >= limit) x = NextU64();
  return x % bound;
}

RandomStream RandomStream::Substream(uint64_t index) const {
  return RandomStream(Mix64(key_ ^ Mix64(index + kGolden)));
}

}  // namespace graphext
