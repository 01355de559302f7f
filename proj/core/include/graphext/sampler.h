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

#ifndef GRAPHEXT_SAMPLER_H_
#define GRAPHEXT_SAMPLER_H_

#include <cstdint>
#include <span>
#include <vector>

#include "graphext/error.h"
#include "graphext/game.h"
#include "graphext/graph.h"
#include "graphext/rng.h"

namespace graphext {

inline constexpr int kDefaultNumSamples = 100;
inline constexpr int kMaxExpectationPlayers = 5;

struct SampleConfig {
  int num_samples = kDefaultNumSamples;
  uint64_t seed = 0;
  int workers = 1;
  // Reuse V_after of step j-1 as V_before of step j: n + 1 oracle calls per
  // sample instead of 2n. Values are identical either way.
  bool reuse_before = true;

  // Throws ValidationError unless num_samples >= 1 and workers >= 1.
  void Validate() const;
};

struct ShapleyEstimate {
  std::vector<double> values;
  // sqrt(unbiased per-sample variance / T); 0 when T = 1.
  std::vector<double> std_errors;
  int64_t num_samples = 0;
  int64_t total_oracle_calls = 0;
};

// Fisher-Yates shuffle of {0..n-1}.
std::vector<int> KnuthShuffle(int n, RandomStream& rng);

// One block per cycle of `perm` (perm[i] is the image of i).
CoalitionStructure PartitionFromCycles(std::span<const int> perm);

// Marginal contributions for a fixed draw: P starts as the cycles of
// `cycle_perm`, players join S in `order`, and P becomes P_[S] after every
// join. Result is indexed by player. Adds the number of oracle calls made to
// *oracle_calls when non-null.
std::vector<double> MarginalContributions(const ValueOracle& v,
                                          std::span<const int> order,
                                          std::span<const int> cycle_perm,
                                          bool reuse_before = true,
                                          int64_t* oracle_calls = nullptr);

// Draws (order, cycle_perm) from `rng` and returns the marginal contributions.
std::vector<double> OneSample(const ValueOracle& v, int n, RandomStream& rng);

// Averages T independent samples. Sample m uses RandomStream(seed)
// .Substream(m) and partial sums are merged in sample order, so the result is
// bit-identical for every worker count. An oracle exception aborts the run
// with a SamplingError naming the failing sample.
ShapleyEstimate EstimateShapley(const ValueOracle& v, int n,
                                const SampleConfig& config);

// Exact expectation of one sample: the average over all (n!)^2 pairs of
// (order, cycle_perm). Throws CapacityError if n > kMaxExpectationPlayers.
std::vector<double> EnumerateSamplerExpectation(const ValueOracle& v, int n);

class SamplingError : public Error {
 public:
  SamplingError(const std::string& what, int64_t failed_sample,
                int64_t completed_samples)
      : Error(what),
        failed_sample_(failed_sample),
        completed_samples_(completed_samples) {}
  int64_t failed_sample() const { return failed_sample_; }
  int64_t completed_samples() const { return completed_samples_; }

 private:
  int64_t failed_sample_;
  int64_t completed_samples_;
};

}  // namespace graphext

#endif  // GRAPHEXT_SAMPLER_H_
