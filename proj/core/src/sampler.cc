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

#include "graphext/sampler.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <string>
#include <thread>

#include "graphext/error.h"

namespace graphext {
namespace {

// Samples per accumulation chunk. Fixed so the floating-point merge order
// never depends on the worker count.
constexpr int64_t kChunkSize = 64;

// Running mean / sum of squared deviations over one chunk (Welford).
struct ChunkStats {
  int64_t count = 0;
  int64_t oracle_calls = 0;
  std::vector<double> mean;
  std::vector<double> m2;
};

void AddSample(ChunkStats& stats, const std::vector<double>& mc) {
  ++stats.count;
  const double inv = 1.0 / static_cast<double>(stats.count);
  for (size_t i = 0; i < mc.size(); ++i) {
    const double delta = mc[i] - stats.mean[i];
    stats.mean[i] += delta * inv;
    stats.m2[i] += delta * (mc[i] - stats.mean[i]);
  }
}

// Chan et al. pairwise merge of `b` into `a`.
void MergeInto(ChunkStats& a, const ChunkStats& b) {
  if (b.count == 0) return;
  const double na = static_cast<double>(a.count);
  const double nb = static_cast<double>(b.count);
  const double total = na + nb;
  for (size_t i = 0; i < a.mean.size(); ++i) {
    const double delta = b.mean[i] - a.mean[i];
    a.mean[i] += delta * nb / total;
    a.m2[i] += b.m2[i] + delta * delta * na * nb / total;
  }
  a.count += b.count;
  a.oracle_calls += b.oracle_calls;
}

}  // namespace

void SampleConfig::Validate() const {
  if (num_samples < 1) throw ValidationError("num_samples must be >= 1");
  if (workers < 1) throw ValidationError("workers must be >= 1");
}

std::vector<int> KnuthShuffle(int n, RandomStream& rng) {
  if (n < 1) throw ValidationError("shuffle length must be >= 1");
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    const int j = static_cast<int>(rng.NextBelow(static_cast<uint64_t>(i) + 1));
    std::swap(perm[i], perm[j]);
  }
  return perm;
}

CoalitionStructure PartitionFromCycles(std::span<const int> perm) {
  const int n = static_cast<int>(perm.size());
  std::vector<int> label(n, -1);
  int cycles = 0;
  for (int start = 0; start < n; ++start) {
    if (label[start] != -1) continue;
    int node = start;
    while (label[node] == -1) {
      if (node < 0 || node >= n) throw ValidationError("not a permutation");
      label[node] = cycles;
      node = perm[node];
      if (node < 0 || node >= n) throw ValidationError("not a permutation");
    }
    if (node != start) throw ValidationError("not a permutation");
    ++cycles;
  }
  return CoalitionStructure::FromLabels(label);
}

std::vector<double> MarginalContributions(const ValueOracle& v,
                                          std::span<const int> order,
                                          std::span<const int> cycle_perm,
                                          bool reuse_before,
                                          int64_t* oracle_calls) {
  const int n = static_cast<int>(order.size());
  if (static_cast<int>(cycle_perm.size()) != n) {
    throw ValidationError("order and cycle permutation lengths differ");
  }
  CoalitionStructure p = PartitionFromCycles(cycle_perm);
  NodeSet s;
  std::vector<double> mc(n, 0.0);
  int64_t calls = 0;
  double before = 0.0;
  if (reuse_before) {
    before = v.Value(s, p);
    ++calls;
  }
  for (int j = 0; j < n; ++j) {
    if (!reuse_before) {
      before = v.Value(s, p);
      ++calls;
    }
    const int player = order[j];
    s = s.With(player);
    p = Transfer(p, s);
    const double after = v.Value(s, p);
    ++calls;
    mc[player] = after - before;
    before = after;
  }
  if (oracle_calls != nullptr) *oracle_calls += calls;
  return mc;
}

std::vector<double> OneSample(const ValueOracle& v, int n, RandomStream& rng) {
  const std::vector<int> order = KnuthShuffle(n, rng);
  const std::vector<int> cycle_perm = KnuthShuffle(n, rng);
  return MarginalContributions(v, order, cycle_perm);
}

ShapleyEstimate EstimateShapley(const ValueOracle& v, int n,
                                const SampleConfig& config) {
  config.Validate();
  if (n < 1) throw ValidationError("need at least one player");
  const int64_t total = config.num_samples;
  const int64_t num_chunks = (total + kChunkSize - 1) / kChunkSize;
  std::vector<ChunkStats> chunks(num_chunks);
  const RandomStream root(config.seed);

  std::atomic<int64_t> next_chunk{0};
  std::atomic<bool> abort{false};
  std::mutex error_mu;
  int64_t failed_sample = -1;
  std::string failure;
  std::atomic<int64_t> completed{0};

  auto worker = [&]() {
    while (!abort.load()) {
      const int64_t c = next_chunk.fetch_add(1);
      if (c >= num_chunks) return;
      ChunkStats& stats = chunks[c];
      stats.mean.assign(n, 0.0);
      stats.m2.assign(n, 0.0);
      const int64_t end = std::min(total, (c + 1) * kChunkSize);
      for (int64_t m = c * kChunkSize; m < end; ++m) {
        try {
          RandomStream rng = root.Substream(static_cast<uint64_t>(m));
          const std::vector<int> order = KnuthShuffle(n, rng);
          const std::vector<int> cycle_perm = KnuthShuffle(n, rng);
          AddSample(stats, MarginalContributions(v, order, cycle_perm,
                                                 config.reuse_before,
                                                 &stats.oracle_calls));
          completed.fetch_add(1);
        } catch (const std::exception& e) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (failed_sample == -1 || m < failed_sample) {
            failed_sample = m;
            failure = e.what();
          }
          abort.store(true);
          return;
        }
      }
    }
  };

  const int threads =
      static_cast<int>(std::min<int64_t>(config.workers, num_chunks));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (failed_sample != -1) {
    throw SamplingError("oracle failed in sample " +
                            std::to_string(failed_sample) + " after " +
                            std::to_string(completed.load()) + " of " +
                            std::to_string(total) +
                            " samples completed: " + failure,
                        failed_sample, completed.load());
  }

  ChunkStats merged = std::move(chunks[0]);
  for (int64_t c = 1; c < num_chunks; ++c) MergeInto(merged, chunks[c]);

  ShapleyEstimate estimate;
  estimate.values = merged.mean;
  estimate.std_errors.assign(n, 0.0);
  if (total > 1) {
    const double t = static_cast<double>(total);
    for (int i = 0; i < n; ++i) {
      const double variance = std::max(0.0, merged.m2[i] / (t - 1.0));
      estimate.std_errors[i] = std::sqrt(variance / t);
    }
  }
  estimate.num_samples = total;
  estimate.total_oracle_calls = merged.oracle_calls;
  return estimate;
}

std::vector<double> EnumerateSamplerExpectation(const ValueOracle& v, int n) {
  if (n < 1) throw ValidationError("need at least one player");
  if (n > kMaxExpectationPlayers) {
    throw CapacityError("sampler expectation enumeration supports n <= " +
                        std::to_string(kMaxExpectationPlayers) + ", got " +
                        std::to_string(n));
  }
  std::vector<double> sum(n, 0.0);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  int64_t pairs = 0;
  do {
    std::vector<int> cycle_perm(n);
    std::iota(cycle_perm.begin(), cycle_perm.end(), 0);
    do {
      const std::vector<double> mc = MarginalContributions(v, order, cycle_perm);
      for (int i = 0; i < n; ++i) sum[i] += mc[i];
      ++pairs;
    } while (std::next_permutation(cycle_perm.begin(), cycle_perm.end()));
  } while (std::next_permutation(order.begin(), order.end()));
  for (double& x : sum) x /= static_cast<double>(pairs);
  return sum;
}

}  // namespace graphext
