// Copyright 2026 The hitpart Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HITPART_VERIFY_HPP_
#define HITPART_VERIFY_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "hitpart/error.hpp"
#include "hitpart/maxid.hpp"
#include "hitpart/partition.hpp"
#include "hitpart/poisson_dirichlet.hpp"
#include "hitpart/rng.hpp"
#include "hitpart/stats.hpp"
#include "hitpart/subordinator.hpp"

namespace hitpart {

using PartitionCounts = std::map<SetPartition, std::uint64_t>;

inline constexpr double kGofThreshold = 1e-3;

// Splits replicates [0, samples) into contiguous shards, one per worker.
// Replicate i always draws from RngStream(seed, i), so results do not
// depend on the number of workers. `make_shard` returns a default-constructed
// accumulator; `run(acc, i, rng)` folds replicate i; `merge(into, from)`
// combines shards in replicate order.
template <typename Acc, typename Run, typename Merge>
Acc run_replicates(std::uint64_t samples, std::uint64_t seed, unsigned threads, Run run,
                   Merge merge) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(
                                                          std::max<std::uint64_t>(samples, 1))));
  std::vector<Acc> shards(threads);
  std::vector<std::exception_ptr> errors(threads);
  auto work = [&](unsigned t) {
    const std::uint64_t begin = samples * t / threads;
    const std::uint64_t end = samples * (t + 1) / threads;
    try {
      for (std::uint64_t i = begin; i < end; ++i) {
        RngStream rng(seed, i);
        run(shards[t], i, rng);
      }
    } catch (...) {
      errors[t] = std::current_exception();
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  Acc out = std::move(shards[0]);
  for (unsigned t = 1; t < threads; ++t) merge(out, shards[t]);
  return out;
}

inline unsigned default_threads() {
  return std::max(1u, std::thread::hardware_concurrency());
}

inline void merge_counts(PartitionCounts& into, const PartitionCounts& from) {
  for (const auto& [p, c] : from) into[p] += c;
}

// Partition counts of `samples` replicates of `sampler(rng)`.
template <typename Sampler>
PartitionCounts tally_partitions(std::uint64_t samples, std::uint64_t seed, Sampler sampler,
                                 unsigned threads = default_threads()) {
  return run_replicates<PartitionCounts>(
      samples, seed, threads,
      [&](PartitionCounts& acc, std::uint64_t, RngStream& rng) { ++acc[sampler(rng)]; },
      merge_counts);
}

struct SimulationTally {
  PartitionCounts counts;
  double max_truncation_ratio = 0.0;
  std::uint64_t total_ties = 0;
  std::uint64_t replicates = 0;
};

inline SimulationTally tally_simulations(const SubFrechetModel& model,
                                         const SimulateOptions& options, std::uint64_t samples,
                                         std::uint64_t seed,
                                         unsigned threads = default_threads()) {
  return run_replicates<SimulationTally>(
      samples, seed, threads,
      [&](SimulationTally& acc, std::uint64_t, RngStream& rng) {
        const SimulationResult r = simulate(model, options, rng);
        ++acc.counts[r.partition];
        acc.max_truncation_ratio = std::max(acc.max_truncation_ratio, r.truncation_ratio);
        acc.total_ties += r.tie_count;
        ++acc.replicates;
      },
      [](SimulationTally& into, const SimulationTally& from) {
        merge_counts(into.counts, from.counts);
        into.max_truncation_ratio = std::max(into.max_truncation_ratio, from.max_truncation_ratio);
        into.total_ties += from.total_ties;
        into.replicates += from.replicates;
      });
}

// Exact PD(alpha, theta) law over all partitions of [n].
inline std::map<SetPartition, double> pd_partition_law(const PDParams& params, std::size_t n) {
  std::map<SetPartition, double> law;
  std::map<BlockSizes, double> cache;
  for_each_partition(n, [&](const SetPartition& p) {
    const BlockSizes sizes = p.block_sizes();
    auto it = cache.find(sizes);
    if (it == cache.end()) it = cache.emplace(sizes, pd_eppf(params, sizes)).first;
    law.emplace(p, it->second);
  });
  return law;
}

// The two subordinators whose hitting partitions are Poisson-Dirichlet:
// alpha-stable gives PD(alpha, 0), gamma(theta) gives PD(0, theta).
class PdCase {
 public:
  static PdCase stable(double alpha) { return PdCase(LevyMeasure::stable(alpha)); }
  static PdCase gamma(double theta) { return PdCase(LevyMeasure::gamma(theta)); }

  const LevyMeasure& measure() const noexcept { return measure_; }
  PDParams pd_params() const {
    return measure_.is_stable() ? PDParams(measure_.parameter(), 0.0)
                                : PDParams(0.0, measure_.parameter());
  }
  std::string name() const { return measure_.is_stable() ? "stable" : "gamma"; }

 private:
  explicit PdCase(LevyMeasure m) : measure_(m) {}
  LevyMeasure measure_;
};

struct VerifyConfig {
  std::size_t n = 4;
  std::uint64_t samples = 200'000;
  std::uint64_t seed = 42;
  SimulateOptions options;
  unsigned threads = default_threads();
};

struct VerifyReport {
  GofReport<SetPartition> gof;
  bool pass = false;
  double max_truncation_ratio = 0.0;
  std::uint64_t total_ties = 0;
};

// Simulates hitting partitions of the sub-Frechet model with unit scales and
// tests them against the matching Poisson-Dirichlet law. PASS iff p > 0.001.
inline VerifyReport verify_pd_law(const PdCase& c, const VerifyConfig& config) {
  detail::require(config.n >= 2 && config.n <= 6, "verification requires 2 <= n <= 6");
  detail::require(config.samples >= 100'000, "verification requires at least 1e5 samples");
  const auto model = SubFrechetModel::unit_scales(c.measure(), config.n);
  const SimulationTally tally =
      tally_simulations(model, config.options, config.samples, config.seed, config.threads);
  VerifyReport report;
  report.gof = chi_square_gof(tally.counts, pd_partition_law(c.pd_params(), config.n));
  report.pass = report.gof.p_value > kGofThreshold;
  report.max_truncation_ratio = tally.max_truncation_ratio;
  report.total_ties = tally.total_ties;
  return report;
}

}  // namespace hitpart

#endif  // HITPART_VERIFY_HPP_
