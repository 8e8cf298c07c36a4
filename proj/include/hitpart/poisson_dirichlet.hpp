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

#ifndef HITPART_POISSON_DIRICHLET_HPP_
#define HITPART_POISSON_DIRICHLET_HPP_

#include <cmath>
#include <cstddef>
#include <vector>

#include "hitpart/distributions.hpp"
#include "hitpart/error.hpp"
#include "hitpart/paintbox.hpp"
#include "hitpart/partition.hpp"
#include "hitpart/rng.hpp"

namespace hitpart {

// Two-parameter Poisson-Dirichlet parameters. Legitimate values are
// alpha < 0 with theta = -m alpha for a positive integer m, or
// 0 <= alpha <= 1 with theta > -alpha.
class PDParams {
 public:
  PDParams(double alpha, double theta) : alpha_(alpha), theta_(theta) {
    detail::require(std::isfinite(alpha) && std::isfinite(theta),
                    "PD parameters must be finite");
    if (alpha < 0.0) {
      const double m = theta / -alpha;
      detail::require(m >= 0.5 && std::fabs(m - std::round(m)) <= 1e-9 * m,
                      "alpha < 0 requires theta = -m alpha with m a positive integer");
    } else {
      detail::require(alpha <= 1.0, "PD alpha must not exceed 1");
      detail::require(theta > -alpha, "PD requires theta > -alpha");
    }
  }

  double alpha() const noexcept { return alpha_; }
  double theta() const noexcept { return theta_; }

  // True in the range covered by the sequential samplers.
  bool samplable() const noexcept { return alpha_ >= 0.0 && alpha_ < 1.0; }

 private:
  double alpha_;
  double theta_;
};

// Exchangeable partition probability of PD(alpha, theta):
//
//   (theta + alpha)_{k-1 | alpha} prod_i (1 - alpha)_{n_i - 1 | 1}
//   ------------------------------------------------------------
//                    (theta + 1)_{n-1 | 1}
//
// with (x)_{m | a} = prod_{j<m} (x + j a). Accumulated as a signed log sum.
inline double pd_eppf(const PDParams& params, const BlockSizes& sizes) {
  const double alpha = params.alpha();
  const double theta = params.theta();
  double log_abs = 0.0;
  bool negative = false;
  auto factor = [&](double x) {
    if (x == 0.0) return false;
    if (x < 0.0) negative = !negative;
    log_abs += std::log(std::fabs(x));
    return true;
  };

  const std::size_t k = sizes.num_blocks();
  for (std::size_t i = 1; i < k; ++i) {
    if (!factor(theta + static_cast<double>(i) * alpha)) return 0.0;
  }
  for (std::size_t ni : sizes.sizes()) {
    for (std::size_t j = 1; j < ni; ++j) {
      if (!factor(static_cast<double>(j) - alpha)) return 0.0;
    }
  }
  const std::size_t n = sizes.total();
  for (std::size_t j = 1; j < n; ++j) {
    log_abs -= std::log(theta + static_cast<double>(j));
  }
  if (negative) {
    throw NumericalError("negative EPPF value for legitimate parameters");
  }
  return std::exp(log_abs);
}

inline double pd_eppf(const PDParams& params, const SetPartition& partition) {
  return pd_eppf(params, partition.block_sizes());
}

// Concurrence probability of the alpha-logistic model,
// p(n) = prod_{k=1}^{n-1} (1 - alpha / k).
inline double concurrence_logistic(double alpha, std::size_t n) {
  detail::require(alpha > 0.0 && alpha < 1.0, "concurrence requires 0 < alpha < 1");
  detail::require(n >= 1, "concurrence requires n >= 1");
  double p = 1.0;
  for (std::size_t k = 1; k < n; ++k) p *= 1.0 - alpha / static_cast<double>(k);
  return p;
}

// Chinese restaurant process: element m+1 joins block i with probability
// (n_i - alpha) / (m + theta) and opens a new block with probability
// (theta + k alpha) / (m + theta).
inline SetPartition crp_sample(const PDParams& params, std::size_t n, RngStream& rng) {
  detail::require(params.samplable(), "CRP sampler requires 0 <= alpha < 1");
  detail::require(n >= 1, "CRP sample size must be positive");
  const double alpha = params.alpha();
  const double theta = params.theta();
  std::vector<SetPartition::Label> labels(n, 0);
  std::vector<std::size_t> counts{1};
  for (std::size_t m = 1; m < n; ++m) {
    double u = rng.uniform_open() * (static_cast<double>(m) + theta);
    SetPartition::Label chosen = static_cast<SetPartition::Label>(counts.size());
    for (std::size_t b = 0; b < counts.size(); ++b) {
      u -= static_cast<double>(counts[b]) - alpha;
      if (u < 0.0) {
        chosen = static_cast<SetPartition::Label>(b);
        break;
      }
    }
    if (chosen == counts.size()) counts.push_back(0);
    ++counts[chosen];
    labels[m] = chosen;
  }
  return SetPartition(std::move(labels));
}

inline constexpr double kGemDustTarget = 1e-8;
inline constexpr std::size_t kGemMaxCount = 100'000;

// Smallest L with prod_{j<=L} E(1 - W_j) below the dust target, capped.
inline std::size_t gem_default_count(const PDParams& params) {
  detail::require(params.samplable(), "GEM requires 0 <= alpha < 1");
  const double alpha = params.alpha();
  const double theta = params.theta();
  double expected_dust = 1.0;
  for (std::size_t j = 1; j <= kGemMaxCount; ++j) {
    const double b = theta + static_cast<double>(j) * alpha;
    expected_dust *= b / (1.0 - alpha + b);
    if (expected_dust < kGemDustTarget) return j;
  }
  return kGemMaxCount;
}

// First `count` size-biased frequencies W_l prod_{j<l} (1 - W_j) with
// W_l ~ Beta(1 - alpha, theta + l alpha); the unbroken remainder is dust.
inline WeightVector gem_stick_breaking(const PDParams& params, std::size_t count,
                                       RngStream& rng) {
  detail::require(params.samplable(), "GEM requires 0 <= alpha < 1");
  detail::require(count >= 1, "GEM count must be positive");
  const double alpha = params.alpha();
  const double theta = params.theta();
  std::vector<double> weights;
  weights.reserve(count);
  double remainder = 1.0;
  for (std::size_t l = 1; l <= count; ++l) {
    const double w = sample_beta(1.0 - alpha, theta + static_cast<double>(l) * alpha, rng);
    weights.push_back(remainder * w);
    remainder *= 1.0 - w;
  }
  return WeightVector(std::move(weights), remainder);
}

}  // namespace hitpart

#endif  // HITPART_POISSON_DIRICHLET_HPP_
