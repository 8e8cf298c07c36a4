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

#ifndef HITPART_PAINTBOX_HPP_
#define HITPART_PAINTBOX_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "hitpart/error.hpp"
#include "hitpart/partition.hpp"
#include "hitpart/rng.hpp"
#include "hitpart/subordinator.hpp"

namespace hitpart {

// Paintbox weights: colour probabilities P_1, ..., P_L and the dust mass
// P_0, whose draws always become singletons.
class WeightVector {
 public:
  WeightVector(std::vector<double> weights, double dust)
      : weights_(std::move(weights)), dust_(dust) {
    detail::require(dust >= 0.0, "dust mass must be nonnegative");
    double sum = dust;
    for (double w : weights_) {
      detail::require(w >= 0.0, "weights must be nonnegative");
      sum += w;
    }
    const double tol =
        1e-12 + static_cast<double>(weights_.size()) * std::numeric_limits<double>::epsilon();
    detail::require(std::fabs(sum - 1.0) <= tol, "weights and dust must sum to one");
  }

  const std::vector<double>& weights() const noexcept { return weights_; }
  double dust() const noexcept { return dust_; }
  std::size_t size() const noexcept { return weights_.size(); }

 private:
  std::vector<double> weights_;
  double dust_;
};

// Draws colours from a fixed WeightVector by inversion over the cumulative
// table. Label 0 is dust; labels 1..L index the weights.
class PaintboxSampler {
 public:
  explicit PaintboxSampler(const WeightVector& w) {
    cumulative_.reserve(w.size() + 1);
    double acc = 0.0;
    for (double p : w.weights()) {
      acc += p;
      cumulative_.push_back(acc);
    }
    acc += w.dust();
    cumulative_.push_back(acc);
    dust_ = w.dust();
  }

  std::size_t draw_label(RngStream& rng) const {
    const double u = rng.uniform_open() * cumulative_.back();
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end() - 1, u);
    const auto index = static_cast<std::size_t>(it - cumulative_.begin());
    if (index == cumulative_.size() - 1) {
      // u landed past the colours: dust, unless rounding put it there with no dust.
      return dust_ > 0.0 ? 0 : index;
    }
    return index + 1;
  }

  SetPartition sample(std::size_t n, RngStream& rng) const {
    detail::require(n >= 1, "paintbox sample size must be positive");
    std::vector<std::int64_t> ids(n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t label = draw_label(rng);
      ids[i] = label == 0 ? -static_cast<std::int64_t>(i) - 1
                          : static_cast<std::int64_t>(label);
    }
    return SetPartition::from_labels(ids);
  }

 private:
  std::vector<double> cumulative_;
  double dust_ = 0.0;
};

// i.i.d. colours X_i with P(X_i = l) = P_l; i ~ j iff X_i = X_j > 0.
inline SetPartition paintbox_sample(const WeightVector& weights, std::size_t n,
                                    RngStream& rng) {
  return PaintboxSampler(weights).sample(n, rng);
}

// P_l = J_l / sum of retained jumps, P_0 = 0. The omitted tail is accounted
// for by the sequence's residual bound, not folded into dust.
inline WeightVector normalized_jump_weights(const JumpSequence& jumps) {
  std::vector<double> w;
  w.reserve(jumps.size());
  for (double j : jumps.jumps()) w.push_back(j / jumps.total());
  return WeightVector(std::move(w), 0.0);
}

}  // namespace hitpart

#endif  // HITPART_PAINTBOX_HPP_
