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

#ifndef HITPART_MAXID_HPP_
#define HITPART_MAXID_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "hitpart/distributions.hpp"
#include "hitpart/error.hpp"
#include "hitpart/paintbox.hpp"
#include "hitpart/partition.hpp"
#include "hitpart/rng.hpp"
#include "hitpart/subordinator.hpp"

namespace hitpart {

// Constant c with sum_l c J_l having Laplace transform exp(-t^alpha) when J
// are the jumps of nu(dw) = alpha w^(-alpha-1) dw, whose own transform is
// exp(-Gamma(1 - alpha) t^alpha). Gamma measures need no standardization.
inline double jump_standardization(const LevyMeasure& measure) {
  if (!measure.is_stable()) return 1.0;
  const double alpha = measure.parameter();
  return std::exp(-std::lgamma(1.0 - alpha) / alpha);
}

// zeta_k = max_l c J_l Y_{l,k}, with J the jumps of a subordinator with Levy
// measure nu, c = jump_standardization(nu) and Y_{l,k} independent 1-Frechet
// marks of scale sigma_k. The constant leaves hitting partitions unchanged and
// gives stable models alpha-Frechet margins exp(-(sigma_k / x)^alpha).
class SubFrechetModel {
 public:
  SubFrechetModel(LevyMeasure measure, std::vector<double> scales)
      : measure_(measure), scales_(std::move(scales)) {
    detail::require(!scales_.empty(), "model dimension must be at least 1");
    for (double s : scales_) {
      detail::require(s > 0.0 && std::isfinite(s), "scales must be positive");
    }
  }

  static SubFrechetModel unit_scales(LevyMeasure measure, std::size_t n) {
    return SubFrechetModel(measure, std::vector<double>(n, 1.0));
  }

  const LevyMeasure& measure() const noexcept { return measure_; }
  const std::vector<double>& scales() const noexcept { return scales_; }
  std::size_t dimension() const noexcept { return scales_.size(); }

 private:
  LevyMeasure measure_;
  std::vector<double> scales_;
};

enum class MarkMode {
  // Every mark Y_{l,k} is drawn and the argmax taken over all retained jumps.
  kDirect,
  // Each coordinate's argmax label is drawn from the categorical law
  // P(l*(k) = l | J) = J_l / total. Values are not produced.
  kLabelsOnly,
};

struct SimulateOptions {
  // Unset means default_residual_tolerance(measure).
  std::optional<double> residual_tolerance;
  std::size_t max_jumps = kDefaultMaxJumps;
  MarkMode mode = MarkMode::kDirect;
};

struct SimulationResult {
  std::vector<double> values;  // empty in kLabelsOnly mode
  SetPartition partition;
  std::vector<std::size_t> argmax_labels;  // 0-based jump indices
  std::size_t tie_count = 0;
  double truncation_ratio = 0.0;
};

struct CoordinateMax {
  std::size_t label = 0;
  double value = 0.0;
  std::size_t ties = 0;
};

// max_l J_l sigma / E_l with E_l = -log U_l, one uniform per retained jump.
//
// Every U_l is drawn, but its logarithm is only evaluated when U_l exceeds a
// bound below which the mark cannot beat the running maximum: with J
// nonincreasing, U_l <= exp(-J_m / best) for l >= m implies
// J_l / E_l <= best. The outcome is identical to evaluating every mark.
inline CoordinateMax direct_coordinate_max(const std::vector<double>& jumps,
                                           double sigma, RngStream& rng) {
  constexpr double kMargin = 1.0 - 1e-12;
  constexpr std::size_t kRefresh = 16;
  CoordinateMax out;
  double best = 0.0;  // best J / E so far
  double skip_below = 0.0;
  for (std::size_t l = 0; l < jumps.size(); ++l) {
    const double u = rng.uniform_open();
    if (u <= skip_below) {
      if (l % kRefresh == 0) skip_below = std::exp(-jumps[l] / best) * kMargin;
      continue;
    }
    const double r = jumps[l] / -std::log(u);
    if (r > best) {
      best = r;
      out.label = l;
    } else if (r == best) {
      ++out.ties;
    }
    skip_below = std::exp(-jumps[l] / best) * kMargin;
  }
  out.value = sigma * best;
  return out;
}

// Conditional law of each coordinate's argmax label given the jumps:
// P(l*(k) = l | J) = J_l / sum J.
inline WeightVector conditional_label_law(const JumpSequence& jumps) {
  return normalized_jump_weights(jumps);
}

// Hitting labels for fixed jumps by the direct argmax of fresh marks.
inline SimulationResult hitting_scenario(const JumpSequence& jumps,
                                         const std::vector<double>& scales,
                                         MarkMode mode, RngStream& rng) {
  const std::size_t n = scales.size();
  std::vector<std::size_t> labels(n);
  std::vector<double> values;
  std::size_t ties = 0;
  if (mode == MarkMode::kDirect) {
    values.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      const CoordinateMax m = direct_coordinate_max(jumps.jumps(), scales[k], rng);
      labels[k] = m.label;
      values[k] = m.value;
      ties += m.ties;
    }
  } else {
    const PaintboxSampler sampler(conditional_label_law(jumps));
    for (std::size_t k = 0; k < n; ++k) labels[k] = sampler.draw_label(rng) - 1;
  }
  SetPartition partition = SetPartition::from_labels(labels);
  return SimulationResult{std::move(values), std::move(partition), std::move(labels), ties,
                          jumps.truncation_ratio()};
}

// One replicate: jumps, marks, argmax labels and the induced hitting
// partition. Throws TruncationError if the jump budget runs out.
inline SimulationResult simulate(const SubFrechetModel& model, const SimulateOptions& options,
                                 RngStream& rng) {
  const double tolerance =
      options.residual_tolerance.value_or(default_residual_tolerance(model.measure()));
  const JumpSequence jumps = generate_jumps(model.measure(), tolerance, options.max_jumps, rng);
  std::vector<double> scales = model.scales();
  const double c = jump_standardization(model.measure());
  for (double& s : scales) s *= c;
  return hitting_scenario(jumps, scales, options.mode, rng);
}

// Laplace transform of the standardized jump sum c J_*: exp(-t^alpha) for the
// stable measure, (1 + t)^(-theta) for the gamma measure.
inline double laplace_transform(const LevyMeasure& measure, double t) {
  detail::require(t >= 0.0, "Laplace transform requires t >= 0");
  if (const auto* s = std::get_if<StableMeasure>(&measure.kind())) {
    return std::exp(-std::pow(t, s->alpha));
  }
  return std::exp(-std::get<GammaMeasure>(measure.kind()).theta * std::log1p(t));
}

// P(zeta_k <= x_k for all k) = L(sum_k sigma_k / x_k).
inline double joint_cdf(const SubFrechetModel& model, const std::vector<double>& x) {
  detail::require(x.size() == model.dimension(), "CDF point has wrong dimension");
  double t = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    detail::require(x[k] > 0.0, "CDF point must be positive");
    t += model.scales()[k] / x[k];
  }
  return laplace_transform(model.measure(), t);
}

struct McEstimate {
  double estimate = 0.0;
  double standard_error = 0.0;  // outer level only
  std::size_t inner = 0;
};

// Nested Monte Carlo of p(n) = E[1 / E(max_k (Y*_k / Y_k)^alpha | Y)] for
// i.i.d. 1-Frechet components. The inner average enters through a
// reciprocal, so the estimator is biased for finite `inner`; the bias
// vanishes as inner grows and is not included in standard_error.
inline McEstimate concurrence_mc_general(double alpha, std::size_t n, std::size_t outer,
                                         std::size_t inner, RngStream& rng) {
  detail::require(alpha > 0.0 && alpha < 1.0, "concurrence requires 0 < alpha < 1");
  detail::require(n >= 1, "concurrence requires n >= 1");
  detail::require(outer >= 100 && inner >= 100, "outer and inner must be at least 100");
  const FrechetScale unit(1.0);
  std::vector<double> y(n);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t o = 0; o < outer; ++o) {
    for (double& v : y) v = sample_frechet(unit, rng);
    double acc = 0.0;
    for (std::size_t i = 0; i < inner; ++i) {
      double ratio = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        ratio = std::max(ratio, sample_frechet(unit, rng) / y[k]);
      }
      acc += std::pow(ratio, alpha);
    }
    const double r = static_cast<double>(inner) / acc;
    sum += r;
    sum_sq += r * r;
  }
  const double m = sum / static_cast<double>(outer);
  const double var = (sum_sq / static_cast<double>(outer) - m * m) *
                     static_cast<double>(outer) / static_cast<double>(outer - 1);
  return McEstimate{m, std::sqrt(std::max(var, 0.0) / static_cast<double>(outer)), inner};
}

}  // namespace hitpart

#endif  // HITPART_MAXID_HPP_
