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

#ifndef HITPART_SUBORDINATOR_HPP_
#define HITPART_SUBORDINATOR_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>
#include <variant>
#include <vector>

#include "hitpart/distributions.hpp"
#include "hitpart/error.hpp"
#include "hitpart/rng.hpp"
#include "hitpart/special_functions.hpp"

namespace hitpart {

// nu(dx) = alpha x^(-alpha-1) dx, 0 < alpha < 1.
struct StableMeasure {
  double alpha;
};

// nu(dx) = theta x^(-1) exp(-x) dx, theta > 0.
struct GammaMeasure {
  double theta;
};

// Levy measure of a driftless subordinator. Both kinds have infinite total
// mass and integrate min(1, x), so the jump sum is finite almost surely.
class LevyMeasure {
 public:
  using Kind = std::variant<StableMeasure, GammaMeasure>;

  static LevyMeasure stable(double alpha) {
    detail::require(alpha > 0.0 && alpha < 1.0,
                    "stable measure requires 0 < alpha < 1");
    return LevyMeasure(StableMeasure{alpha});
  }
  static LevyMeasure gamma(double theta) {
    detail::require(theta > 0.0 && std::isfinite(theta),
                    "gamma measure requires theta > 0");
    return LevyMeasure(GammaMeasure{theta});
  }

  const Kind& kind() const noexcept { return kind_; }
  bool is_stable() const noexcept {
    return std::holds_alternative<StableMeasure>(kind_);
  }
  // alpha for a stable measure, theta for a gamma measure.
  double parameter() const noexcept {
    return std::visit([](auto m) { return first_field(m); }, kind_);
  }

 private:
  explicit LevyMeasure(Kind kind) : kind_(kind) {}
  static double first_field(StableMeasure m) { return m.alpha; }
  static double first_field(GammaMeasure m) { return m.theta; }

  Kind kind_;
};

// Tail nu((x, inf)) = x^(-alpha), inverted.
inline double stable_tail_inverse(double alpha, double u) {
  detail::require(alpha > 0.0 && alpha < 1.0,
                  "stable tail requires 0 < alpha < 1");
  detail::require(u > 0.0, "tail level must be positive");
  return std::pow(u, -1.0 / alpha);
}

// Solves theta * E1(x) = u for x.
//
// The root is bracketed from the bounds exp(-x)/(x+1) < E1(x) < exp(-x)/x
// and E1(x) >= -gamma - ln x, then refined by Newton steps on log E1, with
// geometric bisection whenever a step leaves the bracket.
inline double gamma_tail_inverse(double theta, double u) {
  detail::require(theta > 0.0, "gamma tail requires theta > 0");
  detail::require(u > 0.0, "tail level must be positive");
  const double v = u / theta;
  constexpr double kRtol = 1e-13;
  constexpr int kMaxIter = 200;

  // hi: exp(-hi)/hi <= v implies E1(hi) < v.
  double hi = 1.0;
  while (std::exp(-hi) / hi > v) hi *= 2.0;
  while (hi > 1e-300 && std::exp(-hi / 2) / (hi / 2) <= v) hi /= 2.0;

  // lo: either bound certifies E1(lo) >= v.
  double lo = std::exp(-v - kEulerGamma);
  if (v < 1.0) {
    double candidate = hi;
    while (std::exp(-candidate) / (candidate + 1.0) < v) candidate /= 2.0;
    lo = std::max(lo, candidate);
  }
  if (!(lo > 0.0)) {
    throw NumericalError("gamma tail level beyond double range");
  }
  if (lo > hi) std::swap(lo, hi);

  double x = std::sqrt(lo) * std::sqrt(hi);
  for (int iter = 0; iter < kMaxIter; ++iter) {
    const double e1 = exp_integral_e1(x);
    if (std::fabs(e1 - v) <= kRtol * v) return x;
    if (e1 > v) {
      lo = x;
    } else {
      hi = x;
    }
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) {
      return x;
    }
    // d/dx log E1(x) = -exp(-x) / (x E1(x))
    const double slope = -std::exp(-x) / (x * e1);
    double next = x - (std::log(e1) - std::log(v)) / slope;
    if (!(next > lo && next < hi)) next = std::sqrt(lo) * std::sqrt(hi);
    x = next;
  }
  throw NumericalError("gamma tail inversion did not converge");
}

// nu((x, inf)).
inline double levy_tail(const LevyMeasure& measure, double x) {
  detail::require(x > 0.0, "tail requires x > 0");
  if (const auto* s = std::get_if<StableMeasure>(&measure.kind())) {
    return std::pow(x, -s->alpha);
  }
  return std::get<GammaMeasure>(measure.kind()).theta * exp_integral_e1(x);
}

inline double levy_tail_inverse(const LevyMeasure& measure, double u) {
  if (const auto* s = std::get_if<StableMeasure>(&measure.kind())) {
    return stable_tail_inverse(s->alpha, u);
  }
  return gamma_tail_inverse(std::get<GammaMeasure>(measure.kind()).theta, u);
}

// Expected sum of the jumps below eps: int_0^eps x nu(dx).
inline double residual_mean_mass(const LevyMeasure& measure, double eps) {
  detail::require(eps > 0.0, "residual level must be positive");
  if (const auto* s = std::get_if<StableMeasure>(&measure.kind())) {
    return s->alpha * std::pow(eps, 1.0 - s->alpha) / (1.0 - s->alpha);
  }
  return std::get<GammaMeasure>(measure.kind()).theta * -std::expm1(-eps);
}

// Decreasing jumps J_1 > J_2 > ... > J_L of the Poisson process with
// intensity nu, plus the expected mass of everything below J_L.
class JumpSequence {
 public:
  JumpSequence(std::vector<double> jumps, double residual_mean)
      : jumps_(std::move(jumps)), residual_mean_(residual_mean) {
    detail::require(!jumps_.empty(), "jump sequence must be nonempty");
    detail::require(residual_mean >= 0.0, "residual mass must be >= 0");
    double total = 0.0;
    double prev = std::numeric_limits<double>::infinity();
    for (double j : jumps_) {
      detail::require(j > 0.0 && j <= prev,
                      "jumps must be positive and nonincreasing");
      prev = j;
      total += j;
    }
    total_ = total;
  }

  const std::vector<double>& jumps() const noexcept { return jumps_; }
  std::size_t size() const noexcept { return jumps_.size(); }
  double residual_mean() const noexcept { return residual_mean_; }
  double total() const noexcept { return total_; }
  double truncation_ratio() const noexcept { return residual_mean_ / total_; }

 private:
  std::vector<double> jumps_;
  double residual_mean_;
  double total_;
};

// Maps given arrival times through the tail inverse, without truncation
// bookkeeping beyond the residual mass below the last jump.
inline JumpSequence jumps_from_arrivals(const LevyMeasure& measure,
                                        const std::vector<double>& arrivals) {
  detail::require(!arrivals.empty(), "arrivals must be nonempty");
  std::vector<double> jumps;
  jumps.reserve(arrivals.size());
  for (double a : arrivals) jumps.push_back(levy_tail_inverse(measure, a));
  const double residual = residual_mean_mass(measure, jumps.back());
  return JumpSequence(std::move(jumps), residual);
}

inline constexpr double kDefaultResidualTolerance = 1e-6;
inline constexpr double kDefaultStableResidualTolerance = 1e-3;
inline constexpr std::size_t kDefaultMaxJumps = 1'000'000;

// The stable residual decays like L^(-(1-alpha)/alpha) in the number of
// retained jumps, so it gets a looser default than the gamma measure, whose
// residual decays geometrically.
inline double default_residual_tolerance(const LevyMeasure& measure) noexcept {
  return measure.is_stable() ? kDefaultStableResidualTolerance : kDefaultResidualTolerance;
}

// Inverse-tail series: J_l = tail^{-1}(Gamma_l) for unit-rate arrivals
// Gamma_l, stopping at the first L with residual_mean_mass(J_L) / total at
// or below the tolerance.
inline JumpSequence generate_jumps(const LevyMeasure& measure,
                                   double residual_tolerance,
                                   std::size_t max_jumps, RngStream& rng) {
  detail::require(residual_tolerance > 0.0 && residual_tolerance < 1.0,
                  "residual tolerance must lie in (0, 1)");
  detail::require(max_jumps >= 1, "max_jumps must be positive");

  std::vector<double> jumps;
  double total = 0.0;
  double arrival = 0.0;
  double ratio = std::numeric_limits<double>::infinity();
  const auto* stable = std::get_if<StableMeasure>(&measure.kind());
  const double stable_coef =
      stable ? stable->alpha / (1.0 - stable->alpha) : 0.0;

  while (jumps.size() < max_jumps) {
    arrival += sample_exponential(rng);
    const double jump = levy_tail_inverse(measure, arrival);
    jumps.push_back(jump);
    total += jump;
    // Stable: alpha/(1-alpha) * J^(1-alpha) = alpha/(1-alpha) * J * Gamma.
    const double residual = stable ? stable_coef * jump * arrival
                                   : residual_mean_mass(measure, jump);
    ratio = residual / total;
    if (ratio <= residual_tolerance) {
      return JumpSequence(std::move(jumps), residual);
    }
  }
  throw TruncationError(ratio, residual_tolerance);
}

}  // namespace hitpart

#endif  // HITPART_SUBORDINATOR_HPP_
