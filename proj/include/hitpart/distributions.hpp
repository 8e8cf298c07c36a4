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

#ifndef HITPART_DISTRIBUTIONS_HPP_
#define HITPART_DISTRIBUTIONS_HPP_

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "hitpart/error.hpp"
#include "hitpart/rng.hpp"

namespace hitpart {

// Scale of a 1-Frechet law, P(Y <= x) = exp(-sigma / x).
class FrechetScale {
 public:
  explicit FrechetScale(double sigma) : sigma_(sigma) {
    detail::require(sigma > 0.0 && std::isfinite(sigma),
                    "Frechet scale must be positive and finite");
  }
  double sigma() const noexcept { return sigma_; }

 private:
  double sigma_;
};

inline double sample_exponential(RngStream& rng) noexcept {
  return -std::log(rng.uniform_open());
}

// Inverse CDF of the 1-Frechet law.
inline double frechet_from_uniform(FrechetScale scale, double u) noexcept {
  return scale.sigma() / -std::log(u);
}

inline double sample_frechet(FrechetScale scale, RngStream& rng) noexcept {
  return frechet_from_uniform(scale, rng.uniform_open());
}

inline double frechet_cdf(FrechetScale scale, double x) noexcept {
  return x > 0.0 ? std::exp(-scale.sigma() / x) : 0.0;
}

// Box-Muller, one output per call.
inline double sample_standard_normal(RngStream& rng) noexcept {
  const double r = std::sqrt(-2.0 * std::log(rng.uniform_open()));
  return r * std::cos(2.0 * 3.14159265358979323846 * rng.uniform_open());
}

namespace detail {

// log of a Gamma(shape, 1) variate (Marsaglia-Tsang). Shapes below one use
// the boost G(a) = G(a + 1) * U^(1/a), kept in log space so tiny shapes do
// not underflow.
inline double sample_log_gamma(double shape, RngStream& rng) noexcept {
  double log_boost = 0.0;
  if (shape < 1.0) {
    log_boost = std::log(rng.uniform_open()) / shape;
    shape += 1.0;
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    const double x = sample_standard_normal(rng);
    double v = 1.0 + c * x;
    if (v <= 0.0) continue;
    v = v * v * v;
    const double u = rng.uniform_open();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2 ||
        std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) {
      return std::log(d * v) + log_boost;
    }
  }
}

}  // namespace detail

inline double sample_gamma(double shape, RngStream& rng) {
  detail::require(shape > 0.0, "gamma shape must be positive");
  return std::exp(detail::sample_log_gamma(shape, rng));
}

// Beta(a, b) as X / (X + Y) with independent gamma variates, evaluated from
// their logarithms. The result is clamped into the open interval.
inline double sample_beta(double a, double b, RngStream& rng) {
  detail::require(a > 0.0 && b > 0.0, "beta parameters must be positive");
  const double log_x = detail::sample_log_gamma(a, rng);
  const double log_y = detail::sample_log_gamma(b, rng);
  const double w = 1.0 / (1.0 + std::exp(log_y - log_x));
  constexpr double kTiny = std::numeric_limits<double>::denorm_min();
  if (w <= 0.0) return kTiny;
  if (w >= 1.0) return std::nextafter(1.0, 0.0);
  return w;
}

// Arrival times of a unit-rate Poisson process: partial sums of standard
// exponentials.
inline std::vector<double> poisson_arrivals(std::size_t count,
                                            RngStream& rng) {
  detail::require(count >= 1, "arrival count must be positive");
  std::vector<double> arrivals;
  arrivals.reserve(count);
  double t = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    t += sample_exponential(rng);
    arrivals.push_back(t);
  }
  return arrivals;
}

}  // namespace hitpart

#endif  // HITPART_DISTRIBUTIONS_HPP_
