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

#ifndef HITPART_SPECIAL_FUNCTIONS_HPP_
#define HITPART_SPECIAL_FUNCTIONS_HPP_

#include <cmath>
#include <limits>

#include "hitpart/error.hpp"

namespace hitpart {

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

// Exponential integral E1(x) = int_x^inf exp(-t) / t dt for x > 0.
//
// Power series on (0, 1], modified-Lentz continued fraction above. Both
// branches reach ~1e-15 relative accuracy.
inline double exp_integral_e1(double x) {
  detail::require(x > 0.0, "E1 requires x > 0");
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  constexpr int kMaxIter = 1000;
  if (std::isinf(x)) return 0.0;

  if (x <= 1.0) {
    // E1(x) = -gamma - ln x - sum_{k>=1} (-x)^k / (k k!)
    double sum = 0.0;
    double term = 1.0;  // (-x)^k / k!
    for (int k = 1; k <= kMaxIter; ++k) {
      term *= -x / k;
      const double contrib = term / k;
      sum += contrib;
      if (std::fabs(contrib) < kEps * std::fabs(sum)) {
        return -kEulerGamma - std::log(x) - sum;
      }
    }
    throw NumericalError("E1 series failed to converge");
  }

  // E1(x) = exp(-x) / (x + 1 - 1/(x + 3 - 4/(x + 5 - ...)))
  constexpr double kFpMin = std::numeric_limits<double>::min() / kEps;
  double b = x + 1.0;
  double c = 1.0 / kFpMin;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kMaxIter; ++i) {
    const double an = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (an * d + b);
    c = b + an / c;
    const double del = c * d;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return h * std::exp(-x);
  }
  throw NumericalError("E1 continued fraction failed to converge");
}

}  // namespace hitpart

#endif  // HITPART_SPECIAL_FUNCTIONS_HPP_
