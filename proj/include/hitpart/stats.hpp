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

#ifndef HITPART_STATS_HPP_
#define HITPART_STATS_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <utility>
#include <vector>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "hitpart/error.hpp"

namespace hitpart {

inline constexpr double kMinExpectedCount = 5.0;

// P(X > statistic) for X ~ chi-square(dof), via the regularized upper
// incomplete gamma Q(dof/2, statistic/2).
inline double chi_square_upper_tail(double statistic, std::size_t dof) {
  detail::require(dof >= 1, "chi-square needs at least one degree of freedom");
  detail::require(statistic >= 0.0, "chi-square statistic must be nonnegative");
  if (std::isinf(statistic)) return 0.0;
  if (statistic == 0.0) return 1.0;
  return boost::math::gamma_q(0.5 * static_cast<double>(dof), 0.5 * statistic);
}

template <typename Key>
struct GofCell {
  Key key;
  std::uint64_t observed = 0;
  double expected = 0.0;  // count, not probability
  bool pooled = false;
};

template <typename Key>
struct GofReport {
  double statistic = 0.0;
  std::size_t dof = 0;
  double p_value = 1.0;
  std::uint64_t sample_size = 0;
  std::vector<GofCell<Key>> cells;  // ranked by expected count
  std::size_t merged_cells = 0;
};

namespace detail {

// Indices ranked by descending weight; returns how many lead the ranking
// before pooling begins, after topping up the pool to the minimum count.
inline std::size_t pooling_split(const std::vector<double>& weight) {
  std::size_t retained = 0;
  while (retained < weight.size() && weight[retained] >= kMinExpectedCount) ++retained;
  if (retained == weight.size()) return retained;
  double pool = 0.0;
  for (std::size_t i = retained; i < weight.size(); ++i) pool += weight[i];
  while (pool < kMinExpectedCount && retained > 0) {
    --retained;
    pool += weight[retained];
  }
  return retained;
}

}  // namespace detail

// Pearson goodness of fit of observed counts against cell probabilities.
// Cells are ranked by expected count; those below five are merged into one
// pooled cell (topped up from the smallest retained cell if needed). Observed
// keys missing from `expected` count as probability-zero cells.
template <typename Key>
GofReport<Key> chi_square_gof(const std::map<Key, std::uint64_t>& observed,
                              const std::map<Key, double>& expected) {
  std::uint64_t total = 0;
  for (const auto& [key, count] : observed) total += count;
  double prob_sum = 0.0;
  for (const auto& [key, p] : expected) {
    detail::require(p >= 0.0, "expected probabilities must be nonnegative");
    prob_sum += p;
  }
  detail::require(std::fabs(prob_sum - 1.0) <= 1e-9, "expected probabilities must sum to 1");
  detail::require(total >= 1000, "goodness of fit needs at least 1000 observations");

  GofReport<Key> report;
  report.sample_size = total;
  const double n = static_cast<double>(total);
  for (const auto& [key, p] : expected) {
    auto it = observed.find(key);
    report.cells.push_back({key, it == observed.end() ? 0 : it->second, n * p, false});
  }
  for (const auto& [key, count] : observed) {
    if (!expected.contains(key)) report.cells.push_back({key, count, 0.0, false});
  }
  std::stable_sort(report.cells.begin(), report.cells.end(),
                   [](const auto& a, const auto& b) { return a.expected > b.expected; });

  std::vector<double> weight;
  for (const auto& c : report.cells) weight.push_back(c.expected);
  const std::size_t retained = detail::pooling_split(weight);

  double stat = 0.0;
  double pool_e = 0.0;
  double pool_o = 0.0;
  for (std::size_t i = 0; i < report.cells.size(); ++i) {
    auto& c = report.cells[i];
    if (i < retained) {
      const double d = static_cast<double>(c.observed) - c.expected;
      stat += d * d / c.expected;
    } else {
      c.pooled = true;
      pool_e += c.expected;
      pool_o += static_cast<double>(c.observed);
      ++report.merged_cells;
    }
  }
  const std::size_t groups = retained + (report.merged_cells > 0 ? 1 : 0);
  detail::require(groups >= 2, "expected vector is degenerate after pooling");
  if (report.merged_cells > 0) {
    if (pool_e > 0.0) {
      stat += (pool_o - pool_e) * (pool_o - pool_e) / pool_e;
    } else if (pool_o > 0.0) {
      stat = std::numeric_limits<double>::infinity();
    }
  }
  report.statistic = stat;
  report.dof = groups - 1;
  report.p_value = chi_square_upper_tail(stat, report.dof);
  return report;
}

struct TwoSampleReport {
  double statistic = 0.0;
  std::size_t dof = 0;
  double p_value = 1.0;
  std::uint64_t size_a = 0;
  std::uint64_t size_b = 0;
  std::size_t merged_cells = 0;
};

// Chi-square test of homogeneity for two count tables over the same cells
// (2 x K contingency table), pooling cells with either expected count below
// five.
template <typename Key>
TwoSampleReport chi_square_two_sample(const std::map<Key, std::uint64_t>& a,
                                      const std::map<Key, std::uint64_t>& b) {
  std::map<Key, std::pair<std::uint64_t, std::uint64_t>> joint;
  TwoSampleReport report;
  for (const auto& [k, c] : a) {
    joint[k].first += c;
    report.size_a += c;
  }
  for (const auto& [k, c] : b) {
    joint[k].second += c;
    report.size_b += c;
  }
  detail::require(report.size_a >= 1000 && report.size_b >= 1000,
                  "two-sample test needs at least 1000 observations per sample");
  const double na = static_cast<double>(report.size_a);
  const double nb = static_cast<double>(report.size_b);
  const double share_a = na / (na + nb);
  const double smaller = std::min(share_a, 1.0 - share_a);

  std::vector<std::pair<std::uint64_t, std::uint64_t>> cells;
  for (const auto& [k, ab] : joint) cells.push_back(ab);
  std::stable_sort(cells.begin(), cells.end(), [](const auto& x, const auto& y) {
    return x.first + x.second > y.first + y.second;
  });
  std::vector<double> weight;
  for (const auto& [ca, cb] : cells) weight.push_back(smaller * static_cast<double>(ca + cb));
  const std::size_t retained = detail::pooling_split(weight);

  auto contribution = [&](double oa, double ob) {
    const double t = oa + ob;
    const double ea = t * share_a;
    const double eb = t * (1.0 - share_a);
    return (oa - ea) * (oa - ea) / ea + (ob - eb) * (ob - eb) / eb;
  };
  double stat = 0.0;
  double pool_a = 0.0;
  double pool_b = 0.0;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const double oa = static_cast<double>(cells[i].first);
    const double ob = static_cast<double>(cells[i].second);
    if (i < retained) {
      stat += contribution(oa, ob);
    } else {
      pool_a += oa;
      pool_b += ob;
      ++report.merged_cells;
    }
  }
  if (report.merged_cells > 0 && pool_a + pool_b > 0.0) stat += contribution(pool_a, pool_b);
  const std::size_t groups = retained + (report.merged_cells > 0 ? 1 : 0);
  detail::require(groups >= 2, "two-sample table is degenerate after pooling");
  report.statistic = stat;
  report.dof = groups - 1;
  report.p_value = chi_square_upper_tail(stat, report.dof);
  return report;
}

struct CiReport {
  double estimate = 0.0;
  double half_width = 0.0;
  double level = 0.0;
  std::uint64_t n = 0;
  bool degenerate = false;  // plug-in variance is zero

  bool contains(double value) const noexcept {
    return std::fabs(value - estimate) <= half_width;
  }
};

// Normal-approximation (Wald) interval p_hat +- z sqrt(p_hat (1 - p_hat) / n).
// Approximate; collapses to zero width at p_hat in {0, 1}.
inline CiReport binomial_ci(std::uint64_t successes, std::uint64_t trials, double level) {
  detail::require(trials >= 1, "binomial interval needs at least one trial");
  detail::require(successes <= trials, "successes exceed trials");
  detail::require(level > 0.0 && level < 1.0, "confidence level must lie in (0, 1)");
  const double p = static_cast<double>(successes) / static_cast<double>(trials);
  const double z = boost::math::quantile(boost::math::normal(), 0.5 + 0.5 * level);
  CiReport ci;
  ci.estimate = p;
  ci.half_width = z * std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
  ci.level = level;
  ci.n = trials;
  ci.degenerate = successes == 0 || successes == trials;
  return ci;
}

}  // namespace hitpart

#endif  // HITPART_STATS_HPP_
