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

#include <algorithm>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "hitpart/partition.hpp"
#include "hitpart/rng.hpp"

namespace hitpart {
namespace {

using Labels = std::vector<SetPartition::Label>;

// Bell numbers from the Bell triangle.
std::vector<std::size_t> bell_numbers(std::size_t up_to) {
  std::vector<std::size_t> bell{1};
  std::vector<std::size_t> row{1};
  for (std::size_t i = 1; i <= up_to; ++i) {
    std::vector<std::size_t> next{row.back()};
    for (std::size_t v : row) next.push_back(next.back() + v);
    row = next;
    bell.push_back(row.front());
  }
  return bell;
}

TEST(Canonicalize, Examples) {
  EXPECT_EQ(canonicalize({{1, 2, 3}}).labels(), (Labels{0, 0, 0}));
  EXPECT_EQ(canonicalize({{2}, {1, 3}}).labels(), (Labels{0, 1, 0}));
  EXPECT_EQ(canonicalize({{3}, {1}, {2}}).labels(), (Labels{0, 1, 2}));
}

TEST(Canonicalize, InvariantUnderBlockOrderAndIdempotent) {
  const auto a = canonicalize({{4, 1}, {2}, {5, 3}});
  const auto b = canonicalize({{3, 5}, {1, 4}, {2}});
  EXPECT_EQ(a, b);
  EXPECT_EQ(canonicalize(a.blocks()), a);
}

TEST(Canonicalize, RejectsInvalidBlocks) {
  EXPECT_THROW(canonicalize({{1, 2}, {2}}), DomainError);
  EXPECT_THROW(canonicalize({{1}, {3}}), DomainError);
  EXPECT_THROW(canonicalize({{1}, {}}), DomainError);
  EXPECT_THROW(canonicalize({}), DomainError);
}

TEST(SetPartition, RejectsNonRestrictedGrowth) {
  EXPECT_THROW(SetPartition(Labels{1, 0}), DomainError);
  EXPECT_THROW(SetPartition(Labels{0, 2}), DomainError);
  EXPECT_THROW(SetPartition(Labels{}), DomainError);
}

TEST(SetPartition, BlocksAndSizes) {
  const SetPartition p(Labels{0, 1, 0, 2, 1, 0});
  EXPECT_EQ(p.num_blocks(), 3u);
  EXPECT_EQ(p.block_sizes().sizes(), (std::vector<std::size_t>{3, 2, 1}));
  EXPECT_EQ(p.blocks(), (std::vector<std::vector<std::size_t>>{{1, 3, 6}, {2, 5}, {4}}));
  EXPECT_EQ(p.restrict_to(2).labels(), (Labels{0, 1}));
  EXPECT_EQ(p.restrict_to(4).num_blocks(), 3u);
}

TEST(SetPartition, FromArbitraryLabels) {
  EXPECT_EQ(SetPartition::from_labels(std::vector<int>{7, 3, 7, 9}).labels(), (Labels{0, 1, 0, 2}));
}

TEST(SetPartition, TextFormRoundTrips) {
  RngStream rng(1, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 15;
    std::vector<std::uint64_t> ids(n);
    for (auto& id : ids) id = rng() % 5;
    const auto p = SetPartition::from_labels(ids);
    EXPECT_EQ(SetPartition::parse(p.to_string()), p);
  }
  EXPECT_EQ(SetPartition(Labels{0, 0, 1, 0}).to_string(), "0,0,1,0");
  EXPECT_THROW(SetPartition::parse("0,,1"), DomainError);
  EXPECT_THROW(SetPartition::parse("0,x"), DomainError);
  EXPECT_THROW(SetPartition::parse("1,0"), DomainError);
}

TEST(Enumerate, CountsAreBellNumbers) {
  const auto bell = bell_numbers(kMaxEnumerationSize);
  EXPECT_EQ(enumerate_partitions(3).size(), 5u);
  EXPECT_EQ(enumerate_partitions(4).size(), 15u);
  EXPECT_EQ(enumerate_partitions(5).size(), 52u);
  for (std::size_t n = 1; n <= 9; ++n) {
    const auto all = enumerate_partitions(n);
    EXPECT_EQ(all.size(), bell[n]) << n;
    const std::set<SetPartition> distinct(all.begin(), all.end());
    EXPECT_EQ(distinct.size(), all.size());
    EXPECT_TRUE(std::is_sorted(all.begin(), all.end()));
  }
  std::size_t count = 0;
  for_each_partition(12, [&](const SetPartition&) { ++count; });
  EXPECT_EQ(count, bell[12]);
}

TEST(Enumerate, RejectsOutOfRange) {
  EXPECT_THROW(enumerate_partitions(0), DomainError);
  EXPECT_THROW(enumerate_partitions(13), DomainError);
}

}  // namespace
}  // namespace hitpart
