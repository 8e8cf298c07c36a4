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

#ifndef HITPART_PARTITION_HPP_
#define HITPART_PARTITION_HPP_

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "hitpart/error.hpp"

namespace hitpart {

// Block sizes n_1 >= n_2 >= ... >= n_k >= 1 of a partition.
class BlockSizes {
 public:
  explicit BlockSizes(std::vector<std::size_t> sizes) : sizes_(std::move(sizes)) {
    detail::require(!sizes_.empty(), "block sizes must be nonempty");
    for (std::size_t s : sizes_) {
      detail::require(s >= 1, "block sizes must be positive");
    }
    std::sort(sizes_.begin(), sizes_.end(), std::greater<>());
  }

  const std::vector<std::size_t>& sizes() const noexcept { return sizes_; }
  std::size_t num_blocks() const noexcept { return sizes_.size(); }
  std::size_t total() const noexcept {
    std::size_t n = 0;
    for (std::size_t s : sizes_) n += s;
    return n;
  }

  auto operator<=>(const BlockSizes&) const = default;

 private:
  std::vector<std::size_t> sizes_;
};

// Partition of {1, ..., n} stored as its restricted-growth string: element 1
// has label 0 and each element either reuses a label or takes the next unused
// one. Equal partitions have equal strings.
class SetPartition {
 public:
  using Label = std::uint32_t;

  // Validates an existing restricted-growth string.
  explicit SetPartition(std::vector<Label> labels) : labels_(std::move(labels)) {
    detail::require(!labels_.empty(), "partition must cover at least one element");
    Label next = 0;
    for (Label l : labels_) {
      detail::require(l <= next, "labels are not in restricted-growth form");
      if (l == next) ++next;
    }
    num_blocks_ = next;
  }

  // Relabels arbitrary block ids in order of first appearance.
  template <typename Id>
  static SetPartition from_labels(const std::vector<Id>& ids) {
    std::vector<Label> labels(ids.size());
    std::vector<Id> seen;
    for (std::size_t i = 0; i < ids.size(); ++i) {
      auto it = std::find(seen.begin(), seen.end(), ids[i]);
      labels[i] = static_cast<Label>(it - seen.begin());
      if (it == seen.end()) seen.push_back(ids[i]);
    }
    return SetPartition(std::move(labels));
  }

  const std::vector<Label>& labels() const noexcept { return labels_; }
  std::size_t size() const noexcept { return labels_.size(); }
  std::size_t num_blocks() const noexcept { return num_blocks_; }

  BlockSizes block_sizes() const {
    std::vector<std::size_t> sizes(num_blocks_, 0);
    for (Label l : labels_) ++sizes[l];
    return BlockSizes(std::move(sizes));
  }

  // Blocks as sorted 1-based element lists, ordered by smallest element.
  std::vector<std::vector<std::size_t>> blocks() const {
    std::vector<std::vector<std::size_t>> out(num_blocks_);
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      out[labels_[i]].push_back(i + 1);
    }
    return out;
  }

  // Partition induced on the first m elements.
  SetPartition restrict_to(std::size_t m) const {
    detail::require(m >= 1 && m <= labels_.size(), "restriction size out of range");
    return SetPartition(std::vector<Label>(labels_.begin(), labels_.begin() + m));
  }

  bool is_single_block() const noexcept { return num_blocks_ == 1; }

  // "0,0,1,0"
  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(labels_[i]);
    }
    return out;
  }

  static SetPartition parse(std::string_view text) {
    std::vector<Label> labels;
    std::istringstream in{std::string(text)};
    std::string field;
    while (std::getline(in, field, ',')) {
      detail::require(!field.empty() &&
                          field.find_first_not_of("0123456789") == std::string::npos,
                      "partition text must be comma-separated labels");
      labels.push_back(static_cast<Label>(std::stoul(field)));
    }
    return SetPartition(std::move(labels));
  }

  auto operator<=>(const SetPartition& other) const { return labels_ <=> other.labels_; }
  bool operator==(const SetPartition& other) const { return labels_ == other.labels_; }

 private:
  std::vector<Label> labels_;
  std::size_t num_blocks_ = 0;
};

// Canonical form of disjoint nonempty blocks covering {1, ..., n}, where n is
// the total number of elements listed.
inline SetPartition canonicalize(const std::vector<std::vector<std::size_t>>& blocks) {
  std::size_t n = 0;
  for (const auto& b : blocks) {
    detail::require(!b.empty(), "blocks must be nonempty");
    n += b.size();
  }
  detail::require(n >= 1, "partition must cover at least one element");
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> owner(n, kUnset);
  for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
    for (std::size_t e : blocks[bi]) {
      detail::require(e >= 1 && e <= n, "element outside [n]");
      detail::require(owner[e - 1] == kUnset, "blocks overlap");
      owner[e - 1] = bi;
    }
  }
  return SetPartition::from_labels(owner);
}

inline constexpr std::size_t kMaxEnumerationSize = 12;

// Visits every restricted-growth string of length n in lexicographic order.
template <typename Visitor>
void for_each_partition(std::size_t n, Visitor&& visit) {
  detail::require(n >= 1 && n <= kMaxEnumerationSize, "enumeration requires 1 <= n <= 12");
  std::vector<SetPartition::Label> a(n, 0);
  // prefix_max[i] = max(a[0..i])
  std::vector<SetPartition::Label> prefix_max(n, 0);
  for (;;) {
    visit(SetPartition(a));
    std::size_t i = n - 1;
    while (i > 0 && a[i] > prefix_max[i - 1]) --i;
    if (i == 0) return;
    ++a[i];
    prefix_max[i] = std::max(prefix_max[i - 1], a[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      a[j] = 0;
      prefix_max[j] = prefix_max[i];
    }
  }
}

inline std::vector<SetPartition> enumerate_partitions(std::size_t n) {
  std::vector<SetPartition> out;
  for_each_partition(n, [&](const SetPartition& p) { out.push_back(p); });
  return out;
}

}  // namespace hitpart

#endif  // HITPART_PARTITION_HPP_
