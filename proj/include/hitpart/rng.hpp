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

#ifndef HITPART_RNG_HPP_
#define HITPART_RNG_HPP_

#include <array>
#include <cstdint>
#include <limits>

namespace hitpart {

// Counter-based Philox4x32-10 generator.
//
// The 64-bit seed is the Philox key and the 64-bit stream id occupies the
// upper half of the 128-bit counter, so every (seed, stream_id) pair indexes
// a disjoint block sequence of the same keyed bijection. Parallel replicates
// take distinct stream ids from one seed. A stream is single-owner; do not
// share one instance between threads.
//
// Satisfies UniformRandomBitGenerator with 64-bit output.
class RngStream {
 public:
  using result_type = std::uint64_t;
  using Block = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  RngStream(std::uint64_t seed, std::uint64_t stream_id) noexcept
      : seed_(seed), stream_id_(stream_id) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept {
    if (buffered_ == 0) refill();
    --buffered_;
    const std::size_t i = buffered_ == 1 ? 0 : 2;
    return (static_cast<std::uint64_t>(buffer_[i]) << 32) | buffer_[i + 1];
  }

  // Uniform on the open interval (0, 1): 53 random bits centred in their
  // bucket, so neither endpoint is reachable.
  double uniform_open() noexcept {
    return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
  }

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  // The raw Philox4x32-10 bijection, exposed for known-answer tests.
  static Block philox(Block ctr, Key key) noexcept {
    constexpr std::uint32_t kM0 = 0xD2511F53u;
    constexpr std::uint32_t kM1 = 0xCD9E8D57u;
    constexpr std::uint32_t kW0 = 0x9E3779B9u;
    constexpr std::uint32_t kW1 = 0xBB67AE85u;
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += kW0;
        key[1] += kW1;
      }
      const std::uint64_t p0 = static_cast<std::uint64_t>(kM0) * ctr[0];
      const std::uint64_t p1 = static_cast<std::uint64_t>(kM1) * ctr[2];
      ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
             static_cast<std::uint32_t>(p1),
             static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
             static_cast<std::uint32_t>(p0)};
    }
    return ctr;
  }

 private:
  void refill() noexcept {
    const Block ctr = {static_cast<std::uint32_t>(block_),
                       static_cast<std::uint32_t>(block_ >> 32),
                       static_cast<std::uint32_t>(stream_id_),
                       static_cast<std::uint32_t>(stream_id_ >> 32)};
    const Key key = {static_cast<std::uint32_t>(seed_),
                     static_cast<std::uint32_t>(seed_ >> 32)};
    buffer_ = philox(ctr, key);
    ++block_;
    buffered_ = 2;
  }

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t block_ = 0;
  Block buffer_{};
  int buffered_ = 0;
};

}  // namespace hitpart

#endif  // HITPART_RNG_HPP_
