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

#ifndef HITPART_ERROR_HPP_
#define HITPART_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace hitpart {

// Parameter or argument outside the documented domain.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An iterative numerical routine failed to converge.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Jump generation exhausted its budget before the residual mass ratio fell
// below the requested tolerance.
class TruncationError : public std::runtime_error {
 public:
  TruncationError(double achieved_ratio, double tolerance)
      : std::runtime_error("jump truncation failed: residual/total ratio " +
                           std::to_string(achieved_ratio) +
                           " above tolerance " + std::to_string(tolerance)),
        achieved_ratio_(achieved_ratio),
        tolerance_(tolerance) {}

  double achieved_ratio() const noexcept { return achieved_ratio_; }
  double tolerance() const noexcept { return tolerance_; }

 private:
  double achieved_ratio_;
  double tolerance_;
};

namespace detail {

inline void require(bool condition, const char* message) {
  if (!condition) throw DomainError(message);
}

}  // namespace detail
}  // namespace hitpart

#endif  // HITPART_ERROR_HPP_
