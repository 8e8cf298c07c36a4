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

#ifndef HITPART_HITPART_HPP_
#define HITPART_HITPART_HPP_

#include "hitpart/distributions.hpp"
#include "hitpart/error.hpp"
#include "hitpart/maxid.hpp"
#include "hitpart/paintbox.hpp"
#include "hitpart/partition.hpp"
#include "hitpart/poisson_dirichlet.hpp"
#include "hitpart/rng.hpp"
#include "hitpart/special_functions.hpp"
#include "hitpart/stats.hpp"
#include "hitpart/subordinator.hpp"
#include "hitpart/verify.hpp"

#endif  // HITPART_HITPART_HPP_
