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

#include <gtest/gtest.h>

#include "hitpart/verify.hpp"

namespace hitpart {
namespace {

TEST(PdPartitionLaw, SumsToOne) {
  for (std::size_t n = 1; n <= 6; ++n) {
    for (const PDParams& p : {PDParams(0.5, 0.0), PDParams(0.0, 2.0), PDParams(0.3, 1.2)}) {
      double s = 0.0;
      for (const auto& [part, prob] : pd_partition_law(p, n)) s += prob;
      EXPECT_NEAR(s, 1.0, 1e-12);
    }
  }
}

TEST(PdCase, ParameterMapping) {
  const auto s = PdCase::stable(0.4);
  EXPECT_EQ(s.pd_params().alpha(), 0.4);
  EXPECT_EQ(s.pd_params().theta(), 0.0);
  EXPECT_EQ(s.name(), "stable");
  const auto g = PdCase::gamma(3.0);
  EXPECT_EQ(g.pd_params().alpha(), 0.0);
  EXPECT_EQ(g.pd_params().theta(), 3.0);
  EXPECT_EQ(g.name(), "gamma");
}

TEST(VerifyPdLaw, GammaPasses) {
  VerifyConfig config;
  config.n = 3;
  config.samples = 100'000;
  config.seed = 7;
  const auto r = verify_pd_law(PdCase::gamma(2.0), config);
  EXPECT_TRUE(r.pass) << "p = " << r.gof.p_value;
  EXPECT_EQ(r.gof.sample_size, 100'000u);
  EXPECT_EQ(r.gof.dof, 4u);
  EXPECT_LE(r.max_truncation_ratio, 1e-6);
}

TEST(VerifyPdLaw, RejectsWrongLaw) {
  // gamma(1) partitions tested against PD(0, 2).
  const auto model = SubFrechetModel::unit_scales(LevyMeasure::gamma(1.0), 3);
  const auto tally = tally_simulations(model, {}, 100'000, 8);
  const auto gof = chi_square_gof(tally.counts, pd_partition_law(PDParams(0.0, 2.0), 3));
  EXPECT_LT(gof.p_value, 1e-12);
}

TEST(VerifyPdLaw, RangeChecks) {
  VerifyConfig config;
  config.n = 1;
  EXPECT_THROW(verify_pd_law(PdCase::gamma(1.0), config), DomainError);
  config.n = 7;
  EXPECT_THROW(verify_pd_law(PdCase::gamma(1.0), config), DomainError);
  config.n = 3;
  config.samples = 99'999;
  EXPECT_THROW(verify_pd_law(PdCase::gamma(1.0), config), DomainError);
}

TEST(RunReplicates, IndependentOfThreadCount) {
  const auto model = SubFrechetModel::unit_scales(LevyMeasure::stable(0.5), 4);
  SimulateOptions options;
  options.residual_tolerance = 1e-2;
  const auto one = tally_simulations(model, options, 3000, 9, 1);
  const auto many = tally_simulations(model, options, 3000, 9, 7);
  EXPECT_EQ(one.counts, many.counts);
  EXPECT_EQ(one.max_truncation_ratio, many.max_truncation_ratio);
  EXPECT_EQ(one.total_ties, many.total_ties);
  EXPECT_EQ(one.replicates, 3000u);
  EXPECT_EQ(many.replicates, 3000u);
}

TEST(RunReplicates, PropagatesWorkerErrors) {
  const auto model = SubFrechetModel::unit_scales(LevyMeasure::stable(0.99), 2);
  SimulateOptions options;
  options.max_jumps = 10;
  EXPECT_THROW(tally_simulations(model, options, 100, 10, 4), TruncationError);
}

TEST(TallyPartitions, CountsEverySample) {
  const auto counts = tally_partitions(
      5000, 11, [](RngStream& rng) { return crp_sample(PDParams(0.5, 0.0), 4, rng); }, 3);
  std::uint64_t total = 0;
  for (const auto& [p, c] : counts) total += c;
  EXPECT_EQ(total, 5000u);
}

}  // namespace
}  // namespace hitpart
