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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. All seeds are fixed.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "hitpart/hitpart.hpp"

namespace {

using nlohmann::json;
using namespace hitpart;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Shell {
  int status = -1;
  std::string out;
};

Shell shell(const std::string& args) {
  const std::string cmd = std::string(HITPART_CLI_PATH) + " " + args;
  Shell r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string fmt(double x, int precision = 6) {
  std::ostringstream s;
  s.precision(precision);
  s << x;
  return s.str();
}

bool single_block(const SetPartition& p) { return p.is_single_block(); }

double within_band(double freq, double p, double n) {
  return std::fabs(freq - p) / std::sqrt(p * (1.0 - p) / n);
}

// Counts from the C2 n=4 run, reused by the negative control.
PartitionCounts g_stable_n4_counts;

Outcome c1() {
  Outcome o{true, ""};
  const Shell exact = shell("concurrence --alpha 0.5 --n 4");
  if (exact.status != 0) return {false, "concurrence command failed"};
  const json doc = json::parse(exact.out);
  const double expected[] = {1.0, 0.5, 0.375, 0.3125};
  for (int k = 1; k < 4; ++k) {
    const double got = doc["rows"][k]["probability"];
    if (std::fabs(got - expected[k]) > 1e-15) o.pass = false;
    o.detail += "p(" + std::to_string(k + 1) + ")=" + fmt(got) + " ";
  }
  // One direct run at n=4; the n=2 and n=3 frequencies come from restricting
  // each replicate's partition to the leading coordinates.
  const std::uint64_t samples = 200'000;
  SimulateOptions options;
  options.residual_tolerance = 5e-4;
  const auto tally = tally_simulations(SubFrechetModel::unit_scales(LevyMeasure::stable(0.5), 4),
                                       options, samples, 101);
  std::array<std::uint64_t, 5> hits{};
  for (const auto& [p, c] : tally.counts) {
    for (std::size_t m = 2; m <= 4; ++m) {
      if (single_block(p.restrict_to(m))) hits[m] += c;
    }
  }
  for (std::size_t m = 2; m <= 4; ++m) {
    const double f = static_cast<double>(hits[m]) / samples;
    const double z = within_band(f, expected[m - 1], samples);
    if (z > 3.0) o.pass = false;
    o.detail += "freq(" + std::to_string(m) + ")=" + fmt(f) + " z=" + fmt(z, 3) + " ";
  }
  return o;
}

Outcome verify_cli(const std::string& args, PartitionCounts* keep) {
  const Shell r = shell(args);
  if (r.out.empty()) return {false, "no output, exit " + std::to_string(r.status)};
  const json doc = json::parse(r.out);
  if (keep != nullptr) {
    for (const auto& cell : doc["cells"]) {
      (*keep)[SetPartition::parse(cell["partition"].get<std::string>())] =
          cell["observed"].get<std::uint64_t>();
    }
  }
  const double p = doc["p_value"];
  return {r.status == 0 && doc["verdict"] == "PASS",
          "cells=" + std::to_string(doc["cells"].size()) + " p=" + fmt(p, 4) + " exit=" +
              std::to_string(r.status)};
}

Outcome c2() {
  const Outcome a =
      verify_cli("verify --case stable --alpha 0.5 --n 4 --samples 200000 --seed 42",
                 &g_stable_n4_counts);
  const Outcome b =
      verify_cli("verify --case stable --alpha 0.5 --n 5 --samples 200000 --seed 42", nullptr);
  return {a.pass && b.pass, "n=4: " + a.detail + "; n=5: " + b.detail};
}

Outcome c3() {
  Outcome o{true, ""};
  for (const char* theta : {"0.5", "1", "3"}) {
    const Outcome r = verify_cli(
        std::string("verify --case gamma --theta ") + theta + " --n 4 --samples 200000 --seed 42",
        nullptr);
    o.pass = o.pass && r.pass;
    o.detail += std::string("theta=") + theta + ": " + r.detail + "; ";
  }
  return o;
}

Outcome c4() {
  RngStream rng(404, 0);
  const auto jumps = jumps_from_arrivals(LevyMeasure::stable(0.5), poisson_arrivals(20, rng));
  const auto law = conditional_label_law(jumps);
  std::map<std::size_t, double> expected;
  for (std::size_t l = 0; l < law.size(); ++l) expected[l] = law.weights()[l];
  const auto observed = run_replicates<std::map<std::size_t, std::uint64_t>>(
      50'000, 405, default_threads(),
      [&](auto& acc, std::uint64_t, RngStream& r) {
        ++acc[direct_coordinate_max(jumps.jumps(), 1.0, r).label];
      },
      [](auto& into, const auto& from) {
        for (const auto& [k, c] : from) into[k] += c;
      });
  const auto gof = chi_square_gof(observed, expected);
  return {gof.p_value > kGofThreshold,
          "stat=" + fmt(gof.statistic) + " dof=" + std::to_string(gof.dof) +
              " p=" + fmt(gof.p_value, 4)};
}

Outcome c5() {
  double worst_sum = 0.0;
  for (const PDParams& params :
       {PDParams(0.5, 0.0), PDParams(0.0, 1.0), PDParams(0.3, 0.7), PDParams(-0.5, 1.0)}) {
    for (std::size_t n = 1; n <= 8; ++n) {
      double s = 0.0;
      for_each_partition(n, [&](const SetPartition& p) { s += pd_eppf(params, p); });
      worst_sum = std::max(worst_sum, std::fabs(s - 1.0));
    }
  }
  double worst_product = 0.0;
  for (int a = 1; a <= 9; ++a) {
    const double alpha = a / 10.0;
    for (std::size_t n = 1; n <= 8; ++n) {
      double product = 1.0;
      for (std::size_t i = 1; i < n; ++i) product *= (static_cast<double>(i) - alpha) / i;
      const double got = pd_eppf(PDParams(alpha, 0.0), BlockSizes({n}));
      worst_product = std::max(worst_product, std::fabs(got - product));
    }
  }
  return {worst_sum <= 1e-10 && worst_product <= 1e-12,
          "max|sum-1|=" + fmt(worst_sum, 3) + " max|eppf-product|=" + fmt(worst_product, 3)};
}

Outcome c6() {
  const PDParams params(0.5, 0.0);
  const std::uint64_t samples = 200'000;
  const auto crp = tally_partitions(samples, 601, [&](RngStream& rng) {
    return crp_sample(params, 4, rng);
  });
  const auto gem = tally_partitions(samples, 602, [&](RngStream& rng) {
    return paintbox_sample(gem_stick_breaking(params, 200, rng), 4, rng);
  });
  const auto jump = tally_partitions(samples, 603, [&](RngStream& rng) {
    const auto jumps =
        generate_jumps(LevyMeasure::stable(0.5), kDefaultStableResidualTolerance,
                       kDefaultMaxJumps, rng);
    return paintbox_sample(normalized_jump_weights(jumps), 4, rng);
  });
  const double p1 = chi_square_two_sample(crp, gem).p_value;
  const double p2 = chi_square_two_sample(crp, jump).p_value;
  const double p3 = chi_square_two_sample(gem, jump).p_value;
  return {p1 > kGofThreshold && p2 > kGofThreshold && p3 > kGofThreshold,
          "crp/gem p=" + fmt(p1, 4) + " crp/jump p=" + fmt(p2, 4) + " gem/jump p=" + fmt(p3, 4)};
}

Outcome c7() {
  Outcome o{true, ""};
  const double spot_stable =
      joint_cdf(SubFrechetModel(LevyMeasure::stable(0.5), {1.0, 1.0}), {1.0, 2.0});
  const double spot_gamma = joint_cdf(SubFrechetModel(LevyMeasure::gamma(1.0), {1.0}), {1.0});
  o.pass = spot_stable == std::exp(-std::sqrt(1.5)) && spot_gamma == 0.5;
  o.detail = "spots " + fmt(spot_stable, 17) + " " + fmt(spot_gamma, 17) + "; ";

  struct Case {
    LevyMeasure measure;
    std::vector<double> grid;
    std::uint64_t seed;
  };
  const std::vector<Case> cases = {{LevyMeasure::stable(0.5), {0.5, 2.0, 10.0}, 701},
                                   {LevyMeasure::gamma(1.0), {1.0, 3.0, 10.0}, 702}};
  const std::uint64_t samples = 100'000;
  for (const auto& c : cases) {
    const SubFrechetModel model(c.measure, {1.0, 1.0});
    SimulateOptions options;
    if (c.measure.is_stable()) options.residual_tolerance = 5e-4;
    using Grid = std::array<std::uint64_t, 9>;
    const Grid below = run_replicates<Grid>(
        samples, c.seed, default_threads(),
        [&](Grid& acc, std::uint64_t, RngStream& rng) {
          const auto v = simulate(model, options, rng).values;
          for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t j = 0; j < 3; ++j) acc[3 * i + j] += v[0] <= c.grid[i] && v[1] <= c.grid[j];
          }
        },
        [](Grid& into, const Grid& from) {
          for (std::size_t i = 0; i < 9; ++i) into[i] += from[i];
        });
    double worst = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        const double p = joint_cdf(model, {c.grid[i], c.grid[j]});
        const double f = static_cast<double>(below[3 * i + j]) / samples;
        worst = std::max(worst, within_band(f, p, samples));
      }
    }
    if (worst > 3.0) o.pass = false;
    o.detail += (c.measure.is_stable() ? "stable" : "gamma") + std::string(" max z=") + fmt(worst, 3) + "; ";
  }
  return o;
}

Outcome c8() {
  const std::uint64_t samples = 200'000;
  const auto unit = tally_simulations(
      SubFrechetModel::unit_scales(LevyMeasure::stable(0.5), 4), {}, samples, 801);
  const auto scaled = tally_simulations(
      SubFrechetModel(LevyMeasure::stable(0.5), {1.0, 2.0, 5.0, 10.0}), {}, samples, 802);
  const auto r = chi_square_two_sample(unit.counts, scaled.counts);
  return {r.p_value > kGofThreshold,
          "stat=" + fmt(r.statistic) + " dof=" + std::to_string(r.dof) + " p=" + fmt(r.p_value, 4)};
}

Outcome c9() {
  if (g_stable_n4_counts.empty()) return {false, "no counts from the stable n=4 run"};
  const auto gof = chi_square_gof(g_stable_n4_counts, pd_partition_law(PDParams(0.0, 1.0), 4));
  return {gof.p_value < kGofThreshold,
          "PD(0.5,0) sample vs PD(0,1): stat=" + fmt(gof.statistic) + " p=" + fmt(gof.p_value, 4)};
}

Outcome c10() {
  // 200 full harness runs (gamma(1) hitting partitions against PD(0, 1)).
  const auto model = SubFrechetModel::unit_scales(LevyMeasure::gamma(1.0), 4);
  const auto law = pd_partition_law(PDParams(0.0, 1.0), 4);
  int below = 0;
  const int runs = 200;
  for (int i = 0; i < runs; ++i) {
    const auto tally = tally_simulations(model, {}, 10'000, 1000 + i);
    below += chi_square_gof(tally.counts, law).p_value < 0.05;
  }
  const double fraction = below / static_cast<double>(runs);
  return {fraction >= 0.01 && fraction <= 0.12,
          std::to_string(below) + "/" + std::to_string(runs) + " runs with p<0.05 (fraction " +
              fmt(fraction, 3) + ")"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"C1 concurrence formula", c1},        {"C2 stable hitting partitions", c2},
      {"C3 gamma hitting partitions", c3},   {"C4 conditional argmax law", c4},
      {"C5 EPPF exactness", c5},             {"C6 sampler triangle", c6},
      {"C7 joint CDF", c7},                  {"C8 scale invariance", c8},
      {"C9 negative control", c9},           {"C10 null calibration", c10},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !o.pass;
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << " | " << o.detail << " | "
              << fmt(secs, 3) << "s" << std::endl;
  }
  std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << std::endl;
  return failures == 0 ? 0 : 1;
}
