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

// hitpart: simulate sub-Frechet max-i.d. vectors, evaluate Poisson-Dirichlet
// partition laws and verify hitting-partition laws from the command line.
//
// Exit codes: 0 success / PASS, 1 statistical FAIL, 2 usage error,
// 3 runtime or numerical error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hitpart/hitpart.hpp"

namespace {

using nlohmann::json;
using namespace hitpart;

constexpr int kSchemaVersion = 1;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string format = "json";
  std::string output;
};

struct MeasureFlags {
  std::string measure = "stable";
  std::optional<double> alpha;
  std::optional<double> theta;

  LevyMeasure build() const {
    if (measure == "stable") {
      if (!alpha) throw UsageError("--measure stable requires --alpha");
      return LevyMeasure::stable(*alpha);
    }
    if (!theta) throw UsageError("--measure gamma requires --theta");
    return LevyMeasure::gamma(*theta);
  }
};

struct Options {
  Common common;
  MeasureFlags measure;
  std::string source = "stable";  // weights: stable | gamma | gem
  std::string case_name = "stable";
  std::size_t n = 4;
  std::uint64_t samples = 1;
  std::uint64_t seed = 0;
  std::optional<double> tolerance;
  std::size_t max_jumps = kDefaultMaxJumps;
  std::optional<std::size_t> count;
  std::string sigma;
  std::vector<std::string> points;
  std::string method = "exact";
  std::size_t outer = 10'000;
  std::size_t inner = 10'000;
  bool labels_only = false;
  unsigned threads = default_threads();
};

std::string num(double x) { return json(x).dump(); }

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string field;
  while (std::getline(in, field, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(field, &used));
      if (used != field.size()) throw std::invalid_argument(field);
    } catch (const std::exception&) {
      throw UsageError("not a number list: " + text);
    }
  }
  if (out.empty()) throw UsageError("empty number list");
  return out;
}

std::string join(const std::vector<double>& v, char sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += num(v[i]);
  }
  return s;
}

std::string quoted(const std::string& s) { return '"' + s + '"'; }

SimulateOptions simulate_options(const Options& o) {
  SimulateOptions so;
  so.residual_tolerance = o.tolerance;
  so.max_jumps = o.max_jumps;
  so.mode = o.labels_only ? MarkMode::kLabelsOnly : MarkMode::kDirect;
  return so;
}

int cmd_simulate(const Options& o, std::ostream& out) {
  const LevyMeasure measure = o.measure.build();
  std::vector<double> scales =
      o.sigma.empty() ? std::vector<double>(o.n, 1.0) : parse_list(o.sigma);
  if (scales.size() != o.n) throw UsageError("--sigma must list exactly n scales");
  const SubFrechetModel model(measure, scales);
  const SimulateOptions so = simulate_options(o);
  const bool csv = o.common.format == "csv";
  if (csv) {
    out << "schema_version,replicate,partition,values,argmax_labels,tie_count,truncation_ratio\n";
  }
  for (std::uint64_t i = 0; i < o.samples; ++i) {
    RngStream rng(o.seed, i);
    const SimulationResult r = simulate(model, so, rng);
    if (csv) {
      std::string labels;
      for (std::size_t k = 0; k < r.argmax_labels.size(); ++k) {
        if (k) labels += ';';
        labels += std::to_string(r.argmax_labels[k]);
      }
      out << kSchemaVersion << ',' << i << ',' << quoted(r.partition.to_string()) << ','
          << quoted(join(r.values, ';')) << ',' << quoted(labels) << ',' << r.tie_count << ','
          << num(r.truncation_ratio) << '\n';
    } else {
      json rec = {{"schema_version", kSchemaVersion},
                  {"replicate", i},
                  {"values", r.values},
                  {"partition", r.partition.to_string()},
                  {"argmax_labels", r.argmax_labels},
                  {"tie_count", r.tie_count},
                  {"truncation_ratio", r.truncation_ratio}};
      out << rec.dump() << '\n';
    }
  }
  return 0;
}

int cmd_pmf(const Options& o, std::ostream& out) {
  if (!o.measure.alpha || !o.measure.theta) throw UsageError("pmf requires --alpha and --theta");
  if (o.n > kMaxEnumerationSize) throw UsageError("pmf requires n <= 12");
  const PDParams params(*o.measure.alpha, *o.measure.theta);
  const bool csv = o.common.format == "csv";
  json rows = json::array();
  double sum = 0.0;
  std::map<BlockSizes, double> cache;
  if (csv) out << "schema_version,partition,probability\n";
  for_each_partition(o.n, [&](const SetPartition& p) {
    const BlockSizes sizes = p.block_sizes();
    auto it = cache.find(sizes);
    if (it == cache.end()) it = cache.emplace(sizes, pd_eppf(params, sizes)).first;
    sum += it->second;
    if (csv) {
      out << kSchemaVersion << ',' << quoted(p.to_string()) << ',' << num(it->second) << '\n';
    } else {
      rows.push_back({{"partition", p.to_string()}, {"probability", it->second}});
    }
  });
  if (csv) {
    out << kSchemaVersion << ",sum," << num(sum) << '\n';
  } else {
    json doc = {{"schema_version", kSchemaVersion},
                {"command", "pmf"},
                {"alpha", params.alpha()},
                {"theta", params.theta()},
                {"n", o.n},
                {"rows", rows},
                {"sum", sum}};
    out << doc.dump(2) << '\n';
  }
  return 0;
}

int cmd_concurrence(const Options& o, std::ostream& out) {
  if (!o.measure.alpha) throw UsageError("concurrence requires --alpha");
  const double alpha = *o.measure.alpha;
  const bool csv = o.common.format == "csv";
  if (o.method == "mc") {
    RngStream rng(o.seed, 0);
    const McEstimate e = concurrence_mc_general(alpha, o.n, o.outer, o.inner, rng);
    const double exact = concurrence_logistic(alpha, o.n);
    if (csv) {
      out << "schema_version,n,estimate,standard_error,inner,exact\n"
          << kSchemaVersion << ',' << o.n << ',' << num(e.estimate) << ','
          << num(e.standard_error) << ',' << e.inner << ',' << num(exact) << '\n';
    } else {
      json doc = {{"schema_version", kSchemaVersion}, {"command", "concurrence"},
                  {"method", "mc"},                   {"alpha", alpha},
                  {"n", o.n},                         {"estimate", e.estimate},
                  {"standard_error", e.standard_error}, {"outer", o.outer},
                  {"inner", e.inner},                 {"exact", exact}};
      out << doc.dump(2) << '\n';
    }
    return 0;
  }
  json rows = json::array();
  if (csv) out << "schema_version,n,probability\n";
  for (std::size_t k = 1; k <= o.n; ++k) {
    const double p = concurrence_logistic(alpha, k);
    if (csv) {
      out << kSchemaVersion << ',' << k << ',' << num(p) << '\n';
    } else {
      rows.push_back({{"n", k}, {"probability", p}});
    }
  }
  if (!csv) {
    json doc = {{"schema_version", kSchemaVersion},
                {"command", "concurrence"},
                {"method", "exact"},
                {"alpha", alpha},
                {"rows", rows}};
    out << doc.dump(2) << '\n';
  }
  return 0;
}

int cmd_cdf(const Options& o, std::ostream& out) {
  const LevyMeasure measure = o.measure.build();
  if (o.sigma.empty()) throw UsageError("cdf requires --sigma");
  if (o.points.empty()) throw UsageError("cdf requires at least one --x point");
  const SubFrechetModel model(measure, parse_list(o.sigma));
  const bool csv = o.common.format == "csv";
  json rows = json::array();
  if (csv) out << "schema_version,x,probability\n";
  for (const std::string& text : o.points) {
    const std::vector<double> x = parse_list(text);
    if (x.size() != model.dimension()) throw UsageError("--x point dimension differs from --sigma");
    const double p = joint_cdf(model, x);
    if (csv) {
      out << kSchemaVersion << ',' << quoted(join(x, ',')) << ',' << num(p) << '\n';
    } else {
      rows.push_back({{"x", x}, {"probability", p}});
    }
  }
  if (!csv) {
    json doc = {{"schema_version", kSchemaVersion},
                {"command", "cdf"},
                {"measure", o.measure.measure},
                {"parameter", measure.parameter()},
                {"sigma", model.scales()},
                {"rows", rows}};
    out << doc.dump(2) << '\n';
  }
  return 0;
}

int cmd_verify(const Options& o, std::ostream& out) {
  MeasureFlags flags = o.measure;
  flags.measure = o.case_name;
  const LevyMeasure m = flags.build();
  const PdCase c = m.is_stable() ? PdCase::stable(m.parameter())
                                        : PdCase::gamma(m.parameter());
  VerifyConfig config;
  config.n = o.n;
  config.samples = o.samples;
  config.seed = o.seed;
  config.options = simulate_options(o);
  config.threads = o.threads;
  const VerifyReport r = verify_pd_law(c, config);
  const double tolerance = o.tolerance.value_or(default_residual_tolerance(m));
  const char* verdict = r.pass ? "PASS" : "FAIL";
  if (o.common.format == "csv") {
    out << "schema_version,case,parameter,n,samples,seed,statistic,dof,p_value,verdict,"
           "partition,observed,expected,pooled\n";
    for (const auto& cell : r.gof.cells) {
      out << kSchemaVersion << ',' << c.name() << ',' << num(m.parameter()) << ',' << o.n << ','
          << o.samples << ',' << o.seed << ',' << num(r.gof.statistic) << ',' << r.gof.dof << ','
          << num(r.gof.p_value) << ',' << verdict << ',' << quoted(cell.key.to_string()) << ','
          << cell.observed << ',' << num(cell.expected) << ',' << (cell.pooled ? 1 : 0) << '\n';
    }
  } else {
    json cells = json::array();
    for (const auto& cell : r.gof.cells) {
      cells.push_back({{"partition", cell.key.to_string()},
                       {"observed", cell.observed},
                       {"expected", cell.expected},
                       {"pooled", cell.pooled}});
    }
    const PDParams pd = c.pd_params();
    json doc = {{"schema_version", kSchemaVersion},
                {"command", "verify"},
                {"case", c.name()},
                {"parameter", m.parameter()},
                {"pd_alpha", pd.alpha()},
                {"pd_theta", pd.theta()},
                {"n", o.n},
                {"samples", o.samples},
                {"seed", o.seed},
                {"residual_tolerance", tolerance},
                {"mode", o.labels_only ? "labels-only" : "direct"},
                {"statistic", r.gof.statistic},
                {"dof", r.gof.dof},
                {"p_value", r.gof.p_value},
                {"threshold", kGofThreshold},
                {"merged_cells", r.gof.merged_cells},
                {"verdict", verdict},
                {"max_truncation_ratio", r.max_truncation_ratio},
                {"total_ties", r.total_ties},
                {"cells", cells}};
    out << doc.dump(2) << '\n';
  }
  return r.pass ? 0 : kExitFail;
}

int cmd_weights(const Options& o, std::ostream& out) {
  RngStream rng(o.seed, 0);
  std::optional<WeightVector> w;
  if (o.source == "gem") {
    if (!o.measure.alpha || !o.measure.theta) throw UsageError("gem requires --alpha and --theta");
    const PDParams params(*o.measure.alpha, *o.measure.theta);
    w = gem_stick_breaking(params, o.count.value_or(gem_default_count(params)), rng);
  } else {
    MeasureFlags flags = o.measure;
    flags.measure = o.source;
    const LevyMeasure m = flags.build();
    const double tol = o.tolerance.value_or(default_residual_tolerance(m));
    w = normalized_jump_weights(generate_jumps(m, tol, o.max_jumps, rng));
  }
  double sum = w->dust();
  for (double x : w->weights()) sum += x;
  if (o.common.format == "csv") {
    out << "schema_version,index,weight\n";
    out << kSchemaVersion << ",0," << num(w->dust()) << '\n';
    for (std::size_t i = 0; i < w->size(); ++i) {
      out << kSchemaVersion << ',' << i + 1 << ',' << num(w->weights()[i]) << '\n';
    }
  } else {
    json doc = {{"schema_version", kSchemaVersion},
                {"command", "weights"},
                {"source", o.source},
                {"seed", o.seed},
                {"weights", w->weights()},
                {"dust", w->dust()},
                {"sum", sum}};
    out << doc.dump(2) << '\n';
  }
  return 0;
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--format", o.common.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--output", o.common.output, "Write data here instead of stdout");
}

void add_measure(CLI::App* sub, Options& o) {
  sub->add_option("--measure", o.measure.measure, "Levy measure")
      ->check(CLI::IsMember({"stable", "gamma"}));
  sub->add_option("--alpha", o.measure.alpha, "Stable index / PD alpha");
  sub->add_option("--theta", o.measure.theta, "Gamma rate / PD theta");
}

void add_truncation(CLI::App* sub, Options& o) {
  sub->add_option("--tolerance", o.tolerance, "Residual mass tolerance (residual/total)")
      ->check(CLI::Range(0.0, 1.0));
  sub->add_option("--max-jumps", o.max_jumps, "Jump budget per replicate")
      ->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hitting partitions of sub-Frechet max-i.d. laws"};
  app.require_subcommand(1);
  Options o;

  auto* sim = app.add_subcommand("simulate", "Simulate replicates (line-delimited records)");
  add_common(sim, o);
  add_measure(sim, o);
  add_truncation(sim, o);
  sim->add_option("--n", o.n, "Dimension")->check(CLI::PositiveNumber);
  sim->add_option("--sigma", o.sigma, "Comma-separated marginal scales (default all 1)");
  sim->add_option("--samples", o.samples, "Number of replicates")->check(CLI::PositiveNumber);
  sim->add_option("--seed", o.seed, "Seed");
  sim->add_flag("--labels-only", o.labels_only, "Draw argmax labels from the conditional law");

  auto* pmf = app.add_subcommand("pmf", "Exact PD(alpha, theta) partition probabilities");
  add_common(pmf, o);
  pmf->add_option("--alpha", o.measure.alpha)->required();
  pmf->add_option("--theta", o.measure.theta)->required();
  pmf->add_option("--n", o.n)->required()->check(CLI::PositiveNumber);

  auto* conc = app.add_subcommand("concurrence", "Concurrence probabilities of the logistic model");
  add_common(conc, o);
  conc->add_option("--alpha", o.measure.alpha)->required();
  conc->add_option("--n", o.n)->required()->check(CLI::PositiveNumber);
  conc->add_option("--method", o.method, "exact table or nested Monte Carlo")
      ->check(CLI::IsMember({"exact", "mc"}));
  conc->add_option("--outer", o.outer)->check(CLI::Range(100, 1 << 30));
  conc->add_option("--inner", o.inner)->check(CLI::Range(100, 1 << 30));
  conc->add_option("--seed", o.seed);

  auto* cdf = app.add_subcommand("cdf", "Exact joint CDF");
  add_common(cdf, o);
  add_measure(cdf, o);
  cdf->add_option("--sigma", o.sigma, "Comma-separated scales")->required();
  cdf->add_option("--x", o.points, "Comma-separated point (repeatable)")->required();

  auto* ver = app.add_subcommand("verify", "Chi-square check of hitting partitions against PD");
  add_common(ver, o);
  add_truncation(ver, o);
  ver->add_option("--case", o.case_name)->required()->check(CLI::IsMember({"stable", "gamma"}));
  ver->add_option("--alpha", o.measure.alpha);
  ver->add_option("--theta", o.measure.theta);
  ver->add_option("--n", o.n)->check(CLI::Range(2, 6));
  ver->add_option("--samples", o.samples)->required()->check(CLI::Range(100000ull, 1ull << 40));
  ver->add_option("--seed", o.seed);
  ver->add_option("--threads", o.threads)->check(CLI::PositiveNumber);
  ver->add_flag("--labels-only", o.labels_only);

  auto* wts = app.add_subcommand("weights", "One sampled paintbox weight vector");
  add_common(wts, o);
  add_truncation(wts, o);
  wts->add_option("--measure", o.source)->check(CLI::IsMember({"stable", "gamma", "gem"}));
  wts->add_option("--alpha", o.measure.alpha);
  wts->add_option("--theta", o.measure.theta);
  wts->add_option("--count", o.count, "GEM stick count")->check(CLI::PositiveNumber);
  wts->add_option("--seed", o.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!o.common.output.empty()) {
      file.open(o.common.output);
      if (!file) throw std::runtime_error("cannot open " + o.common.output);
      out = &file;
    }
    if (*sim) return cmd_simulate(o, *out);
    if (*pmf) return cmd_pmf(o, *out);
    if (*conc) return cmd_concurrence(o, *out);
    if (*cdf) return cmd_cdf(o, *out);
    if (*ver) return cmd_verify(o, *out);
    if (*wts) return cmd_weights(o, *out);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}
