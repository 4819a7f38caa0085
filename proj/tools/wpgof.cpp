// Copyright 2026 The wpgof Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// wpgof: Poisson goodness-of-fit tests from the command line.
//
//   wpgof test  --data sparrow.csv --tests all --reps 100000 --alpha 0.10 --seed 7
//   wpgof stat  --data horsekicks.csv --tests tinf-fit,kl
//   wpgof power --preset desk --out desk.csv --workers 0
//
// Exit status: 0 success, 1 usage or parse error, 2 numeric/domain error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "wpgof/cli/config.hpp"
#include "wpgof/cli/dataset.hpp"
#include "wpgof/cli/report.hpp"
#include "wpgof/error.hpp"

namespace {

using namespace wpgof;

struct Options {
  std::string data;
  std::string tests = "all";
  std::size_t reps = 10000;
  double alpha = 0.10;
  std::uint64_t seed = 1;
  double laplace_a = 1.0;
  std::string format = "human";
  std::string config;
  std::string preset;
  std::string out;
  unsigned workers = 1;
};

// Writes to --out when given, otherwise to stdout.
template <class Writer>
void emit(const std::string& path, Writer&& write) {
  if (path.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ParseError("cannot write '" + path + "'");
  write(file);
}

int run_test(const Options& o) {
  const auto sample = cli::load_dataset(o.data);
  const auto ids = parse_statistic_list(o.tests, o.laplace_a);
  const auto format = cli::parse_format(o.format);
  const auto report = cli::run_test(sample, ids, o.reps, o.alpha, o.seed, o.workers);
  emit(o.out, [&](std::ostream& out) { cli::write_report(out, report, format); });
  return 0;
}

int run_stat(const Options& o) {
  const auto sample = cli::load_dataset(o.data);
  const auto ids = parse_statistic_list(o.tests, o.laplace_a);
  const auto format = cli::parse_format(o.format);
  const auto report = cli::run_stat(sample, ids);
  emit(o.out, [&](std::ostream& out) { cli::write_report(out, report, format); });
  return 0;
}

int run_power(const Options& o, const CLI::App& cmd) {
  if (o.config.empty() == o.preset.empty()) throw ParseError("power needs exactly one of --config or --preset");
  const auto format = cli::parse_format(o.format);
  PowerStudyConfig config;
  if (!o.config.empty()) {
    config = cli::load_config(o.config, o.laplace_a);
  } else if (auto p = cli::preset(o.preset, o.laplace_a)) {
    config = *p;
  } else {
    std::string known;
    for (auto n : cli::preset_names()) known += (known.empty() ? "" : ", ") + std::string(n);
    throw ParseError("unknown preset '" + o.preset + "' (known: " + known + ")");
  }
  // Flags given explicitly override the file.
  if (cmd.count("--reps")) config.replications = o.reps;
  if (cmd.count("--alpha")) config.alpha = o.alpha;
  if (cmd.count("--seed")) config.seed = o.seed;
  if (cmd.count("--tests")) config.statistics = parse_statistic_list(o.tests, o.laplace_a);

  const auto table = warp_speed_power(config, o.workers);
  if (!o.out.empty()) emit(o.out, [&](std::ostream& out) { table.write_csv(out); });
  cli::write_power(std::cout, table, format);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Goodness-of-fit tests for the Poisson distribution"};
  app.require_subcommand(1);
  Options o;

  auto common = [&o](CLI::App* cmd) {
    cmd->add_option("--format", o.format, "human, csv or jsonl")->capture_default_str();
    cmd->add_option("--out", o.out, "Output file (power: CSV table)");
    cmd->add_option("--laplace-a", o.laplace_a, "Laplace weight parameter a")->capture_default_str();
    cmd->add_option("--tests", o.tests, "Comma-separated statistics, or all")->capture_default_str();
  };

  auto* test = app.add_subcommand("test", "Statistics with parametric-bootstrap p-values");
  test->add_option("--data", o.data, "Count data file")->required();
  test->add_option("--reps", o.reps, "Bootstrap replications B")->capture_default_str();
  test->add_option("--alpha", o.alpha, "Level used for the decision column")->capture_default_str();
  test->add_option("--seed", o.seed, "Random seed")->capture_default_str();
  test->add_option("--workers", o.workers, "Worker threads, 0 = all cores")->capture_default_str();
  common(test);

  auto* stat = app.add_subcommand("stat", "Statistic values only, at full precision");
  stat->add_option("--data", o.data, "Count data file")->required();
  common(stat);

  auto* power = app.add_subcommand("power", "Warp-speed Monte Carlo power study");
  power->add_option("--config", o.config, "Study config file");
  power->add_option("--preset", o.preset, "paper-n30, paper-n50, paper-n100 or desk");
  power->add_option("--reps", o.reps, "Override Monte Carlo replications M");
  power->add_option("--alpha", o.alpha, "Override nominal level (default 0.05)");
  power->add_option("--seed", o.seed, "Override random seed");
  power->add_option("--workers", o.workers, "Worker threads, 0 = all cores")->capture_default_str();
  common(power);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*test) return run_test(o);
    if (*stat) return run_stat(o);
    return run_power(o, *power);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
