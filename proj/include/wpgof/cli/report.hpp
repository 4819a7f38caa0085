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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wpgof/bootstrap.hpp"

namespace wpgof::cli {

enum class Format { human, csv, jsonl };

Format parse_format(std::string_view text);

struct DatasetSummary {
  std::size_t n = 0;
  std::int64_t m = 0;
  double lambda_hat = 0.0;
  double fisher_index = 0.0;  // NaN when the sample mean is zero
};

DatasetSummary summarize(const CountSample& sample);

struct ReportRow {
  std::string statistic;
  double value = 0.0;
  std::optional<double> p_value;  // absent for statistic-only runs
};

struct RunReport {
  DatasetSummary dataset;
  std::vector<ReportRow> rows;
  bool degenerate = false;
  bool bootstrapped = false;
  std::size_t replications = 0;
  double alpha = 0.10;
  std::uint64_t seed = 0;

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

RunReport run_test(const CountSample& sample, std::span<const StatisticId> ids,
                   std::size_t replications, double alpha, std::uint64_t seed,
                   unsigned workers = 1);

RunReport run_stat(const CountSample& sample, std::span<const StatisticId> ids);

void write_report(std::ostream& out, const RunReport& report, Format format);

// Human form: one block per sample size, rounded percentages, FI column,
// `*` on every row maximum.
void write_power(std::ostream& out, const PowerTable& table, Format format);

// Shortest decimal text that reads back to the same double.
std::string exact(double v);

}  // namespace wpgof::cli
