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

#include "wpgof/cli/report.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <ostream>

#include <json.hpp>

#include "wpgof/error.hpp"

namespace wpgof::cli {
namespace {

std::string fixed(double v, int digits) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  std::snprintf(buf.data(), buf.size(), "%.*f", digits, v);
  return buf.data();
}

std::string pad(std::string s, std::size_t width, bool left = false) {
  if (s.size() >= width) return s;
  const std::string fill(width - s.size(), ' ');
  return left ? s + fill : fill + s;
}

nlohmann::json number_or_null(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

const char* decision(const ReportRow& row, double alpha) {
  return *row.p_value <= alpha ? "reject" : "retain";
}

void human_report(std::ostream& out, const RunReport& r) {
  const auto& d = r.dataset;
  out << "n = " << d.n << ", max = " << d.m << ", lambda_hat = " << exact(d.lambda_hat)
      << ", fisher index = " << fixed(d.fisher_index, 4) << '\n';
  if (r.degenerate)
    out << "lambda_hat = 0: the fitted null is a point mass at 0; every p-value is 1\n";
  if (r.bootstrapped)
    out << "parametric bootstrap: B = " << r.replications << ", alpha = " << exact(r.alpha)
        << ", seed = " << r.seed << '\n';
  out << '\n';

  if (r.bootstrapped) {
    out << pad("statistic", 10, true) << pad("value", 14) << pad("p-value", 10) << "  decision\n";
    for (const auto& row : r.rows)
      out << pad(row.statistic, 10, true) << pad(fixed(row.value, 6), 14)
          << pad(fixed(*row.p_value, 4), 10) << "  " << decision(row, r.alpha) << '\n';
  } else {
    out << pad("statistic", 10, true) << "  value\n";
    for (const auto& row : r.rows) out << pad(row.statistic, 10, true) << "  " << exact(row.value) << '\n';
  }
}

void csv_report(std::ostream& out, const RunReport& r) {
  out << "statistic,value" << (r.bootstrapped ? ",p_value,decision,B,alpha,seed" : "")
      << ",n,max,lambda_hat\n";
  for (const auto& row : r.rows) {
    out << row.statistic << ',' << exact(row.value);
    if (r.bootstrapped)
      out << ',' << exact(*row.p_value) << ',' << decision(row, r.alpha) << ',' << r.replications
          << ',' << exact(r.alpha) << ',' << r.seed;
    out << ',' << r.dataset.n << ',' << r.dataset.m << ',' << exact(r.dataset.lambda_hat) << '\n';
  }
}

void jsonl_report(std::ostream& out, const RunReport& r) {
  const auto& d = r.dataset;
  nlohmann::ordered_json head{{"type", "dataset"},
                              {"n", d.n},
                              {"max", d.m},
                              {"lambda_hat", d.lambda_hat},
                              {"fisher_index", number_or_null(d.fisher_index)},
                              {"degenerate", r.degenerate}};
  if (r.bootstrapped) {
    head["B"] = r.replications;
    head["alpha"] = r.alpha;
    head["seed"] = r.seed;
  }
  out << head.dump() << '\n';
  for (const auto& row : r.rows) {
    nlohmann::ordered_json line{{"type", "statistic"},
                                {"statistic", row.statistic},
                                {"value", number_or_null(row.value)}};
    if (row.p_value) {
      line["p_value"] = *row.p_value;
      line["decision"] = decision(row, r.alpha);
    }
    out << line.dump() << '\n';
  }
}

void human_power(std::ostream& out, const PowerTable& t) {
  std::size_t name_width = 11;
  for (const auto& a : t.alternatives) name_width = std::max(name_width, a.size() + 2);
  std::size_t cell = 6;
  for (const auto& s : t.statistics) cell = std::max(cell, s.size() + 2);

  out << "empirical power (%), alpha = " << exact(t.alpha) << ", M = " << t.replications
      << ", seed = " << t.seed << "; * marks the row maximum\n";
  for (std::size_t j = 0; j < t.sample_sizes.size(); ++j) {
    out << "\nn = " << t.sample_sizes[j] << '\n';
    out << pad("alternative", name_width, true) << pad("FI", 6);
    for (const auto& s : t.statistics) out << pad(s, cell);
    out << '\n';
    for (std::size_t a = 0; a < t.alternatives.size(); ++a) {
      const auto row = t.power_pct.row(t.row(a, j));
      const double best = std::round(row.maxCoeff());
      out << pad(t.alternatives[a], name_width, true) << pad(fixed(t.fisher_index[a], 2), 6);
      for (Eigen::Index k = 0; k < row.size(); ++k) {
        const double v = std::round(row[k]);
        out << pad(fixed(v, 0) + (v == best ? "*" : " "), cell);
      }
      out << '\n';
    }
  }
}

void jsonl_power(std::ostream& out, const PowerTable& t) {
  for (std::size_t a = 0; a < t.alternatives.size(); ++a)
    for (std::size_t j = 0; j < t.sample_sizes.size(); ++j)
      for (std::size_t k = 0; k < t.statistics.size(); ++k) {
        nlohmann::ordered_json line{{"alternative", t.alternatives[a]},
                                    {"fisher_index", t.fisher_index[a]},
                                    {"n", t.sample_sizes[j]},
                                    {"statistic", t.statistics[k]},
                                    {"power_pct", t.at(a, j, k)},
                                    {"M", t.replications},
                                    {"alpha", t.alpha},
                                    {"seed", t.seed}};
        out << line.dump() << '\n';
      }
}

}  // namespace

std::string exact(double v) {
  std::array<char, 64> buf{};
  const auto result = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), result.ptr);
}

Format parse_format(std::string_view text) {
  if (text == "human") return Format::human;
  if (text == "csv") return Format::csv;
  if (text == "jsonl") return Format::jsonl;
  throw ParseError("unknown format '" + std::string(text) + "' (expected human, csv or jsonl)");
}

DatasetSummary summarize(const CountSample& sample) {
  return {sample.size(), sample.max(), mle_lambda(sample).lambda_hat, sample_fisher_index(sample)};
}

RunReport run_test(const CountSample& sample, std::span<const StatisticId> ids,
                   std::size_t replications, double alpha, std::uint64_t seed, unsigned workers) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
  RunReport report;
  report.dataset = summarize(sample);
  report.bootstrapped = true;
  report.replications = replications;
  report.alpha = alpha;
  report.seed = seed;
  for (const auto& outcome : bootstrap_pvalues(sample, ids, replications, RngHandle{seed, 0}, workers)) {
    report.degenerate = outcome.degenerate;
    report.rows.push_back({name(outcome.id), outcome.statistic, outcome.p_value});
  }
  return report;
}

RunReport run_stat(const CountSample& sample, std::span<const StatisticId> ids) {
  RunReport report;
  report.dataset = summarize(sample);
  const FittedNull fit = mle_lambda(sample);
  report.degenerate = fit.degenerate();
  const Eigen::ArrayXd values = evaluate(ids, sample, fit);
  for (std::size_t k = 0; k < ids.size(); ++k)
    report.rows.push_back({name(ids[k]), values[static_cast<Eigen::Index>(k)], std::nullopt});
  return report;
}

void write_report(std::ostream& out, const RunReport& report, Format format) {
  switch (format) {
    case Format::human: return human_report(out, report);
    case Format::csv: return csv_report(out, report);
    case Format::jsonl: return jsonl_report(out, report);
  }
}

void write_power(std::ostream& out, const PowerTable& table, Format format) {
  switch (format) {
    case Format::human: return human_power(out, table);
    case Format::csv: return table.write_csv(out);
    case Format::jsonl: return jsonl_power(out, table);
  }
}

}  // namespace wpgof::cli
