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

#include "wpgof/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wpgof/error.hpp"

namespace wpgof {

std::vector<BootstrapOutcome> bootstrap_pvalues(const CountSample& sample,
                                                std::span<const StatisticId> ids,
                                                std::size_t replications, const RngHandle& rng,
                                                unsigned workers) {
  if (replications < 100) throw DomainError("bootstrap needs at least 100 replications");
  const auto run = parametric_bootstrap(
      sample, [ids](const CountSample& x, const FittedNull& fit) { return evaluate(ids, x, fit); },
      replications, rng, workers);

  std::vector<BootstrapOutcome> out;
  out.reserve(ids.size());
  for (std::size_t k = 0; k < ids.size(); ++k) {
    const auto row = static_cast<Eigen::Index>(k);
    BootstrapOutcome outcome;
    outcome.id = ids[k];
    outcome.statistic = run.statistics[row];
    outcome.p_value = run.p_values[row];
    outcome.degenerate = run.degenerate;
    if (!run.degenerate) {
      outcome.replicates.resize(replications);
      Eigen::Map<Eigen::RowVectorXd>(outcome.replicates.data(), run.replicates.cols()) =
          run.replicates.row(row);
    }
    out.push_back(std::move(outcome));
  }
  return out;
}

BootstrapOutcome bootstrap_pvalue(const CountSample& sample, const StatisticId& id,
                                  std::size_t replications, const RngHandle& rng,
                                  unsigned workers) {
  return std::move(bootstrap_pvalues(sample, std::span(&id, 1), replications, rng, workers).front());
}

std::size_t critical_rank(std::size_t replications, double alpha) {
  // The small offset keeps exact products such as 50000 * 0.95 from rounding
  // down to the rank below.
  const double rank = std::floor(static_cast<double>(replications) * (1.0 - alpha) + 1e-9);
  return std::clamp<std::size_t>(static_cast<std::size_t>(std::max(rank, 1.0)), 1, replications);
}

double critical_value(std::span<const double> replicates, double alpha) {
  if (replicates.empty()) throw DomainError("critical value of an empty replicate list");
  std::vector<double> sorted(replicates.begin(), replicates.end());
  const auto nth = sorted.begin() + static_cast<std::ptrdiff_t>(critical_rank(sorted.size(), alpha) - 1);
  std::nth_element(sorted.begin(), nth, sorted.end());
  return *nth;
}

void PowerStudyConfig::validate() const {
  std::ostringstream problems;
  if (alternatives.empty()) problems << "alternatives: empty; ";
  for (const auto& spec : alternatives) {
    try {
      fisher_index(spec);
    } catch (const DomainError& e) {
      problems << "alternatives: " << e.what() << "; ";
    }
  }
  if (sample_sizes.empty()) problems << "sample_sizes: empty; ";
  if (std::any_of(sample_sizes.begin(), sample_sizes.end(), [](auto n) { return n == 0; }))
    problems << "sample_sizes: must be positive; ";
  if (statistics.empty()) problems << "statistics: empty; ";
  for (const auto& id : statistics)
    if (!(id.laplace_a > 0.0 && std::isfinite(id.laplace_a)))
      problems << "statistics: laplace parameter must be positive; ";
  if (replications < 100) problems << "replications: must be at least 100; ";
  if (!(alpha > 0.0 && alpha < 1.0)) problems << "alpha: must lie in (0, 1); ";

  const std::string text = problems.str();
  if (!text.empty()) throw DomainError("invalid power study config: " + text.substr(0, text.size() - 2));
}

PowerTable warp_speed_power(const PowerStudyConfig& config, unsigned workers) {
  config.validate();

  PowerTable table;
  table.sample_sizes = config.sample_sizes;
  table.replications = config.replications;
  table.alpha = config.alpha;
  table.seed = config.seed;
  for (const auto& id : config.statistics) table.statistics.push_back(name(id));
  for (const auto& spec : config.alternatives) {
    table.alternatives.push_back(to_string(spec));
    table.fisher_index.push_back(fisher_index(spec));
  }
  table.power_pct.resize(
      static_cast<Eigen::Index>(config.alternatives.size() * config.sample_sizes.size()),
      static_cast<Eigen::Index>(config.statistics.size()));

  const std::span<const StatisticId> ids(config.statistics);
  const auto evaluator = [ids](const CountSample& x, const FittedNull& fit) {
    return evaluate(ids, x, fit);
  };
  const RngHandle root{config.seed, 0};

  for (std::size_t a = 0; a < config.alternatives.size(); ++a) {
    const Sampler sampler(config.alternatives[a]);
    for (std::size_t j = 0; j < config.sample_sizes.size(); ++j) {
      const auto row = table.row(a, j);
      table.power_pct.row(row) =
          warp_speed_rejections(sampler, config.sample_sizes[j], config.replications,
                                config.alpha, root.derive(static_cast<std::uint64_t>(row)),
                                evaluator, workers)
              .matrix()
              .transpose();
    }
  }
  return table;
}

}  // namespace wpgof
