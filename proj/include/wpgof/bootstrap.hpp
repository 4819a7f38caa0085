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
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "wpgof/distributions.hpp"
#include "wpgof/empirical.hpp"
#include "wpgof/error.hpp"
#include "wpgof/parallel.hpp"
#include "wpgof/rng.hpp"
#include "wpgof/statistics.hpp"

namespace wpgof {

// ---------------------------------------------------------------------------
// Parametric bootstrap for one dataset
// ---------------------------------------------------------------------------

/// Bootstrap p-value for a single statistic.
///
/// p = (1 + #{S*_b > S}) / (B + 1), so p lies in (0, 1], and a test rejects
/// at level alpha iff p <= alpha. A sample with lambda_hat = 0 is
/// `degenerate`: p = 1 and no replicates are drawn.
struct BootstrapOutcome {
  StatisticId id;
  double statistic = 0.0;
  std::vector<double> replicates;
  double p_value = 1.0;
  bool degenerate = false;

  bool rejects(double alpha) const noexcept { return p_value <= alpha; }
};

/// Result of bootstrapping K statistics over the same B resamples.
struct BootstrapRun {
  Eigen::ArrayXd statistics;   // K observed values
  Eigen::MatrixXd replicates;  // K x B, column b from resample b
  Eigen::ArrayXd p_values;     // K
  bool degenerate = false;
};

/// Resample b draws n values from P(lambda_hat) on stream rng.derive(b),
/// refits lambda_hat* and evaluates `evaluator(resample, refit)`, which must
/// return the same number of statistics as it does for `sample`. Results do
/// not depend on `workers`.
template <class Evaluator>
BootstrapRun parametric_bootstrap(const CountSample& sample, Evaluator&& evaluator,
                                  std::size_t replications, const RngHandle& rng,
                                  unsigned workers = 1);

std::vector<BootstrapOutcome> bootstrap_pvalues(const CountSample& sample,
                                                std::span<const StatisticId> ids,
                                                std::size_t replications, const RngHandle& rng,
                                                unsigned workers = 1);

BootstrapOutcome bootstrap_pvalue(const CountSample& sample, const StatisticId& id,
                                  std::size_t replications, const RngHandle& rng,
                                  unsigned workers = 1);

// ---------------------------------------------------------------------------
// Warp-speed power study
// ---------------------------------------------------------------------------

/// 1-based rank floor(M (1 - alpha)) of the bootstrap order statistic used as
/// critical value, clamped to [1, M].
std::size_t critical_rank(std::size_t replications, double alpha);

/// The critical_rank-th smallest value of `replicates`. Throws DomainError on
/// an empty list.
double critical_value(std::span<const double> replicates, double alpha);

struct PowerStudyConfig {
  std::vector<AlternativeSpec> alternatives;
  std::vector<std::size_t> sample_sizes;
  std::vector<StatisticId> statistics;
  std::size_t replications = 50000;
  double alpha = 0.05;
  std::uint64_t seed = 1;

  /// Throws DomainError listing what is wrong.
  void validate() const;
};

/// Rejection percentages indexed by (alternative, sample size, statistic).
struct PowerTable {
  std::vector<std::string> alternatives;  // canonical text
  std::vector<double> fisher_index;       // one per alternative
  std::vector<std::size_t> sample_sizes;
  std::vector<std::string> statistics;
  /// Row a * sample_sizes.size() + j holds alternative a at sample size j.
  Eigen::MatrixXd power_pct;
  std::size_t replications = 0;
  double alpha = 0.05;
  std::uint64_t seed = 0;

  Eigen::Index row(std::size_t alternative, std::size_t size_index) const {
    return static_cast<Eigen::Index>(alternative * sample_sizes.size() + size_index);
  }
  double at(std::size_t alternative, std::size_t size_index, std::size_t statistic) const {
    return power_pct(row(alternative, size_index), static_cast<Eigen::Index>(statistic));
  }

  /// Long format, one line per cell:
  /// alternative,fisher_index,n,statistic,power_pct,M,alpha,seed
  /// Reals use shortest round-trip notation, so read_csv restores the table
  /// bit for bit.
  void write_csv(std::ostream& out) const;
  static PowerTable read_csv(std::istream& in);

  friend bool operator==(const PowerTable&, const PowerTable&);
};

/// Runs the warp-speed bootstrap for every (alternative, n) cell: M samples
/// from the alternative, each paired with ONE resample from P(lambda_hat)
/// (lambda refitted on the resample). Every requested statistic is evaluated
/// on both; a sample is rejected when S_m > S*_(floor(M(1 - alpha))).
/// Bit-identical for a given config whatever `workers` is.
PowerTable warp_speed_power(const PowerStudyConfig& config, unsigned workers = 1);

/// Rejection percentage per statistic for one cell. `evaluator` maps
/// (sample, fit) to an array of statistics.
template <class Evaluator>
Eigen::ArrayXd warp_speed_rejections(const Sampler& sampler, std::size_t n,
                                     std::size_t replications, double alpha,
                                     const RngHandle& rng, Evaluator&& evaluator,
                                     unsigned workers = 1);

// ---------------------------------------------------------------------------
// Template definitions

namespace detail {

inline CountSample poisson_resample(double lambda, std::size_t n, Engine& engine) {
  std::vector<std::int64_t> draws(n);
  for (auto& x : draws) x = sample_poisson(lambda, engine);
  return CountSample(std::move(draws));
}

inline double rejection_pct(const Eigen::Ref<const Eigen::ArrayXd>& observed, double critical) {
  return 100.0 * static_cast<double>((observed > critical).count()) /
         static_cast<double>(observed.size());
}

}  // namespace detail

template <class Evaluator>
BootstrapRun parametric_bootstrap(const CountSample& sample, Evaluator&& evaluator,
                                  std::size_t replications, const RngHandle& rng,
                                  unsigned workers) {
  const FittedNull fit = mle_lambda(sample);
  BootstrapRun run;
  run.statistics = evaluator(sample, fit);
  const Eigen::Index stats = run.statistics.size();
  run.p_values = Eigen::ArrayXd::Ones(stats);
  if (fit.degenerate()) {
    run.degenerate = true;
    return run;
  }

  run.replicates.resize(stats, static_cast<Eigen::Index>(replications));
  parallel_for(replications, workers, [&](std::size_t b) {
    Engine engine = rng.derive(b).engine();
    const CountSample resample = detail::poisson_resample(fit.lambda_hat, sample.size(), engine);
    run.replicates.col(static_cast<Eigen::Index>(b)) = evaluator(resample, mle_lambda(resample));
  });

  for (Eigen::Index k = 0; k < stats; ++k) {
    const auto exceed = (run.replicates.row(k).array() > run.statistics[k]).count();
    run.p_values[k] =
        (1.0 + static_cast<double>(exceed)) / (static_cast<double>(replications) + 1.0);
  }
  return run;
}

template <class Evaluator>
Eigen::ArrayXd warp_speed_rejections(const Sampler& sampler, std::size_t n,
                                     std::size_t replications, double alpha,
                                     const RngHandle& rng, Evaluator&& evaluator,
                                     unsigned workers) {
  if (replications == 0) throw DomainError("warp-speed study needs at least one replication");
  // Column r of each matrix holds replication r; the width is fixed on first
  // use because the evaluator decides how many statistics there are.
  Eigen::MatrixXd observed;
  Eigen::MatrixXd resampled;
  const auto replicate = [&](std::size_t r) {
    const RngHandle stream = rng.derive(r);
    Engine draw = stream.derive(0).engine();
    std::vector<std::int64_t> values(n);
    sampler.fill(draw, values);
    const CountSample x(std::move(values));
    const FittedNull fit = mle_lambda(x);

    Engine boot = stream.derive(1).engine();
    const CountSample xs = detail::poisson_resample(fit.lambda_hat, n, boot);
    return std::pair{evaluator(x, fit), evaluator(xs, mle_lambda(xs))};
  };

  auto [s0, b0] = replicate(0);
  observed.resize(s0.size(), static_cast<Eigen::Index>(replications));
  resampled.resize(s0.size(), static_cast<Eigen::Index>(replications));
  observed.col(0) = s0.matrix();
  resampled.col(0) = b0.matrix();

  parallel_for(replications - 1, workers, [&](std::size_t i) {
    const auto r = static_cast<Eigen::Index>(i + 1);
    auto [s, b] = replicate(i + 1);
    observed.col(r) = s.matrix();
    resampled.col(r) = b.matrix();
  });

  Eigen::ArrayXd pct(observed.rows());
  std::vector<double> row(replications);
  for (Eigen::Index k = 0; k < observed.rows(); ++k) {
    Eigen::Map<Eigen::RowVectorXd>(row.data(), observed.cols()) = resampled.row(k);
    pct[k] = detail::rejection_pct(observed.row(k).transpose().array(), critical_value(row, alpha));
  }
  return pct;
}

}  // namespace wpgof
