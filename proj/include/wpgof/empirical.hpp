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
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace wpgof {

/// A multiset of non-negative integer counts.
///
/// Holds the raw observations together with the frequency table over
/// {0, ..., m}, m being the sample maximum. Immutable after construction.
class CountSample {
 public:
  /// Throws DomainError when `observations` is empty or holds a negative value.
  explicit CountSample(std::vector<std::int64_t> observations);

  /// Builds a sample from (value, count) pairs. Values must be distinct and
  /// non-negative, counts non-negative, and the total positive.
  static CountSample from_frequencies(std::span<const std::pair<std::int64_t, std::int64_t>> table);

  std::size_t size() const noexcept { return observations_.size(); }
  std::int64_t max() const noexcept { return max_; }
  std::int64_t sum() const noexcept { return sum_; }
  const std::vector<std::int64_t>& observations() const noexcept { return observations_; }

  /// Counts indexed by value, length m + 1.
  const Eigen::ArrayXd& counts() const noexcept { return counts_; }
  std::int64_t count(std::int64_t x) const noexcept;

 private:
  std::vector<std::int64_t> observations_;
  Eigen::ArrayXd counts_;
  std::int64_t max_ = 0;
  std::int64_t sum_ = 0;
};

/// The Poisson MLE for a sample, i.e. its arithmetic mean.
struct FittedNull {
  double lambda_hat = 0.0;

  bool degenerate() const noexcept { return lambda_hat == 0.0; }
};

FittedNull mle_lambda(const CountSample& sample);

/// f_n(x) = #{X_j = x} / n. Zero outside {0, ..., m}.
double empirical_pmf(const CountSample& sample, std::int64_t x);

/// F_n(x) = #{X_j <= x} / n.
double empirical_cdf(const CountSample& sample, std::int64_t x);

/// Empirical integrated distribution function
/// Psi_n(t) = (1/n) sum_j (X_j - t) I(X_j > t), for real t >= 0.
double empirical_idf(const CountSample& sample, double t);

/// Empirical weight function w*(x) = f_n(x) / f_lambda_hat(x).
///
/// Evaluated in log space. Exactly zero wherever f_n(x) = 0 and saturates at
/// the largest finite double instead of overflowing. Throws
/// DegenerateFitError when lambda_hat = 0.
double empirical_weight(const CountSample& sample, const FittedNull& fit, std::int64_t x);

/// Empirical pmf over {0, ..., m}.
Eigen::ArrayXd empirical_pmf_table(const CountSample& sample);

/// Sample variance (n - 1 denominator) over the mean. NaN when the mean is 0.
double sample_fisher_index(const CountSample& sample);

}  // namespace wpgof
