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

#include "wpgof/empirical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "wpgof/distributions.hpp"
#include "wpgof/error.hpp"

namespace wpgof {

CountSample::CountSample(std::vector<std::int64_t> observations)
    : observations_(std::move(observations)) {
  if (observations_.empty()) throw DomainError("a count sample needs at least one observation");
  for (const auto x : observations_) {
    if (x < 0) throw DomainError("count observations must be non-negative");
    max_ = std::max(max_, x);
    sum_ += x;
  }
  counts_ = Eigen::ArrayXd::Zero(max_ + 1);
  for (const auto x : observations_) counts_[x] += 1.0;
}

CountSample CountSample::from_frequencies(
    std::span<const std::pair<std::int64_t, std::int64_t>> table) {
  std::set<std::int64_t> seen;
  std::vector<std::int64_t> obs;
  for (const auto& [value, count] : table) {
    if (value < 0 || count < 0) throw DomainError("frequency table entries must be non-negative");
    if (!seen.insert(value).second)
      throw DomainError("value " + std::to_string(value) + " appears twice in frequency table");
    obs.insert(obs.end(), static_cast<std::size_t>(count), value);
  }
  return CountSample(std::move(obs));
}

std::int64_t CountSample::count(std::int64_t x) const noexcept {
  if (x < 0 || x > max_) return 0;
  return static_cast<std::int64_t>(counts_[x]);
}

FittedNull mle_lambda(const CountSample& sample) {
  return {static_cast<double>(sample.sum()) / static_cast<double>(sample.size())};
}

double empirical_pmf(const CountSample& sample, std::int64_t x) {
  return static_cast<double>(sample.count(x)) / static_cast<double>(sample.size());
}

double empirical_cdf(const CountSample& sample, std::int64_t x) {
  if (x < 0) return 0.0;
  if (x >= sample.max()) return 1.0;
  return sample.counts().head(x + 1).sum() / static_cast<double>(sample.size());
}

double empirical_idf(const CountSample& sample, double t) {
  if (!(t >= 0.0)) throw DomainError("empirical_idf requires t >= 0");
  double total = 0.0;
  for (std::int64_t x = 0; x <= sample.max(); ++x) {
    const auto xd = static_cast<double>(x);
    if (xd > t) total += (xd - t) * sample.counts()[x];
  }
  return total / static_cast<double>(sample.size());
}

double empirical_weight(const CountSample& sample, const FittedNull& fit, std::int64_t x) {
  if (fit.degenerate())
    throw DegenerateFitError("empirical weight is undefined when lambda_hat = 0");
  const double fn = empirical_pmf(sample, x);
  if (fn == 0.0) return 0.0;
  const double w = std::exp(std::log(fn) - poisson_log_pmf(fit.lambda_hat, x));
  return std::min(w, std::numeric_limits<double>::max());
}

Eigen::ArrayXd empirical_pmf_table(const CountSample& sample) {
  return sample.counts() / static_cast<double>(sample.size());
}

double sample_fisher_index(const CountSample& sample) {
  const double n = static_cast<double>(sample.size());
  const double mu = static_cast<double>(sample.sum()) / n;
  if (mu == 0.0) return std::numeric_limits<double>::quiet_NaN();
  if (sample.size() == 1) return 0.0;
  const Eigen::ArrayXd x = Eigen::ArrayXd::LinSpaced(sample.max() + 1, 0.0,
                                                     static_cast<double>(sample.max()));
  const double ss = (sample.counts() * (x - mu).square()).sum();
  return ss / (n - 1.0) / mu;
}

}  // namespace wpgof
