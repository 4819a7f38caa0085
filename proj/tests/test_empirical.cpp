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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <utility>
#include <vector>

#include "wpgof/distributions.hpp"
#include "wpgof/empirical.hpp"
#include "wpgof/error.hpp"

using namespace wpgof;
using doctest::Approx;

namespace {

CountSample sparrow() {
  const std::vector<std::pair<std::int64_t, std::int64_t>> table{{0, 9}, {1, 22}, {2, 6}, {3, 2}, {4, 1}};
  return CountSample::from_frequencies(table);
}

CountSample random_sample(std::mt19937_64& gen, int max_n, int max_value) {
  const int n = std::uniform_int_distribution<int>(1, max_n)(gen);
  std::vector<std::int64_t> xs(n);
  for (auto& x : xs) x = std::uniform_int_distribution<int>(0, max_value)(gen);
  return CountSample(xs);
}

}  // namespace

TEST_CASE("count sample bookkeeping") {
  const auto s = sparrow();
  CHECK(s.size() == 40);
  CHECK(s.max() == 4);
  CHECK(s.sum() == 44);
  CHECK(s.count(1) == 22);
  CHECK(s.count(7) == 0);
  CHECK(s.counts().size() == 5);
  CHECK_THROWS_AS(CountSample(std::vector<std::int64_t>{}), DomainError);
  CHECK_THROWS_AS(CountSample(std::vector<std::int64_t>{1, -2}), DomainError);
  const std::vector<std::pair<std::int64_t, std::int64_t>> dup{{1, 2}, {1, 3}};
  CHECK_THROWS_AS(CountSample::from_frequencies(dup), DomainError);
}

TEST_CASE("maximum likelihood fit") {
  CHECK(mle_lambda(sparrow()).lambda_hat == Approx(1.1));
  CHECK(mle_lambda(CountSample({0, 1})).lambda_hat == 0.5);
  CHECK(mle_lambda(CountSample({0, 0, 0})).degenerate());
}

TEST_CASE("empirical pmf, cdf and idf") {
  const CountSample s({0, 1});
  CHECK(empirical_pmf(s, 0) == 0.5);
  CHECK(empirical_pmf(s, 2) == 0.0);
  CHECK(empirical_cdf(s, 0) == 0.5);
  CHECK(empirical_cdf(s, 1) == 1.0);
  CHECK(empirical_cdf(s, -1) == 0.0);
  CHECK(empirical_idf(s, 0.0) == 0.5);
  CHECK(empirical_idf(s, 0.5) == 0.25);
  CHECK(empirical_idf(s, 1.0) == 0.0);
  CHECK_THROWS_AS(empirical_idf(s, -0.1), DomainError);
  CHECK(empirical_idf(sparrow(), 0.0) == Approx(1.1));
}

TEST_CASE("empirical weight") {
  const CountSample s({0, 1});
  const auto fit = mle_lambda(s);
  CHECK(empirical_weight(s, fit, 0) == Approx(0.82436063535006407).epsilon(1e-14));
  CHECK(empirical_weight(s, fit, 1) == Approx(1.6487212707001281).epsilon(1e-14));
  CHECK(empirical_weight(s, fit, 2) == 0.0);

  const auto sp = sparrow();
  CHECK(empirical_weight(sp, mle_lambda(sp), 0) == Approx(0.67593735538794745).epsilon(1e-14));
  CHECK(empirical_weight(sp, mle_lambda(sp), 1) == Approx(1.5020830119732166).epsilon(1e-14));

  const CountSample zeros({0, 0});
  CHECK_THROWS_AS(empirical_weight(zeros, mle_lambda(zeros), 0), DegenerateFitError);

  // f_lambda_hat(x) underflows: the weight saturates rather than overflowing.
  std::vector<std::int64_t> xs(10000, 0);
  xs.push_back(500);
  const CountSample extreme(xs);
  const double w = empirical_weight(extreme, mle_lambda(extreme), 500);
  CHECK(std::isfinite(w));
  CHECK(w == std::numeric_limits<double>::max());
}

TEST_CASE("weights re-normalise the fitted pmf") {
  std::mt19937_64 gen(2);
  for (int trial = 0; trial < 500; ++trial) {
    const auto s = random_sample(gen, 60, 25);
    const auto fit = mle_lambda(s);
    if (fit.degenerate()) continue;
    double total = 0.0;
    for (std::int64_t x = 0; x <= s.max(); ++x)
      total += empirical_weight(s, fit, x) * poisson_pmf(fit.lambda_hat, x);
    CHECK(total == Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("cdf differences recover the pmf; permutation invariance") {
  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 200; ++trial) {
    auto s = random_sample(gen, 30, 12);
    auto shuffled = s.observations();
    std::shuffle(shuffled.begin(), shuffled.end(), gen);
    const CountSample t(shuffled);
    for (std::int64_t x = 0; x <= s.max() + 1; ++x) {
      CHECK(empirical_cdf(s, x) - empirical_cdf(s, x - 1) == Approx(empirical_pmf(s, x)).epsilon(1e-15));
      CHECK(empirical_pmf(s, x) == empirical_pmf(t, x));
    }
    CHECK((s.counts() == t.counts()).all());
  }
}

TEST_CASE("weight is close to one for large poisson samples") {
  const auto s = sample(alt::Poisson{3.0}, 200000, RngHandle{8, 0});
  const auto fit = mle_lambda(s);
  for (std::int64_t x = 0; x <= 6; ++x) CHECK(std::fabs(empirical_weight(s, fit, x) - 1.0) <= 0.1);
}

TEST_CASE("sample fisher index") {
  CHECK(sample_fisher_index(sparrow()) == Approx(0.7366).epsilon(1e-4));
  CHECK(sample_fisher_index(CountSample({0, 1})) == Approx(1.0));
  CHECK(std::isnan(sample_fisher_index(CountSample({0, 0}))));
}
