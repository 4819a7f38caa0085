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
#include <numeric>
#include <random>
#include <sstream>
#include <vector>

#include "wpgof/bootstrap.hpp"

using namespace wpgof;
using doctest::Approx;

namespace {

CountSample sparrow() {
  const std::vector<std::pair<std::int64_t, std::int64_t>> table{{0, 9}, {1, 22}, {2, 6}, {3, 2}, {4, 1}};
  return CountSample::from_frequencies(table);
}

// T2 and its square root: a strictly monotone pair.
Eigen::ArrayXd t2_and_root(const CountSample& x, const FittedNull& fit) {
  const StatisticId id{Statistic::t2_fit};
  const double v = compute(id, x, fit).value;
  Eigen::ArrayXd out(2);
  out << v, std::sqrt(v);
  return out;
}

PowerStudyConfig small_study() {
  PowerStudyConfig c;
  c.alternatives = {parse_alternative("poisson(5)"), parse_alternative("zip(0.8,3)")};
  c.sample_sizes = {20, 40};
  c.statistics = parse_statistic_list("t1-fit,ks,id");
  c.replications = 600;
  c.seed = 17;
  return c;
}

}  // namespace

TEST_SUITE("critical values") {
  TEST_CASE("rank of the order statistic") {
    CHECK(critical_rank(100, 0.05) == 95);
    CHECK(critical_rank(10, 0.05) == 9);
    CHECK(critical_rank(50000, 0.05) == 47500);
    CHECK(critical_rank(2000, 0.05) == 1900);
    CHECK(critical_rank(1, 0.05) == 1);
    CHECK(critical_rank(20, 0.999) == 1);
  }

  TEST_CASE("value of the order statistic") {
    std::vector<double> v(100);
    std::iota(v.begin(), v.end(), 1.0);
    std::shuffle(v.begin(), v.end(), std::mt19937_64(1));
    CHECK(critical_value(v, 0.05) == 95.0);
    std::vector<double> w(10);
    std::iota(w.begin(), w.end(), 1.0);
    CHECK(critical_value(w, 0.05) == 9.0);
    CHECK_THROWS_AS(critical_value(std::vector<double>{}, 0.05), DomainError);
  }
}

TEST_SUITE("parametric bootstrap") {
  TEST_CASE("p-values lie in [1/(B+1), 1]") {
    const auto out = bootstrap_pvalues(sparrow(), all_statistics(), 999, RngHandle{4, 0});
    REQUIRE(out.size() == kStatisticCount);
    for (const auto& o : out) {
      CHECK(o.p_value >= 1.0 / 1000.0);
      CHECK(o.p_value <= 1.0);
      CHECK(o.replicates.size() == 999);
      CHECK_FALSE(o.degenerate);
    }
  }

  TEST_CASE("degenerate fit gives p = 1") {
    const auto out = bootstrap_pvalues(CountSample({0, 0, 0, 0}), all_statistics(), 500, RngHandle{1, 0});
    for (const auto& o : out) {
      CHECK(o.degenerate);
      CHECK(o.p_value == 1.0);
      CHECK_FALSE(o.rejects(0.10));
    }
  }

  TEST_CASE("too few replications") {
    CHECK_THROWS_AS(bootstrap_pvalue(sparrow(), {Statistic::ks}, 99, RngHandle{}), DomainError);
  }

  TEST_CASE("identical results for any number of workers") {
    const auto ids = all_statistics();
    const auto one = bootstrap_pvalues(sparrow(), ids, 1500, RngHandle{99, 0}, 1);
    for (unsigned workers : {2u, 4u, 7u}) {
      const auto many = bootstrap_pvalues(sparrow(), ids, 1500, RngHandle{99, 0}, workers);
      for (std::size_t k = 0; k < ids.size(); ++k) {
        CHECK(one[k].p_value == many[k].p_value);
        CHECK(one[k].replicates == many[k].replicates);
      }
    }
  }

  TEST_CASE("a monotone transform leaves p-values unchanged") {
    const auto run = parametric_bootstrap(sparrow(), t2_and_root, 2000, RngHandle{5, 0});
    CHECK(run.p_values[0] == run.p_values[1]);
  }

  TEST_CASE("p-values are uniform under the null") {
    const auto ids = parse_statistic_list("t1-fit,ks");
    std::vector<std::vector<double>> p(ids.size());
    for (std::uint64_t r = 0; r < 400; ++r) {
      const auto x = sample(alt::Poisson{3.0}, 30, RngHandle{2024, r});
      const auto out = bootstrap_pvalues(x, ids, 199, RngHandle{2025, r});
      for (std::size_t k = 0; k < ids.size(); ++k) p[k].push_back(out[k].p_value);
    }
    for (auto& ps : p) {
      std::sort(ps.begin(), ps.end());
      double sup = 0.0;
      for (std::size_t i = 0; i < ps.size(); ++i) {
        const double u = ps[i];
        sup = std::max({sup, std::fabs((i + 1) / 400.0 - u), std::fabs(i / 400.0 - u)});
      }
      // 1% Kolmogorov bound plus the p-value grid spacing.
      CHECK(sup <= 1.63 / std::sqrt(400.0) + 1.0 / 200.0);
    }
  }
}

TEST_SUITE("warp-speed power") {
  TEST_CASE("level under the null") {
    PowerStudyConfig c;
    c.alternatives = {parse_alternative("poisson(5)")};
    c.sample_sizes = {30};
    c.statistics = all_statistics();
    c.replications = 2000;
    c.seed = 8;
    const auto table = warp_speed_power(c);
    CHECK(table.power_pct.rows() == 1);
    CHECK(table.power_pct.cols() == 14);
    CHECK((table.power_pct.array() >= 2.5).all());
    CHECK((table.power_pct.array() <= 7.5).all());
  }

  TEST_CASE("monotone transform gives identical rejection rates") {
    const Sampler sampler(parse_alternative("nb(3,0.75)"));
    const auto pct = warp_speed_rejections(sampler, 40, 1000, 0.05, RngHandle{3, 0}, t2_and_root);
    CHECK(pct[0] == pct[1]);
  }

  TEST_CASE("deterministic across workers and repeat runs") {
    const auto c = small_study();
    const auto base = warp_speed_power(c, 1);
    CHECK(base == warp_speed_power(c, 1));
    CHECK(base == warp_speed_power(c, 3));
    CHECK(base == warp_speed_power(c, 8));
    auto other = c;
    other.seed = 18;
    CHECK_FALSE(base == warp_speed_power(other, 1));
  }

  TEST_CASE("config validation") {
    auto c = small_study();
    c.alternatives.clear();
    c.alpha = 1.5;
    c.replications = 10;
    try {
      c.validate();
      FAIL("expected a domain error");
    } catch (const DomainError& e) {
      const std::string what = e.what();
      CHECK(what.find("alternatives") != std::string::npos);
      CHECK(what.find("alpha") != std::string::npos);
      CHECK(what.find("replications") != std::string::npos);
    }
  }
}

TEST_SUITE("power table csv") {
  TEST_CASE("round trip is exact") {
    std::mt19937_64 gen(12);
    std::uniform_real_distribution<double> pct(0.0, 100.0);
    for (int trial = 0; trial < 50; ++trial) {
      PowerTable t;
      t.alternatives = {"poisson(0.5)", "nb(2,0.6666666666666666)", "pm(0.2,1,5)"};
      t.fisher_index = {1.0, 1.5, 1.6099999999999999};
      t.sample_sizes = {30, 100};
      t.statistics = {"ks", "t1-lap", "tinf-fit"};
      t.replications = 50000;
      t.alpha = 0.05;
      t.seed = gen();
      t.power_pct.resize(6, 3);
      for (Eigen::Index i = 0; i < t.power_pct.size(); ++i) t.power_pct.data()[i] = pct(gen);
      std::stringstream first;
      t.write_csv(first);
      const auto back = PowerTable::read_csv(first);
      CHECK(back == t);
      std::stringstream second;
      back.write_csv(second);
      CHECK(second.str() == first.str());
    }
  }

  TEST_CASE("malformed input") {
    std::istringstream empty("");
    CHECK_THROWS_AS(PowerTable::read_csv(empty), ParseError);
    std::istringstream header("alternative,n\n");
    CHECK_THROWS_AS(PowerTable::read_csv(header), ParseError);
    std::istringstream fields(
        "alternative,fisher_index,n,statistic,power_pct,M,alpha,seed\npoisson(1),1,30,ks\n");
    CHECK_THROWS_AS(PowerTable::read_csv(fields), ParseError);
    std::istringstream missing(
        "alternative,fisher_index,n,statistic,power_pct,M,alpha,seed\n"
        "poisson(1),1,30,ks,5,100,0.05,1\n"
        "poisson(1),1,30,cv,5,100,0.05,1\n"
        "poisson(1),1,50,ks,5,100,0.05,1\n");
    CHECK_THROWS_AS(PowerTable::read_csv(missing), ParseError);
  }
}
