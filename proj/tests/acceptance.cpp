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

// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails. Monte Carlo runs use all available cores.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "wpgof/bootstrap.hpp"
#include "wpgof/cli/dataset.hpp"
#include "wpgof/distributions.hpp"

using namespace wpgof;

namespace {

constexpr unsigned kAllCores = 0;

struct Published {
  double statistic;
  double p_value;
};

// Table of statistics and bootstrap p-values for the two examples.
const std::map<std::string, Published> kSparrow{
    {"ks", {0.682, 0.037}},     {"cv", {0.000, 0.027}},      {"ad", {0.001, 0.054}},
    {"kl", {1.364, 0.074}},     {"id", {0.682, 0.050}},      {"t1-fit", {0.377, 0.039}},
    {"t1-emp", {0.409, 0.092}}, {"t1-lap", {0.574, 0.033}},  {"t2-fit", {0.155, 0.205}},
    {"t2-emp", {0.179, 0.268}}, {"t2-lap", {0.223, 0.145}},  {"tinf-fit", {0.184, 0.017}},
    {"tinf-emp", {0.276, 0.064}}, {"tinf-lap", {0.324, 0.040}}};
const std::map<std::string, Published> kHorse{
    {"ks", {0.701, 0.095}},     {"cv", {0.000, 0.102}},      {"ad", {0.003, 0.017}},
    {"kl", {5.094, 0.016}},     {"id", {2.481, 0.013}},      {"t1-fit", {0.705, 0.265}},
    {"t1-emp", {1.432, 0.142}}, {"t1-lap", {1.776, 0.116}},  {"t2-fit", {1.179, 0.176}},
    {"t2-emp", {5.282, 0.182}}, {"t2-lap", {2.673, 0.119}},  {"tinf-fit", {0.075, 0.929}},
    {"tinf-emp", {0.365, 0.437}}, {"tinf-lap", {1.000, 0.055}}};

struct Result {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

CountSample dataset(const char* file) { return cli::load_dataset(std::string(WPGOF_DATA_DIR) + "/" + file); }

// 1. Statistic values of the two examples, to three decimals.
Result statistic_values() {
  std::string worst;
  int misses = 0;
  for (const auto& [file, table] : {std::pair{"sparrow.csv", &kSparrow}, std::pair{"horsekicks.csv", &kHorse}}) {
    const auto s = dataset(file);
    const auto ids = all_statistics();
    const auto v = evaluate(ids, s, mle_lambda(s));
    for (std::size_t k = 0; k < ids.size(); ++k) {
      const auto stat = name(ids[k]);
      double x = v[static_cast<Eigen::Index>(k)];
      if (stat == "ks") x *= std::sqrt(static_cast<double>(s.size()));  // published on the sqrt(n) scale
      if (std::fabs(x - table->at(stat).statistic) > 0.0005 + 1e-12) {
        ++misses;
        worst += std::string(" ") + file + ":" + stat + fmt("=%.4f", x);
      }
    }
  }
  return {misses == 0, misses == 0 ? "28/28 statistics agree to 3 decimals" : "mismatch:" + worst};
}

// 2. Bootstrap p-values, B = 100 000.
Result bootstrap_pvalues_b100k() {
  double worst_sparrow = 0, worst_horse = 0;
  std::string where;
  for (const auto& [file, table, tol] : {std::tuple{"sparrow.csv", &kSparrow, 0.01},
                                          std::tuple{"horsekicks.csv", &kHorse, 0.015}}) {
    const auto s = dataset(file);
    const auto out = bootstrap_pvalues(s, all_statistics(), 100000, RngHandle{7, 0}, kAllCores);
    for (const auto& o : out) {
      const double dev = std::fabs(o.p_value - table->at(name(o.id)).p_value);
      double& worst = table == &kSparrow ? worst_sparrow : worst_horse;
      if (dev > worst) worst = dev;
      if (dev > tol) where += std::string(" ") + file + ":" + name(o.id) + fmt("=%.4f", o.p_value);
    }
  }
  return {where.empty(),
          fmt("max |p - published|: sparrow %.4f (tol 0.01), horse kicks %.4f (tol 0.015)", worst_sparrow,
              worst_horse) +
              where};
}

PowerTable study(std::vector<const char*> alternatives, std::size_t n, std::uint64_t seed,
                 std::size_t m = 10000) {
  PowerStudyConfig c;
  for (auto a : alternatives) c.alternatives.push_back(parse_alternative(a));
  c.sample_sizes = {n};
  c.statistics = all_statistics();
  c.replications = m;
  c.alpha = 0.05;
  c.seed = seed;
  return warp_speed_power(c, kAllCores);
}

// 3. Level on Poisson data.
Result level() {
  double lo = 100, hi = 0;
  for (std::size_t n : {30, 50, 100}) {
    const auto t = study({"poisson(0.5)", "poisson(1)", "poisson(5)", "poisson(10)"}, n, 2026);
    lo = std::min(lo, t.power_pct.minCoeff());
    hi = std::max(hi, t.power_pct.maxCoeff());
  }
  return {lo >= 3.5 && hi <= 6.5, fmt("168 cells, rejection rates within [%.2f, %.2f]%%", lo, hi)};
}

std::size_t column(const PowerTable& t, const std::string& stat) {
  for (std::size_t k = 0; k < t.statistics.size(); ++k)
    if (t.statistics[k] == stat) return k;
  return 0;
}

// 4. Power spot cells.
Result spot_cells() {
  struct Cell {
    std::size_t alternative;
    const char* stat;
    double published;
  };
  std::string detail;
  bool pass = true;
  auto check = [&](const PowerTable& t, std::vector<Cell> cells) {
    for (const auto& c : cells) {
      const double got = t.at(c.alternative, 0, column(t, c.stat));
      const bool ok = std::fabs(got - c.published) <= 3.0;
      pass = pass && ok;
      detail += " " + t.alternatives[c.alternative] + "/" + c.stat + "/n" + std::to_string(t.sample_sizes[0]) +
                fmt("=%.1f(%g)", got, c.published);
    }
  };
  check(study({"zip(0.8,3)", "nb(1,0.5)", "du(6)", "bin(5,0.25)"}, 50, 11),
        {{0, "t1-lap", 95}, {1, "t1-emp", 82}, {2, "ad", 86}, {3, "id", 23}});
  check(study({"zip(0.9,3)"}, 30, 12), {{0, "tinf-lap", 48}});
  check(study({"du(4)", "pm(0.2,1,5)"}, 100, 13), {{0, "ad", 96}, {1, "t1-lap", 98}});
  return {pass, "+/-3pp:" + detail};
}

oracle::Sample to_oracle(const CountSample& s) {
  std::vector<int> v;
  for (auto x : s.observations()) v.push_back(static_cast<int>(x));
  return oracle::Sample(v);
}

CountSample small_sample(std::mt19937_64& gen) {
  std::vector<std::int64_t> xs(std::uniform_int_distribution<int>(1, 10)(gen));
  for (auto& x : xs) x = std::uniform_int_distribution<int>(0, 8)(gen);
  return CountSample(xs);
}

// 5. Closed forms against direct summation and the dense idf grid.
Result oracle_equivalence() {
  std::mt19937_64 gen(5150);
  const auto ids = all_statistics();
  double worst = 0, worst_grid = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto s = small_sample(gen);
    const auto os = to_oracle(s);
    const auto law = oracle::poisson_law(os.mean());
    const auto got = evaluate(ids, s, mle_lambda(s));
    for (std::size_t k = 0; k < ids.size(); ++k) {
      const double want = static_cast<double>(oracle::statistic(name(ids[k]), os, law));
      worst = std::max(worst, std::fabs(got[static_cast<Eigen::Index>(k)] - want) / std::max(1.0, std::fabs(want)));
    }
    if (trial % 10 == 0) {
      const double grid = static_cast<double>(oracle::id_grid(os, law, 1e-4L, os.max() + 2));
      worst_grid = std::max(worst_grid, std::fabs(got[4] - grid) / std::max(1.0, grid));
    }
  }
  return {worst <= 1e-10 && worst_grid <= 1e-10,
          fmt("1000 samples x 14 statistics, max relative deviation %.2e; idf grid check %.2e", worst,
              worst_grid)};
}

// 6. Identities.
Result identities() {
  std::mt19937_64 gen(606);
  double norm = 0, dual = 0, geo = 0, pois = 0;
  int tail_exact = 0;
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<std::int64_t> xs(std::uniform_int_distribution<int>(1, 60)(gen));
    for (auto& x : xs) x = std::uniform_int_distribution<int>(0, 25)(gen);
    const CountSample s(xs);
    const auto fit = mle_lambda(s);
    if (fit.degenerate()) continue;
    double total = 0, via_weight = poisson_sf(fit.lambda_hat, s.max());
    for (std::int64_t x = 0; x <= s.max(); ++x) {
      const double w = empirical_weight(s, fit, x), f = poisson_pmf(fit.lambda_hat, x);
      total += w * f;
      via_weight += std::fabs(w - 1.0) * f;
    }
    norm = std::max(norm, std::fabs(total - 1.0));
    const double t1 = compute({Statistic::t1_fit}, s, fit).value;
    dual = std::max(dual, std::fabs(t1 - via_weight) / t1);
  }
  for (double a : {0.2, 1.0, 2.5})
    for (std::int64_t m : {0, 4, 30}) {
      double partial = 0;
      for (std::int64_t x = 60000; x > m; --x) partial += std::exp(-a * static_cast<double>(x));
      const double closed = std::exp(-a * static_cast<double>(m + 1)) / -std::expm1(-a);
      geo = std::max(geo, std::fabs(closed - partial) / partial);
    }
  for (double lambda : {0.5, 1.1, 9.8, 40.0})
    for (std::int64_t m : {0, 3, 18, 70}) {
      double partial = 0;
      for (std::int64_t x = 3000; x > m; --x) partial += poisson_pmf(lambda, x);
      pois = std::max(pois, std::fabs(poisson_sf(lambda, m) - partial) / partial);
    }
  for (int trial = 0; trial < 100; ++trial) {
    const auto m = std::uniform_int_distribution<std::int64_t>(0, 80)(gen);
    const double lambda = std::uniform_real_distribution<double>(0.05, static_cast<double>(m + 1))(gen);
    double best = 0;
    for (std::int64_t x = m + 1; x <= m + 2000; ++x) best = std::max(best, poisson_pmf(lambda, x));
    tail_exact += poisson_tail_max(lambda, m) == best;
  }
  const bool pass = norm <= 1e-12 && dual <= 1e-12 && geo <= 1e-12 && pois <= 1e-12 && tail_exact == 100;
  return {pass, fmt("sum w*f - 1: %.1e; T1 dual path: %.1e; tails: %.1e", norm, dual, std::max(geo, pois)) +
                    " ; tail maximum exact " + std::to_string(tail_exact) + "/100"};
}

// 7. Byte-identical CSV for 1, 4 and 8 workers.
Result determinism() {
  PowerStudyConfig c;
  for (auto a : {"poisson(1)", "du(6)", "nb(1,0.5)", "zip(0.8,3)"}) c.alternatives.push_back(parse_alternative(a));
  c.sample_sizes = {30, 50};
  c.statistics = all_statistics();
  c.replications = 2000;
  c.seed = 424242;
  std::vector<std::string> csv;
  for (unsigned workers : {1u, 4u, 8u}) {
    std::ostringstream out;
    warp_speed_power(c, workers).write_csv(out);
    csv.push_back(out.str());
  }
  const bool same = csv[0] == csv[1] && csv[0] == csv[2];
  return {same, std::to_string(csv[0].size()) + "-byte CSV " + (same ? "identical" : "differs") +
                    " across 1, 4, 8 workers"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Result()>>> criteria{
      {"statistic values of the two examples", statistic_values},
      {"bootstrap p-values, B = 100000", bootstrap_pvalues_b100k},
      {"level on Poisson data, M = 10000", level},
      {"power spot cells, M = 10000", spot_cells},
      {"closed forms vs direct oracles", oracle_equivalence},
      {"identities", identities},
      {"determinism across workers", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Result r;
    try {
      r = criteria[i].second();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !r.pass;
    std::printf("criterion %zu: %s - %s: %s [%.1fs]\n", i + 1, r.pass ? "PASS" : "FAIL", criteria[i].first,
                r.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
