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

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "wpgof/empirical.hpp"

namespace wpgof {

enum class Statistic {
  t1_fit,
  t1_emp,
  t1_lap,
  t2_fit,
  t2_emp,
  t2_lap,
  tinf_fit,
  tinf_emp,
  tinf_lap,
  ks,
  cv,
  ad,
  kl,
  id,
};

inline constexpr std::size_t kStatisticCount = 14;

/// A test statistic together with the Laplace tuning parameter a, which only
/// the three *_lap members read.
struct StatisticId {
  Statistic kind = Statistic::t1_fit;
  double laplace_a = 1.0;

  friend bool operator==(const StatisticId&, const StatisticId&) = default;
};

/// Canonical names: t1-fit ... tinf-lap, ks, cv, ad, kl, id.
std::string_view name(Statistic kind);
std::string name(const StatisticId& id);

/// Parses one canonical name. Throws ParseError.
Statistic parse_statistic(std::string_view text);

/// Parses a comma-separated list of names or `all`. Throws ParseError, or
/// DomainError when laplace_a is not positive.
std::vector<StatisticId> parse_statistic_list(std::string_view text, double laplace_a = 1.0);

/// All fourteen statistics in table order (KS, CV, AD, KL, ID, then the
/// nine weighted-L_p statistics).
std::vector<StatisticId> all_statistics(double laplace_a = 1.0);

/// Weight g used in a weighted L_p distance between w* and 1.
enum class Weight { fitted, empirical, laplace };

/// Tables shared by every statistic for one (sample, lambda_hat) pair.
///
/// Fitted-law tables run over {0, ..., size - 1} where size covers the
/// CV/AD truncation point 100, the sample maximum plus one, and the fitted
/// law's upper tail down to negligible mass. A zero lambda_hat gives the
/// point mass at 0.
struct FitTables {
  FitTables(const CountSample& sample, const FittedNull& fit);

  double n;
  double sqrt_n;
  Eigen::Index m;
  double lambda_hat;

  Eigen::ArrayXd emp_pmf;      // f_n over 0..m
  Eigen::ArrayXd weight;       // w* over 0..m, saturated
  Eigen::ArrayXd log_fit_pmf;  // ln f_lambda_hat
  Eigen::ArrayXd fit_pmf;      // f_lambda_hat
  Eigen::ArrayXd fit_cdf;      // F_lambda_hat, forward sums
  Eigen::ArrayXd fit_sf;       // 1 - F_lambda_hat, backward sums
  Eigen::ArrayXd emp_cdf;      // F_n
  Eigen::ArrayXd cdf_gap;      // F_lambda_hat - F_n, taken as -(1 - F) past m

  Eigen::Index size() const noexcept { return fit_pmf.size(); }
};

/// sum_{x<=m} |w*(x) - 1| g(x) plus the mass of g beyond m.
///
/// For g = f_lambda_hat the first sum is evaluated as sum |f_n - f_lambda_hat|.
double stat_T1(const FitTables& t, Weight g, double laplace_a = 1.0);

/// Squared weighted L2 distance: sum_{x<=m} |w*(x) - 1|^2 g(x) plus the mass
/// of g beyond m. This is the scale reported in practice; the L2 distance
/// itself is its square root and gives the same bootstrap test.
double stat_T2(const FitTables& t, Weight g, double laplace_a = 1.0);

/// max_{x<=m} |w*(x) - 1| g(x), then max with max_{x>m} g(x), which is
/// f_lambda_hat(m + 1) for the fitted weight and e^{-a(m+1)} for Laplace.
double stat_Tinf(const FitTables& t, Weight g, double laplace_a = 1.0);

/// max_x |F_lambda_hat(x) - F_n(x)|, scanned over {0, ..., m}.
double stat_KS(const FitTables& t);

/// (1/n) sum_{x=0}^{100} (F_lambda_hat - F_n)^2 f_lambda_hat.
double stat_CV(const FitTables& t);

/// (1/n) sum_{x=0}^{100} (F_lambda_hat - F_n)^2 f_lambda_hat / (F(1 - F)),
/// skipping terms whose denominator is zero.
double stat_AD(const FitTables& t);

/// sqrt(n) sum_{x>=0} |F_n(x) - F_lambda_hat(x)|.
double stat_KL(const FitTables& t);

/// sup_{t>=0} sqrt(n) |Psi_lambda_hat(t) - Psi_n(t)|. Both integrated
/// distribution functions are linear between integers, so the supremum is
/// attained on {0, ..., m + 1}.
double stat_ID(const FitTables& t);

double compute(const StatisticId& id, const FitTables& tables);

struct StatValue {
  StatisticId id;
  double value;
};

StatValue compute(const StatisticId& id, const CountSample& sample, const FittedNull& fit);

/// Every statistic in `ids` for one sample, sharing one set of tables.
Eigen::ArrayXd evaluate(std::span<const StatisticId> ids, const CountSample& sample,
                        const FittedNull& fit);

}  // namespace wpgof
