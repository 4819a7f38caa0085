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

#include "wpgof/statistics.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>

#include "wpgof/distributions.hpp"
#include "wpgof/error.hpp"

namespace wpgof {
namespace {

constexpr double kMaxFinite = std::numeric_limits<double>::max();
// CV and AD sums stop at x = 100.
constexpr Eigen::Index kEdfTruncation = 100;

constexpr std::array<std::pair<Statistic, std::string_view>, kStatisticCount> kNames{{
    {Statistic::t1_fit, "t1-fit"},
    {Statistic::t1_emp, "t1-emp"},
    {Statistic::t1_lap, "t1-lap"},
    {Statistic::t2_fit, "t2-fit"},
    {Statistic::t2_emp, "t2-emp"},
    {Statistic::t2_lap, "t2-lap"},
    {Statistic::tinf_fit, "tinf-fit"},
    {Statistic::tinf_emp, "tinf-emp"},
    {Statistic::tinf_lap, "tinf-lap"},
    {Statistic::ks, "ks"},
    {Statistic::cv, "cv"},
    {Statistic::ad, "ad"},
    {Statistic::kl, "kl"},
    {Statistic::id, "id"},
}};

double saturate(double v) { return std::min(v, kMaxFinite); }

// Eigen's packet exp clamps its argument, so exp(-inf) would come out near
// 1e-308 instead of 0; the scalar routine keeps the tails exact.
Eigen::ArrayXd exact_exp(const Eigen::ArrayXd& v) {
  return v.unaryExpr([](double x) { return std::exp(x); });
}

void require_laplace(double a) {
  if (!std::isfinite(a) || a <= 0.0) throw DomainError("laplace parameter a must be positive");
}

// |w* - 1|^p e^{-ax} over 0..m, formed in log space: a saturated weight
// meeting an underflowed Laplace factor must not turn into inf * 0.
Eigen::ArrayXd laplace_terms(const FitTables& t, double p, double a) {
  Eigen::ArrayXd out(t.m + 1);
  for (Eigen::Index x = 0; x <= t.m; ++x) {
    const double log_g = -a * static_cast<double>(x);
    if (t.emp_pmf[x] == 0.0) {
      out[x] = std::exp(log_g);
      continue;
    }
    const double log_w = std::log(t.emp_pmf[x]) - t.log_fit_pmf[x];
    // |w - 1| = w (1 - 1/w) above one, 1 - w below.
    const double log_dev = log_w > 0.0 ? log_w + std::log1p(-std::exp(-log_w))
                                       : std::log(-std::expm1(log_w));
    out[x] = std::min(std::exp(p * log_dev + log_g), kMaxFinite);
  }
  return out;
}

// sum_{x>m} e^{-ax}
double laplace_tail(Eigen::Index m, double a) {
  return std::exp(-a * static_cast<double>(m + 1)) / -std::expm1(-a);
}

// Suffix sums: out[t] = sum_{k>=t} v[k].
Eigen::ArrayXd suffix_sums(const Eigen::ArrayXd& v) {
  Eigen::ArrayXd out(v.size());
  double acc = 0.0;
  for (Eigen::Index k = v.size() - 1; k >= 0; --k) {
    acc += v[k];
    out[k] = acc;
  }
  return out;
}

std::string lowercase_trimmed(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c)))
      s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return s;
}

}  // namespace

// ---------------------------------------------------------------------------
// Names

std::string_view name(Statistic kind) {
  for (const auto& [k, n] : kNames)
    if (k == kind) return n;
  return "?";
}

std::string name(const StatisticId& id) { return std::string(name(id.kind)); }

Statistic parse_statistic(std::string_view text) {
  const std::string s = lowercase_trimmed(text);
  for (const auto& [k, n] : kNames)
    if (n == s) return k;
  throw ParseError("unknown statistic '" + std::string(text) + "'");
}

std::vector<StatisticId> all_statistics(double laplace_a) {
  require_laplace(laplace_a);
  std::vector<StatisticId> out;
  for (auto kind : {Statistic::ks, Statistic::cv, Statistic::ad, Statistic::kl, Statistic::id,
                    Statistic::t1_fit, Statistic::t1_emp, Statistic::t1_lap, Statistic::t2_fit,
                    Statistic::t2_emp, Statistic::t2_lap, Statistic::tinf_fit, Statistic::tinf_emp,
                    Statistic::tinf_lap})
    out.push_back({kind, laplace_a});
  return out;
}

std::vector<StatisticId> parse_statistic_list(std::string_view text, double laplace_a) {
  require_laplace(laplace_a);
  const std::string s = lowercase_trimmed(text);
  if (s == "all") return all_statistics(laplace_a);
  std::vector<StatisticId> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const auto comma = s.find(',', pos);
    const auto end = comma == std::string::npos ? s.size() : comma;
    const auto token = std::string_view(s).substr(pos, end - pos);
    if (token == "all") {
      const auto every = all_statistics(laplace_a);
      out.insert(out.end(), every.begin(), every.end());
    } else {
      out.push_back({parse_statistic(token), laplace_a});
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Shared tables

FitTables::FitTables(const CountSample& sample, const FittedNull& fit)
    : n(static_cast<double>(sample.size())),
      sqrt_n(std::sqrt(n)),
      m(sample.max()),
      lambda_hat(fit.lambda_hat) {
  const double tail_reach = std::ceil(lambda_hat + 12.0 * std::sqrt(lambda_hat) + 40.0);
  const Eigen::Index size =
      std::max({kEdfTruncation + 1, m + 2, static_cast<Eigen::Index>(tail_reach)});

  log_fit_pmf = poisson_log_pmf_table(lambda_hat, size);
  fit_pmf = exact_exp(log_fit_pmf);

  fit_cdf.resize(size);
  std::partial_sum(fit_pmf.begin(), fit_pmf.end(), fit_cdf.begin());
  fit_cdf = fit_cdf.min(1.0);

  fit_sf.resize(size);
  fit_sf[size - 1] = lambda_hat > 0.0 ? poisson_sf(lambda_hat, size - 1) : 0.0;
  for (Eigen::Index x = size - 1; x > 0; --x) fit_sf[x - 1] = fit_sf[x] + fit_pmf[x];
  fit_sf = fit_sf.min(1.0);

  emp_pmf = empirical_pmf_table(sample);
  emp_cdf = Eigen::ArrayXd::Ones(size);
  std::partial_sum(emp_pmf.begin(), emp_pmf.end(), emp_cdf.begin());
  emp_cdf(m) = 1.0;

  cdf_gap.resize(size);
  cdf_gap.head(m) = fit_cdf.head(m) - emp_cdf.head(m);
  cdf_gap.tail(size - m) = -fit_sf.tail(size - m);

  weight = (emp_pmf > 0.0)
               .select(exact_exp(emp_pmf.log() - log_fit_pmf.head(m + 1)).min(kMaxFinite), 0.0);
}

// ---------------------------------------------------------------------------
// Weighted L_p statistics

double stat_T1(const FitTables& t, Weight g, double laplace_a) {
  const auto& fn = t.emp_pmf;
  const auto f = t.fit_pmf.head(t.m + 1);
  const Eigen::ArrayXd dev = (t.weight - 1.0).abs();
  switch (g) {
    case Weight::fitted:
      return saturate((fn - f).abs().sum() + t.fit_sf[t.m]);
    case Weight::empirical:
      return saturate((dev * fn).sum());
    case Weight::laplace:
      require_laplace(laplace_a);
      return saturate(laplace_terms(t, 1.0, laplace_a).sum() + laplace_tail(t.m, laplace_a));
  }
  return 0.0;
}

double stat_T2(const FitTables& t, Weight g, double laplace_a) {
  const auto& fn = t.emp_pmf;
  const auto f = t.fit_pmf.head(t.m + 1);
  const Eigen::ArrayXd dev2 = (t.weight - 1.0).square();
  switch (g) {
    case Weight::fitted: {
      // |w* - 1|^2 f = (f_n - f)^2 / f, without forming w*.
      // An underflowed f with f_n > 0 contributes an unbounded term.
      const Eigen::ArrayXd unbounded =
          (fn > 0.0).cast<double>() * std::numeric_limits<double>::max();
      const Eigen::ArrayXd terms = (f > 0.0).select((fn - f).square() / f, unbounded);
      return saturate(terms.sum() + t.fit_sf[t.m]);
    }
    case Weight::empirical:
      return saturate((dev2 * fn).sum());
    case Weight::laplace:
      require_laplace(laplace_a);
      return saturate(laplace_terms(t, 2.0, laplace_a).sum() + laplace_tail(t.m, laplace_a));
  }
  return 0.0;
}

double stat_Tinf(const FitTables& t, Weight g, double laplace_a) {
  const auto& fn = t.emp_pmf;
  const auto f = t.fit_pmf.head(t.m + 1);
  const Eigen::ArrayXd dev = (t.weight - 1.0).abs();
  switch (g) {
    case Weight::fitted: {
      const double tail = t.lambda_hat > 0.0 ? poisson_tail_max(t.lambda_hat, t.m) : 0.0;
      return std::max((fn - f).abs().maxCoeff(), tail);
    }
    case Weight::empirical:
      return (dev * fn).maxCoeff();
    case Weight::laplace:
      require_laplace(laplace_a);
      return std::max(laplace_terms(t, 1.0, laplace_a).maxCoeff(),
                      std::exp(-laplace_a * static_cast<double>(t.m + 1)));
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// EDF statistics

double stat_KS(const FitTables& t) { return t.cdf_gap.head(t.m + 1).abs().maxCoeff(); }

double stat_CV(const FitTables& t) {
  const Eigen::Index len = kEdfTruncation + 1;
  return (t.cdf_gap.head(len).square() * t.fit_pmf.head(len)).sum() / t.n;
}

double stat_AD(const FitTables& t) {
  const Eigen::Index len = kEdfTruncation + 1;
  const Eigen::ArrayXd den = t.fit_cdf.head(len) * t.fit_sf.head(len);
  const Eigen::ArrayXd num = t.cdf_gap.head(len).square() * t.fit_pmf.head(len);
  return (den > 0.0).select(num / den, 0.0).sum() / t.n;
}

double stat_KL(const FitTables& t) { return t.sqrt_n * t.cdf_gap.abs().sum(); }

double stat_ID(const FitTables& t) {
  // Psi(t) = sum_{k>=t} (1 - F(k)) at integer t, for the fitted and the
  // empirical law; Psi_n vanishes from m on.
  const Eigen::Index points = t.m + 2;
  const Eigen::ArrayXd psi_fit = suffix_sums(t.fit_sf).head(points);
  Eigen::ArrayXd psi_emp = Eigen::ArrayXd::Zero(points);
  psi_emp.head(t.m + 1) = suffix_sums(1.0 - t.emp_cdf.head(t.m + 1));
  return t.sqrt_n * (psi_fit - psi_emp).abs().maxCoeff();
}

// ---------------------------------------------------------------------------
// Dispatch

double compute(const StatisticId& id, const FitTables& tables) {
  const double a = id.laplace_a;
  switch (id.kind) {
    case Statistic::t1_fit: return stat_T1(tables, Weight::fitted);
    case Statistic::t1_emp: return stat_T1(tables, Weight::empirical);
    case Statistic::t1_lap: return stat_T1(tables, Weight::laplace, a);
    case Statistic::t2_fit: return stat_T2(tables, Weight::fitted);
    case Statistic::t2_emp: return stat_T2(tables, Weight::empirical);
    case Statistic::t2_lap: return stat_T2(tables, Weight::laplace, a);
    case Statistic::tinf_fit: return stat_Tinf(tables, Weight::fitted);
    case Statistic::tinf_emp: return stat_Tinf(tables, Weight::empirical);
    case Statistic::tinf_lap: return stat_Tinf(tables, Weight::laplace, a);
    case Statistic::ks: return stat_KS(tables);
    case Statistic::cv: return stat_CV(tables);
    case Statistic::ad: return stat_AD(tables);
    case Statistic::kl: return stat_KL(tables);
    case Statistic::id: return stat_ID(tables);
  }
  return 0.0;
}

StatValue compute(const StatisticId& id, const CountSample& sample, const FittedNull& fit) {
  return {id, compute(id, FitTables(sample, fit))};
}

Eigen::ArrayXd evaluate(std::span<const StatisticId> ids, const CountSample& sample,
                        const FittedNull& fit) {
  const FitTables tables(sample, fit);
  Eigen::ArrayXd out(static_cast<Eigen::Index>(ids.size()));
  for (std::size_t k = 0; k < ids.size(); ++k) out[static_cast<Eigen::Index>(k)] = compute(ids[k], tables);
  return out;
}

}  // namespace wpgof
