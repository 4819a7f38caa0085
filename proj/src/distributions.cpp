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

#include "wpgof/distributions.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <string>
#include <type_traits>
#include <vector>

#include "wpgof/error.hpp"

namespace wpgof {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::int64_t kLogFactorialTableSize = std::int64_t{1} << 16;
// Inverse-cdf tables stop once the remaining mass is below this.
constexpr double kTableTailMass = 1e-12;
constexpr std::size_t kMaxTableSize = std::size_t{1} << 24;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Kept in long double so that the scalar log pmf rounds only once.
const std::vector<long double>& log_factorial_table_ld() {
  static const std::vector<long double> table = [] {
    std::vector<long double> t(kLogFactorialTableSize);
    for (std::size_t k = 0; k < t.size(); ++k) t[k] = std::lgamma(static_cast<long double>(k) + 1.0L);
    return t;
  }();
  return table;
}

const Eigen::ArrayXd& log_factorial_table() {
  static const Eigen::ArrayXd table = [] {
    const auto& ld = log_factorial_table_ld();
    Eigen::ArrayXd t(kLogFactorialTableSize);
    for (Eigen::Index k = 0; k < t.size(); ++k) t[k] = static_cast<double>(ld[k]);
    return t;
  }();
  return table;
}

void require_rate(double lambda, const char* what) {
  if (!std::isfinite(lambda) || lambda <= 0.0)
    throw DomainError(std::string(what) + " must be finite and positive");
}

void require_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError(std::string(what) + " must lie in [0, 1]");
}

// x * log(p), with 0 * log(0) = 0.
double xlogy(double x, double y) { return x == 0.0 ? 0.0 : x * std::log(y); }
double xlog1py(double x, double y) { return x == 0.0 ? 0.0 : x * std::log1p(y); }

double log_add_exp(double a, double b) {
  if (a == -kInf) return b;
  if (b == -kInf) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(-std::abs(a - b)));
}

// Sum of f_lambda(k) for k = start, start + step, ... while terms matter.
// Terms must be decreasing in the direction of travel.
double sum_monotone_terms(double lambda, std::int64_t start, int step) {
  double term = std::exp(poisson_log_pmf(lambda, start));
  double total = 0.0;
  std::int64_t k = start;
  while (term > 0.0) {
    total += term;
    if (term < total * 1e-18) break;
    if (step > 0) {
      ++k;
      term *= lambda / static_cast<double>(k);
    } else {
      if (k == 0) break;
      term *= static_cast<double>(k) / lambda;
      --k;
    }
  }
  return total;
}

std::int64_t sample_poisson_ptrs(double lambda, Engine& engine) {
  const double slam = std::sqrt(lambda);
  const double loglam = std::log(lambda);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);

  for (;;) {
    const double u = uniform01(engine) - 0.5;
    const double v = uniform01(engine);
    const double us = 0.5 - std::abs(u);
    const double kf = std::floor((2.0 * a / us + b) * u + lambda + 0.43);
    if (us >= 0.07 && v <= vr) return static_cast<std::int64_t>(kf);
    if (kf < 0.0 || (us < 0.013 && v > us)) continue;
    const auto k = static_cast<std::int64_t>(kf);
    if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
        -lambda + kf * loglam - log_factorial(k))
      return k;
  }
}

// ----- canonical text ------------------------------------------------------

std::string format_number(double v) {
  std::array<char, 64> buf{};
  const auto result = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), result.ptr);
}

double parse_number(std::string_view token, std::string_view whole) {
  auto parse_plain = [&](std::string_view s) {
    double v = 0.0;
    const auto* end = s.data() + s.size();
    const auto result = std::from_chars(s.data(), end, v);
    if (s.empty() || result.ec != std::errc{} || result.ptr != end)
      throw ParseError("bad number '" + std::string(token) + "' in '" + std::string(whole) + "'");
    return v;
  };
  const auto slash = token.find('/');
  if (slash == std::string_view::npos) return parse_plain(token);
  const double num = parse_plain(token.substr(0, slash));
  const double den = parse_plain(token.substr(slash + 1));
  if (den == 0.0) throw ParseError("zero denominator in '" + std::string(whole) + "'");
  return num / den;
}

std::int64_t as_integer(double v, std::string_view whole) {
  if (!std::isfinite(v) || v != std::floor(v) || std::abs(v) > 9.0e15)
    throw ParseError("expected an integer argument in '" + std::string(whole) + "'");
  return static_cast<std::int64_t>(v);
}

}  // namespace

// ---------------------------------------------------------------------------
// Poisson law

double log_factorial(std::int64_t x) {
  if (x < kLogFactorialTableSize) return log_factorial_table()[x];
  return std::lgamma(static_cast<double>(x) + 1.0);
}

double poisson_log_pmf(double lambda, std::int64_t x) {
  require_rate(lambda, "poisson mean");
  if (x < 0) return -kInf;
  const long double lf = x < kLogFactorialTableSize ? log_factorial_table_ld()[x]
                                                    : std::lgamma(static_cast<long double>(x) + 1.0L);
  return static_cast<double>(static_cast<long double>(x) * std::log(static_cast<long double>(lambda)) -
                             lambda - lf);
}

double poisson_pmf(double lambda, std::int64_t x) { return std::exp(poisson_log_pmf(lambda, x)); }

double poisson_cdf(double lambda, std::int64_t x) {
  require_rate(lambda, "poisson mean");
  if (x < 0) return 0.0;
  if (static_cast<double>(x) < lambda) return std::min(1.0, sum_monotone_terms(lambda, x, -1));
  return 1.0 - poisson_sf(lambda, x);
}

double poisson_sf(double lambda, std::int64_t x) {
  require_rate(lambda, "poisson mean");
  if (x < 0) return 1.0;
  if (static_cast<double>(x + 1) >= lambda) return sum_monotone_terms(lambda, x + 1, +1);
  return std::max(0.0, 1.0 - sum_monotone_terms(lambda, x, -1));
}

double poisson_tail_max(double lambda, std::int64_t m) {
  require_rate(lambda, "poisson mean");
  if (m < 0 || lambda > static_cast<double>(m) + 1.0)
    throw DomainError("poisson_tail_max requires 0 <= m and lambda <= m + 1");
  return poisson_pmf(lambda, m + 1);
}

Eigen::ArrayXd poisson_log_pmf_table(double lambda, Eigen::Index size) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda))
    throw DomainError("poisson mean must be finite and non-negative");
  if (lambda == 0.0) {
    Eigen::ArrayXd out = Eigen::ArrayXd::Constant(size, -kInf);
    if (size > 0) out[0] = 0.0;
    return out;
  }
  const Eigen::ArrayXd x = Eigen::ArrayXd::LinSpaced(size, 0.0, static_cast<double>(size - 1));
  if (size <= kLogFactorialTableSize)
    return x * std::log(lambda) - lambda - log_factorial_table().head(size);
  Eigen::ArrayXd out(size);
  for (Eigen::Index k = 0; k < size; ++k) out[k] = poisson_log_pmf(lambda, k);
  return out;
}

// ---------------------------------------------------------------------------
// Alternatives

void validate(const AlternativeSpec& spec) {
  std::visit(Overloaded{
                 [](const alt::DiscreteUniform& d) {
                   if (d.k < 0) throw DomainError("du(k) requires k >= 0");
                 },
                 [](const alt::Binomial& d) {
                   if (d.trials < 1) throw DomainError("bin(m,p) requires m >= 1");
                   require_probability(d.p, "bin(m,p) probability");
                 },
                 [](const alt::NegativeBinomial& d) {
                   require_rate(d.r, "nb(r,p) size r");
                   if (!(d.p > 0.0 && d.p <= 1.0)) throw DomainError("nb(r,p) requires 0 < p <= 1");
                 },
                 [](const alt::PoissonMixture& d) {
                   require_probability(d.p, "pm(p,l1,l2) probability");
                   require_rate(d.lambda1, "pm(p,l1,l2) first mean");
                   require_rate(d.lambda2, "pm(p,l1,l2) second mean");
                 },
                 [](const alt::ZeroInflatedPoisson& d) {
                   require_probability(d.p, "zip(p,l) probability");
                   require_rate(d.lambda, "zip(p,l) mean");
                 },
                 [](const alt::WeightedPoisson& d) {
                   require_rate(d.lambda, "wp(l,a,b) mean");
                   if (!(d.a >= 0.0 && std::isfinite(d.a) && d.b >= 0.0 && std::isfinite(d.b)))
                     throw DomainError("wp(l,a,b) requires finite a >= 0 and b >= 0");
                 },
                 [](const alt::Poisson& d) { require_rate(d.lambda, "poisson(l) mean"); },
             },
             spec);
}

AlternativeSpec parse_alternative(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c)))
      s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));

  const auto open = s.find('(');
  if (open == std::string::npos || s.back() != ')')
    throw ParseError("expected name(args) in '" + std::string(text) + "'");
  const std::string name = s.substr(0, open);
  const std::string_view inner = std::string_view(s).substr(open + 1, s.size() - open - 2);

  std::vector<double> args;
  std::size_t pos = 0;
  while (pos <= inner.size()) {
    const auto comma = inner.find(',', pos);
    const auto end = comma == std::string_view::npos ? inner.size() : comma;
    args.push_back(parse_number(inner.substr(pos, end - pos), text));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }

  auto expect = [&](std::size_t count) {
    if (args.size() != count)
      throw ParseError("'" + name + "' takes " + std::to_string(count) + " argument(s) in '" +
                       std::string(text) + "'");
  };

  AlternativeSpec spec;
  if (name == "poisson" || name == "p") {
    expect(1);
    spec = alt::Poisson{args[0]};
  } else if (name == "du") {
    expect(1);
    spec = alt::DiscreteUniform{as_integer(args[0], text)};
  } else if (name == "bin" || name == "b") {
    expect(2);
    spec = alt::Binomial{as_integer(args[0], text), args[1]};
  } else if (name == "nb") {
    expect(2);
    spec = alt::NegativeBinomial{args[0], args[1]};
  } else if (name == "pm") {
    expect(3);
    spec = alt::PoissonMixture{args[0], args[1], args[2]};
  } else if (name == "zip") {
    expect(2);
    spec = alt::ZeroInflatedPoisson{args[0], args[1]};
  } else if (name == "wp") {
    expect(3);
    spec = alt::WeightedPoisson{args[0], args[1], args[2]};
  } else {
    throw ParseError("unknown distribution '" + name + "' in '" + std::string(text) + "'");
  }
  validate(spec);
  return spec;
}

std::string to_string(const AlternativeSpec& spec) {
  const auto f = format_number;
  return std::visit(
      Overloaded{
          [&](const alt::DiscreteUniform& d) { return "du(" + std::to_string(d.k) + ")"; },
          [&](const alt::Binomial& d) {
            return "bin(" + std::to_string(d.trials) + "," + f(d.p) + ")";
          },
          [&](const alt::NegativeBinomial& d) { return "nb(" + f(d.r) + "," + f(d.p) + ")"; },
          [&](const alt::PoissonMixture& d) {
            return "pm(" + f(d.p) + "," + f(d.lambda1) + "," + f(d.lambda2) + ")";
          },
          [&](const alt::ZeroInflatedPoisson& d) { return "zip(" + f(d.p) + "," + f(d.lambda) + ")"; },
          [&](const alt::WeightedPoisson& d) {
            return "wp(" + f(d.lambda) + "," + f(d.a) + "," + f(d.b) + ")";
          },
          [&](const alt::Poisson& d) { return "poisson(" + f(d.lambda) + ")"; },
      },
      spec);
}

double log_pmf(const AlternativeSpec& spec, std::int64_t x) {
  if (x < 0) return -kInf;
  const auto xd = static_cast<double>(x);
  return std::visit(
      Overloaded{
          [&](const alt::DiscreteUniform& d) {
            return x <= d.k ? -std::log(static_cast<double>(d.k) + 1.0) : -kInf;
          },
          [&](const alt::Binomial& d) {
            if (x > d.trials) return -kInf;
            const auto rest = static_cast<double>(d.trials - x);
            if ((d.p == 0.0 && x > 0) || (d.p == 1.0 && x < d.trials)) return -kInf;
            return log_factorial(d.trials) - log_factorial(x) - log_factorial(d.trials - x) +
                   xlogy(xd, d.p) + xlog1py(rest, -d.p);
          },
          [&](const alt::NegativeBinomial& d) {
            if (d.p == 1.0) return x == 0 ? 0.0 : -kInf;
            return std::lgamma(d.r + xd) - std::lgamma(d.r) - log_factorial(x) +
                   d.r * std::log(d.p) + xd * std::log1p(-d.p);
          },
          [&](const alt::PoissonMixture& d) {
            return log_add_exp(xlogy(1.0, d.p) + poisson_log_pmf(d.lambda1, x),
                               std::log1p(-d.p) + poisson_log_pmf(d.lambda2, x));
          },
          [&](const alt::ZeroInflatedPoisson& d) {
            const double poisson_part = std::log(d.p) + poisson_log_pmf(d.lambda, x);
            return x == 0 ? log_add_exp(std::log1p(-d.p), poisson_part) : poisson_part;
          },
          [&](const alt::WeightedPoisson& d) {
            const double norm = d.a * (d.lambda + d.lambda * d.lambda) + d.b * d.lambda + 1.0;
            return poisson_log_pmf(d.lambda, x) + std::log(d.a * xd * xd + d.b * xd + 1.0) -
                   std::log(norm);
          },
          [&](const alt::Poisson& d) { return poisson_log_pmf(d.lambda, x); },
      },
      spec);
}

double pmf(const AlternativeSpec& spec, std::int64_t x) { return std::exp(log_pmf(spec, x)); }

namespace {

struct Moments {
  double mean;
  double variance;
};

Moments moments(const AlternativeSpec& spec) {
  validate(spec);
  return std::visit(
      Overloaded{
          [](const alt::DiscreteUniform& d) {
            const auto k = static_cast<double>(d.k);
            return Moments{k / 2.0, k * (k + 2.0) / 12.0};
          },
          [](const alt::Binomial& d) {
            const auto m = static_cast<double>(d.trials);
            return Moments{m * d.p, m * d.p * (1.0 - d.p)};
          },
          [](const alt::NegativeBinomial& d) {
            const double q = 1.0 - d.p;
            return Moments{d.r * q / d.p, d.r * q / (d.p * d.p)};
          },
          [](const alt::PoissonMixture& d) {
            const double mu = d.p * d.lambda1 + (1.0 - d.p) * d.lambda2;
            const double gap = d.lambda1 - d.lambda2;
            return Moments{mu, mu + d.p * (1.0 - d.p) * gap * gap};
          },
          [](const alt::ZeroInflatedPoisson& d) {
            return Moments{d.p * d.lambda, d.p * d.lambda * (1.0 + d.lambda * (1.0 - d.p))};
          },
          [](const alt::WeightedPoisson& d) {
            // Raw Poisson moments E X^k for k = 1..4.
            const double l = d.lambda;
            const double m1 = l;
            const double m2 = l + l * l;
            const double m3 = l * l * l + 3.0 * l * l + l;
            const double m4 = l * l * l * l + 6.0 * l * l * l + 7.0 * l * l + l;
            const double norm = d.a * m2 + d.b * m1 + 1.0;
            const double e1 = (d.a * m3 + d.b * m2 + m1) / norm;
            const double e2 = (d.a * m4 + d.b * m3 + m2) / norm;
            return Moments{e1, e2 - e1 * e1};
          },
          [](const alt::Poisson& d) { return Moments{d.lambda, d.lambda}; },
      },
      spec);
}

}  // namespace

double mean(const AlternativeSpec& spec) { return moments(spec).mean; }
double variance(const AlternativeSpec& spec) { return moments(spec).variance; }

double fisher_index(const AlternativeSpec& spec) {
  const auto [mu, var] = moments(spec);
  if (mu <= 0.0) throw DomainError("fisher index undefined for a law with zero mean");
  return var / mu;
}

// ---------------------------------------------------------------------------
// Sampling

std::int64_t sample_poisson(double lambda, Engine& engine) {
  if (lambda == 0.0) return 0;
  if (lambda >= 30.0) return sample_poisson_ptrs(lambda, engine);

  // X = min{x : u < F(x)}
  const double u = uniform01(engine);
  double p = std::exp(-lambda);
  double c = p;
  std::int64_t x = 0;
  while (u >= c) {
    ++x;
    p *= lambda / static_cast<double>(x);
    // Far tail: the cumulative sum has stopped moving.
    if (c + p == c && static_cast<double>(x) > lambda) break;
    c += p;
  }
  return x;
}

Sampler::Sampler(AlternativeSpec spec) : spec_(std::move(spec)) {
  validate(spec_);
  const bool tabulated = std::holds_alternative<alt::Binomial>(spec_) ||
                         std::holds_alternative<alt::NegativeBinomial>(spec_) ||
                         std::holds_alternative<alt::WeightedPoisson>(spec_);
  if (!tabulated) return;

  const auto* bin = std::get_if<alt::Binomial>(&spec_);
  const double mu = mean(spec_);
  double total = 0.0;
  for (std::int64_t x = 0;; ++x) {
    total += pmf(spec_, x);
    cumulative_.push_back(total);
    if (bin != nullptr) {
      if (x == bin->trials) break;
    } else if (total >= 1.0 - kTableTailMass && static_cast<double>(x) >= mu) {
      break;
    }
    if (cumulative_.size() >= kMaxTableSize)
      throw DomainError("support of " + to_string(spec_) + " is too wide to tabulate");
  }
}

std::int64_t Sampler::from_table(double u) const {
  // The last cell absorbs the truncated (and rounding) residual mass.
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end() - 1, u);
  return static_cast<std::int64_t>(it - cumulative_.begin());
}

std::int64_t Sampler::operator()(Engine& engine) const {
  return std::visit(
      Overloaded{
          [&](const alt::DiscreteUniform& d) {
            const auto x =
                static_cast<std::int64_t>(uniform01(engine) * (static_cast<double>(d.k) + 1.0));
            return std::min(x, d.k);
          },
          [&](const alt::Binomial&) { return from_table(uniform01(engine)); },
          [&](const alt::NegativeBinomial&) { return from_table(uniform01(engine)); },
          [&](const alt::WeightedPoisson&) { return from_table(uniform01(engine)); },
          [&](const alt::PoissonMixture& d) {
            const double lambda = uniform01(engine) < d.p ? d.lambda1 : d.lambda2;
            return sample_poisson(lambda, engine);
          },
          [&](const alt::ZeroInflatedPoisson& d) {
            return uniform01(engine) < d.p ? sample_poisson(d.lambda, engine) : std::int64_t{0};
          },
          [&](const alt::Poisson& d) { return sample_poisson(d.lambda, engine); },
      },
      spec_);
}

CountSample sample(const AlternativeSpec& spec, std::size_t n, const RngHandle& rng) {
  if (n == 0) throw DomainError("sample size must be positive");
  const Sampler sampler(spec);
  Engine engine = rng.engine();
  std::vector<std::int64_t> draws(n);
  sampler.fill(engine, draws);
  return CountSample(std::move(draws));
}

}  // namespace wpgof
