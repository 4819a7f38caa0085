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
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "wpgof/empirical.hpp"
#include "wpgof/rng.hpp"

namespace wpgof {

// ---------------------------------------------------------------------------
// Poisson law
// ---------------------------------------------------------------------------

/// ln f_lambda(x) = x ln(lambda) - lambda - ln(x!). Throws DomainError unless
/// lambda is finite and positive. Negative x gives -infinity.
double poisson_log_pmf(double lambda, std::int64_t x);

double poisson_pmf(double lambda, std::int64_t x);

/// F_lambda(x) = P(X <= x).
double poisson_cdf(double lambda, std::int64_t x);

/// 1 - F_lambda(x) = P(X > x), summed directly so the upper tail keeps its
/// relative accuracy.
double poisson_sf(double lambda, std::int64_t x);

/// max_{x > m} f_lambda(x), which is f_lambda(m + 1) whenever lambda <= m + 1
/// (the pmf is non-increasing from its smallest mode ceil(lambda) - 1 on).
/// Throws DomainError when lambda > m + 1.
double poisson_tail_max(double lambda, std::int64_t m);

/// ln(x!) from a precomputed table for small x, lgamma beyond.
double log_factorial(std::int64_t x);

/// ln f_lambda over {0, ..., size - 1} as one array expression. lambda = 0 is
/// accepted here and gives the point mass at zero.
Eigen::ArrayXd poisson_log_pmf_table(double lambda, Eigen::Index size);

// ---------------------------------------------------------------------------
// Alternatives
// ---------------------------------------------------------------------------

namespace alt {

/// Uniform on {0, ..., k}.
struct DiscreteUniform {
  std::int64_t k;
};
struct Binomial {
  std::int64_t trials;
  double p;
};
/// C(r + x - 1, x) p^r (1 - p)^x; mean r(1 - p)/p.
struct NegativeBinomial {
  double r;
  double p;
};
/// P(lambda1) with probability p, otherwise P(lambda2).
struct PoissonMixture {
  double p;
  double lambda1;
  double lambda2;
};
/// (1 - p) I(x = 0) + p f_lambda(x).
struct ZeroInflatedPoisson {
  double p;
  double lambda;
};
/// f_lambda(y) (a y^2 + b y + 1) / (a (lambda + lambda^2) + b lambda + 1).
struct WeightedPoisson {
  double lambda;
  double a;
  double b;
};
struct Poisson {
  double lambda;
};

}  // namespace alt

using AlternativeSpec =
    std::variant<alt::DiscreteUniform, alt::Binomial, alt::NegativeBinomial, alt::PoissonMixture,
                 alt::ZeroInflatedPoisson, alt::WeightedPoisson, alt::Poisson>;

/// Throws DomainError when a parameter is out of range.
void validate(const AlternativeSpec& spec);

/// Parses the canonical text form, e.g. `poisson(5)`, `du(6)`, `bin(10,0.2)`,
/// `nb(3,0.75)`, `pm(0.2,1,5)`, `zip(0.8,3)`, `wp(2,1,1)`. Case-insensitive and
/// whitespace-tolerant; `b(...)` is accepted for `bin(...)` and numeric
/// arguments may be written as fractions (`nb(2,2/3)`). The result is
/// validated. Throws ParseError or DomainError.
AlternativeSpec parse_alternative(std::string_view text);

/// Canonical text with shortest round-trip numbers; parses back exactly.
std::string to_string(const AlternativeSpec& spec);

double log_pmf(const AlternativeSpec& spec, std::int64_t x);
double pmf(const AlternativeSpec& spec, std::int64_t x);
double mean(const AlternativeSpec& spec);
double variance(const AlternativeSpec& spec);

/// Variance over mean, from closed-form moments. Throws DomainError for a
/// law with zero mean.
double fisher_index(const AlternativeSpec& spec);

// ---------------------------------------------------------------------------
// Sampling
// ---------------------------------------------------------------------------

/// One Poisson variate: sequential-search inversion for lambda < 30,
/// Hormann's PTRS transformed rejection otherwise. lambda = 0 returns 0.
std::int64_t sample_poisson(double lambda, Engine& engine);

/// Draws from one alternative. Construction does the per-law setup
/// (inverse-cdf tables for Bin, NB and WP), so reuse a sampler across draws.
class Sampler {
 public:
  explicit Sampler(AlternativeSpec spec);

  const AlternativeSpec& spec() const noexcept { return spec_; }

  std::int64_t operator()(Engine& engine) const;

  void fill(Engine& engine, std::span<std::int64_t> out) const {
    for (auto& x : out) x = (*this)(engine);
  }

 private:
  std::int64_t from_table(double u) const;

  AlternativeSpec spec_;
  std::vector<double> cumulative_;
};

/// n independent draws from `spec`, using the stream named by `rng`.
CountSample sample(const AlternativeSpec& spec, std::size_t n, const RngHandle& rng);

}  // namespace wpgof
