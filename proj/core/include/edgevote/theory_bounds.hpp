#pragma once

#include <cstdint>
#include <vector>

#include "edgevote/rational.hpp"
#include "edgevote/synth_source.hpp"

namespace edgevote {

// Evaluators for the learned-model error bounds, the lower-bound quantities,
// the scaling regime used by the exclusivity analysis, and the exact
// small-instance posterior-relevance oracle.

struct Theorem2Bound {
  // exp(-2 g^2 K [1 - 8 e^{-2(g-b)^2 m} - g]_+^2 / (1 + 8 (N/K) e^{-2 b^2 m} + g)),
  // asymptotic prefactor dropped
  double finite_form = 1.0;
  // same expression plus the 4 delta slack at delta = e^{-g K / 6}
  double with_delta_term = 1.0;
};

Theorem2Bound theorem2_bound(std::int64_t total_variables, std::int64_t relevant_count,
                             double gamma, std::int64_t example_count, double beta);

struct Theorem3Bound {
  double bound = 1.0;          // exp(-g^2 K^2 / N)
  double m_threshold = 0.0;    // ln(32) / (2 (1-c)^2 g^2)
  bool applicable = false;     // m >= m_threshold
  double sharp_form = 1.0;     // exp(-2 g^2 K^2 / N), valid only as m/g^-2 -> inf
};

Theorem3Bound theorem3_bound(std::int64_t total_variables, std::int64_t relevant_count,
                             double gamma, std::int64_t example_count, double c_frac);

struct BayesVote {
  double exact_error = 0.0;  // exact error of the K-relevant majority vote
  double bound = 1.0;        // e^{-2 g^2 K}
};

BayesVote bayes_error_and_bound(std::int64_t relevant_count, const Rational& gamma);

// 1/4 e^{-5 g^2 k}; floor on the error of any classifier using k relevant
// variables, valid for 0 <= gamma <= 1/5
double relevant_floor(std::int64_t k, double gamma);

// (N - K) e^{-16 beta^2 m}; floor on the expected irrelevant-variable count
// of the beta-threshold model, valid for 0 <= beta <= 1/8
double expected_irrelevant_floor(std::int64_t total_variables, std::int64_t relevant_count,
                                 double beta, std::int64_t example_count);

// Scaling regime of the exclusivity lower bound; all roundings are fixed:
// K and N round up, m is the nearest odd integer, beta* uses the rounded
// K and N.
struct RegimeParams {
  double gamma = 0.0;
  double b = 0.0;            // 2 ln 32
  std::int64_t relevant_count = 0;   // K
  std::int64_t total_variables = 0;  // N
  std::int64_t example_count = 0;    // m
  double beta_star = 0.0;    // gamma ln(N/K) / (5 b)
};

RegimeParams regime_params(double gamma);

// Exact Bayes posterior P(variable target is relevant | sample) under a
// uniform prior over size-K relevant sets with all-positive polarity.
// Enumerates every size-K subset; capacity N <= 12, m <= 12.
double posterior_relevance(const std::vector<std::uint8_t>& labels,
                           const std::vector<std::vector<std::uint8_t>>& values,
                           std::int64_t relevant_count, const Rational& gamma,
                           std::int64_t target);

double posterior_relevance(const Dataset& ds, std::int64_t relevant_count,
                           const Rational& gamma, std::int64_t target);

}  // namespace edgevote
