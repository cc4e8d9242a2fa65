#include "edgevote/theory_bounds.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "edgevote/vote_model.hpp"

namespace edgevote {

Theorem2Bound theorem2_bound(std::int64_t total_variables, std::int64_t relevant_count,
                             double gamma, std::int64_t example_count, double beta) {
  if (relevant_count < 1 || total_variables < relevant_count)
    throw std::invalid_argument("theorem2_bound: 1 <= K <= N required");
  if (example_count < 1) throw std::invalid_argument("theorem2_bound: m >= 1 required");
  if (!(gamma > 0.0) || !(gamma < 0.5))
    throw std::invalid_argument("theorem2_bound: 0 < gamma < 1/2 required");
  if (beta < 0.0 || beta > gamma)
    throw std::invalid_argument("theorem2_bound: 0 <= beta <= gamma required");
  const double m = static_cast<double>(example_count);
  const double ratio = static_cast<double>(total_variables) / static_cast<double>(relevant_count);
  const double bracket =
      std::max(1.0 - 8.0 * std::exp(-2.0 * (gamma - beta) * (gamma - beta) * m) - gamma, 0.0);
  const double denom = 1.0 + 8.0 * ratio * std::exp(-2.0 * beta * beta * m) + gamma;
  Theorem2Bound out;
  out.finite_form = std::min(
      std::exp(-2.0 * gamma * gamma * static_cast<double>(relevant_count) * bracket * bracket /
               denom),
      1.0);
  out.with_delta_term = std::min(
      out.finite_form + 4.0 * std::exp(-gamma * static_cast<double>(relevant_count) / 6.0), 1.0);
  return out;
}

Theorem3Bound theorem3_bound(std::int64_t total_variables, std::int64_t relevant_count,
                             double gamma, std::int64_t example_count, double c_frac) {
  if (relevant_count < 1 || total_variables < relevant_count)
    throw std::invalid_argument("theorem3_bound: 1 <= K <= N required");
  if (!(gamma > 0.0) || !(gamma < 0.5))
    throw std::invalid_argument("theorem3_bound: 0 < gamma < 1/2 required");
  if (c_frac < 0.0 || c_frac >= 1.0)
    throw std::invalid_argument("theorem3_bound: 0 <= c_frac < 1 required");
  const double k = static_cast<double>(relevant_count);
  const double n = static_cast<double>(total_variables);
  Theorem3Bound out;
  out.bound = std::exp(-gamma * gamma * k * k / n);
  out.m_threshold = std::log(32.0) / (2.0 * (1.0 - c_frac) * (1.0 - c_frac) * gamma * gamma);
  out.applicable = static_cast<double>(example_count) >= out.m_threshold;
  out.sharp_form = std::exp(-2.0 * gamma * gamma * k * k / n);
  return out;
}

BayesVote bayes_error_and_bound(std::int64_t relevant_count, const Rational& gamma) {
  if (relevant_count < 1) throw std::invalid_argument("bayes_error_and_bound: K >= 1 required");
  BayesVote out;
  Composition comp;
  comp.total = relevant_count;
  comp.relevant = relevant_count;
  out.exact_error = exact_error(comp, gamma);
  const double g = gamma.to_double();
  out.bound = std::exp(-2.0 * g * g * static_cast<double>(relevant_count));
  return out;
}

double relevant_floor(std::int64_t k, double gamma) {
  if (k < 0) throw std::invalid_argument("relevant_floor: k >= 0 required");
  if (gamma < 0.0 || gamma > 0.2)
    throw std::invalid_argument("relevant_floor: 0 <= gamma <= 1/5 required");
  return 0.25 * std::exp(-5.0 * gamma * gamma * static_cast<double>(k));
}

double expected_irrelevant_floor(std::int64_t total_variables, std::int64_t relevant_count,
                                 double beta, std::int64_t example_count) {
  if (total_variables < relevant_count || relevant_count < 0)
    throw std::invalid_argument("expected_irrelevant_floor: 0 <= K <= N required");
  if (example_count < 1)
    throw std::invalid_argument("expected_irrelevant_floor: m >= 1 required");
  if (beta < 0.0 || beta > 0.125)
    throw std::invalid_argument("expected_irrelevant_floor: 0 <= beta <= 1/8 required");
  return static_cast<double>(total_variables - relevant_count) *
         std::exp(-16.0 * beta * beta * static_cast<double>(example_count));
}

RegimeParams regime_params(double gamma) {
  if (!(gamma > 0.0) || !(gamma < 0.5))
    throw std::invalid_argument("regime_params: 0 < gamma < 1/2 required");
  RegimeParams out;
  out.gamma = gamma;
  out.b = 2.0 * std::log(32.0);
  const long double g = gamma;
  const long double log_inv = std::log(1.0L / g);
  out.relevant_count = static_cast<std::int64_t>(
      std::ceil(std::exp(std::pow(log_inv, 1.0L / 3.0L)) / (g * g)));
  out.total_variables = static_cast<std::int64_t>(std::ceil(
      static_cast<long double>(out.relevant_count) * std::exp(std::pow(log_inv, 0.25L))));
  const long double m_real = 2.0L * std::log(32.0L) / (g * g);
  std::int64_t m_floor = static_cast<std::int64_t>(std::floor(m_real));
  std::int64_t lower_odd = (m_floor % 2 == 1) ? m_floor : m_floor - 1;
  std::int64_t upper_odd = lower_odd + 2;
  out.example_count =
      (m_real - static_cast<long double>(lower_odd) <=
       static_cast<long double>(upper_odd) - m_real)
          ? lower_odd
          : upper_odd;
  out.beta_star = gamma *
                  std::log(static_cast<double>(out.total_variables) /
                           static_cast<double>(out.relevant_count)) /
                  (5.0 * out.b);
  if (!(out.beta_star < gamma))
    throw std::domain_error("regime_params: beta* < gamma failed for this gamma");
  return out;
}

namespace {

void check_posterior_capacity(std::int64_t n_vars, std::int64_t n_examples) {
  if (n_vars > 12 || n_examples > 12)
    throw std::length_error("posterior_relevance: capacity is N <= 12, m <= 12");
  if (n_vars < 1 || n_examples < 1)
    throw std::invalid_argument("posterior_relevance: nonempty sample required");
}

double posterior_from_agreements(const std::vector<std::int64_t>& agreements,
                                 std::int64_t m, std::int64_t relevant_count,
                                 const Rational& gamma, std::int64_t target) {
  const std::int64_t n = static_cast<std::int64_t>(agreements.size());
  if (target < 0 || target >= n)
    throw std::out_of_range("posterior_relevance: target variable out of range");
  if (relevant_count < 1 || relevant_count > n)
    throw std::invalid_argument("posterior_relevance: 1 <= K <= N required");
  if (gamma < Rational(0) || gamma >= Rational(1, 2))
    throw std::invalid_argument("posterior_relevance: 0 <= gamma < 1/2 required");

  // weight of making variable i relevant: (1/2+g)^{a_i} (1/2-g)^{m-a_i},
  // relative to the flat (1/2)^m of an irrelevant one (constant, cancels)
  const long double agree = 0.5L + gamma.to_long_double();
  const long double disagree = 0.5L - gamma.to_long_double();
  std::vector<long double> weight(n);
  for (std::int64_t i = 0; i < n; ++i) {
    long double w = 1.0L;
    for (std::int64_t t = 0; t < agreements[i]; ++t) w *= agree;
    for (std::int64_t t = 0; t < m - agreements[i]; ++t) w *= disagree;
    weight[i] = w;
  }

  long double total = 0.0L, with_target = 0.0L;
  const std::uint32_t masks = 1u << n;
  for (std::uint32_t mask = 0; mask < masks; ++mask) {
    if (std::popcount(mask) != relevant_count) continue;
    long double like = 1.0L;
    for (std::int64_t i = 0; i < n; ++i)
      if (mask & (1u << i)) like *= weight[i];
    total += like;
    if (mask & (1u << target)) with_target += like;
  }
  return static_cast<double>(with_target / total);
}

}  // namespace

double posterior_relevance(const std::vector<std::uint8_t>& labels,
                           const std::vector<std::vector<std::uint8_t>>& values,
                           std::int64_t relevant_count, const Rational& gamma,
                           std::int64_t target) {
  const std::int64_t m = static_cast<std::int64_t>(labels.size());
  if (values.size() != labels.size())
    throw std::invalid_argument("posterior_relevance: labels/values size mismatch");
  const std::int64_t n = m > 0 ? static_cast<std::int64_t>(values[0].size()) : 0;
  check_posterior_capacity(n, m);
  std::vector<std::int64_t> agreements(n, 0);
  for (std::int64_t e = 0; e < m; ++e) {
    if (static_cast<std::int64_t>(values[e].size()) != n)
      throw std::invalid_argument("posterior_relevance: ragged value rows");
    for (std::int64_t v = 0; v < n; ++v)
      agreements[v] += (values[e][v] != 0) == (labels[e] != 0);
  }
  return posterior_from_agreements(agreements, m, relevant_count, gamma, target);
}

double posterior_relevance(const Dataset& ds, std::int64_t relevant_count,
                           const Rational& gamma, std::int64_t target) {
  check_posterior_capacity(ds.variable_count, ds.example_count);
  std::vector<std::int64_t> agreements(ds.variable_count, 0);
  for (std::int64_t v = 0; v < ds.variable_count; ++v) agreements[v] = ds.agreement_count(v);
  return posterior_from_agreements(agreements, ds.example_count, relevant_count, gamma, target);
}

}  // namespace edgevote
