#pragma once

#include <cstdint>
#include <vector>

#include "edgevote/rational.hpp"
#include "edgevote/synth_source.hpp"
#include "edgevote/vote_model.hpp"

// Test-only utilities: tiny dataset construction and independent brute-force
// oracles.  The oracles enumerate outcome spaces directly and never call the
// implementation paths they are used to check.

namespace testutil {

inline edgevote::Dataset dataset_from_rows(const std::vector<std::uint8_t>& labels,
                                           const std::vector<std::vector<std::uint8_t>>& rows) {
  edgevote::Dataset ds;
  ds.example_count = static_cast<std::int64_t>(labels.size());
  ds.variable_count = rows.empty() ? 0 : static_cast<std::int64_t>(rows[0].size());
  ds.words_per_column = (ds.example_count + 63) / 64;
  ds.labels.assign(ds.words_per_column, 0);
  ds.values.assign(ds.words_per_column * ds.variable_count, 0);
  for (std::int64_t e = 0; e < ds.example_count; ++e) {
    if (labels[e]) ds.labels[e >> 6] |= 1ULL << (e & 63);
    for (std::int64_t v = 0; v < ds.variable_count; ++v)
      if (rows[e][v]) ds.values[v * ds.words_per_column + (e >> 6)] |= 1ULL << (e & 63);
  }
  return ds;
}

// P(U >= t) by enumerating all 2^l outcomes of l independent Bernoulli(p)
// draws; exponential cost, l <= ~22
inline double brute_upper_tail(std::int64_t l, const edgevote::Rational& p, std::int64_t t) {
  const double ps = p.to_double();
  double total = 0.0;
  for (std::uint64_t mask = 0; mask < (1ULL << l); ++mask) {
    double prob = 1.0;
    int ones = 0;
    for (std::int64_t i = 0; i < l; ++i) {
      if ((mask >> i) & 1ULL) {
        prob *= ps;
        ++ones;
      } else {
        prob *= 1.0 - ps;
      }
    }
    if (ones >= t) total += prob;
  }
  return total;
}

// Exact error of a majority vote whose features agree with the label with
// the given probabilities, enumerating all 2^n agreement outcomes; the vote
// errs when fewer than half the features agree, and on an exact tie it errs
// with probability 1/2 (fixed default label against a fair label prior).
inline double brute_vote_error(const std::vector<double>& agreement_probs) {
  const std::int64_t n = static_cast<std::int64_t>(agreement_probs.size());
  double err = 0.0;
  for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
    double prob = 1.0;
    std::int64_t agree = 0;
    for (std::int64_t i = 0; i < n; ++i) {
      if ((mask >> i) & 1ULL) {
        prob *= agreement_probs[i];
        ++agree;
      } else {
        prob *= 1.0 - agreement_probs[i];
      }
    }
    if (2 * agree < n)
      err += prob;
    else if (2 * agree == n)
      err += 0.5 * prob;
  }
  return err;
}

inline std::vector<double> composition_probs(std::int64_t k, std::int64_t l, std::int64_t irr,
                                             double gamma) {
  std::vector<double> probs;
  for (std::int64_t i = 0; i < k; ++i) probs.push_back(0.5 + gamma);
  for (std::int64_t i = 0; i < l; ++i) probs.push_back(0.5 - gamma);
  for (std::int64_t i = 0; i < irr; ++i) probs.push_back(0.5);
  return probs;
}

}  // namespace testutil
