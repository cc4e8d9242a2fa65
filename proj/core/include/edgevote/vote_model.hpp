#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "edgevote/rational.hpp"
#include "edgevote/synth_source.hpp"

namespace edgevote {

// Unweighted majority vote over signed features (a variable or its negation),
// with a fixed default label on ties, plus exact error probabilities for such
// votes under the synthetic source.

struct Feature {
  std::int64_t variable = 0;
  bool negated = false;

  friend bool operator==(const Feature&, const Feature&) = default;
};

struct VoteModel {
  // sorted by variable index; at most one sign per variable
  std::vector<Feature> features;
  int default_label = 1;

  std::int64_t size() const { return static_cast<std::int64_t>(features.size()); }
};

// feature counts of a model against a source: n = total, k agree w.p. 1/2+g,
// l agree w.p. 1/2-g, n-k-l irrelevant
struct Composition {
  std::int64_t total = 0;      // n
  std::int64_t relevant = 0;   // k
  std::int64_t misleading = 0; // l

  std::int64_t irrelevant() const { return total - relevant - misleading; }
};

struct CompositionReport {
  Composition comp;
  double exclusivity = 0.0;        // |V(f) cap R| / |V(f)|, sign-blind
  double relevant_fraction = 0.0;  // k / n
  double irrelevant_fraction = 0.0;
};

// 1 if strictly more than half the features vote 1, 0 if strictly fewer,
// default label on a tie or an empty model
int predict(const VoteModel& model, const std::vector<std::uint8_t>& example);
int predict(const VoteModel& model, const Dataset& ds, std::int64_t example);

// Exact misclassification probability of a vote with k features agreeing
// w.p. 1/2+gamma, l w.p. 1/2-gamma and the rest w.p. 1/2: the three binomial
// agreement pmfs are convolved (two smallest groups first) and the error is
// P(correct < n/2) + 1/2 P(correct = n/2).  The 1/2 tie weight is exact: the
// agreement-count distribution is label-independent and a fixed default
// label errs on exactly one of the two equally likely labels.
double exact_error(const Composition& comp, const Rational& gamma);

// Poisson-binomial variant for per-feature agreement probabilities;
// O(n^2) iterative convolution, capped at n = 5000.
double exact_error_hetero(const std::vector<double>& agreement_probs);

// exp(-2 gamma^2 [k-l]_+^2 / n); equals 1 when k <= l
double theorem1_bound(const Composition& comp, double gamma);

// exp(-2 [gamma_min k - gamma_max l]_+^2 / n)
double hetero_bound(std::int64_t n, std::int64_t k, std::int64_t l, double gamma_min,
                    double gamma_max);

// min(c (r+1) exp(-2 gamma^2 k^2 / (n (r+1))), 1); requires 2r <= n
double dependence_bound(std::int64_t n, std::int64_t k, std::int64_t r, double gamma, double c);

struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
};

// Error frequency over freshly drawn labeled examples; deterministic in
// (seed, trial index) and independent of worker partitioning.
McEstimate mc_error(const VoteModel& model, const SourceSpec& spec, std::int64_t trials,
                    std::uint64_t seed);

// Counts relevant (sign matches the variable's polarity), misleading
// (sign opposes it) and irrelevant features; exclusivity counts variables
// whose underlying variable is relevant regardless of sign.
CompositionReport composition_of(const VoteModel& model, const SourceSpec& spec);

// per-feature agreement probabilities of a model against a source
std::vector<double> feature_agreement_probs(const VoteModel& model, const SourceSpec& spec);

// model file: JSON one-based signed indices (+(i+1) for variable i, negative
// for its negation) plus the default label
void save_model(const VoteModel& model, const std::string& path);
VoteModel load_model(const std::string& path);

}  // namespace edgevote
