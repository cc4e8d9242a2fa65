#pragma once

#include <cstdint>
#include <vector>

#include "edgevote/rational.hpp"
#include "edgevote/synth_source.hpp"
#include "edgevote/vote_model.hpp"

namespace edgevote {

// Threshold learner: majority vote over all features whose training
// agreement fraction is at least 1/2 + beta.  Inclusion is decided in exact
// integer arithmetic (2 c den >= m (den + 2 num)) so borderline counts are
// never lost to rounding.

struct EdgeTable {
  std::int64_t example_count = 0;           // m
  std::vector<std::int64_t> agreement;      // per-variable agreement count with labels

  std::int64_t variable_count() const { return static_cast<std::int64_t>(agreement.size()); }
  // empirical edge count/m - 1/2 as an exact rational
  Rational edge(std::int64_t var) const {
    return Rational(2 * agreement[var] - example_count, 2 * example_count);
  }
};

EdgeTable empirical_edges(const Dataset& ds);

// Both signs of every variable are candidates; when a variable and its
// negation both reach the threshold (only possible at beta = 0 with even m)
// the canceling pair is dropped.  Default label is 1.
VoteModel select_model(const EdgeTable& table, const Rational& beta);
VoteModel select_model(const Dataset& ds, const Rational& beta);

// positive features only (no cancellation possible)
VoteModel select_positive_model(const EdgeTable& table, const Rational& beta);
VoteModel select_positive_model(const Dataset& ds, const Rational& beta);

// j-th largest variable edge (1-based), ties broken toward the lower
// variable index
Rational rank_threshold(const EdgeTable& table, std::int64_t j);
Rational rank_threshold(const Dataset& ds, std::int64_t j);

}  // namespace edgevote
