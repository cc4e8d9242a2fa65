#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "edgevote/rational.hpp"

namespace edgevote {

// Generative model: a fair class label, K relevant boolean variables agreeing
// with it with probability 1/2 +- gamma_i, and N-K irrelevant variables
// agreeing with probability exactly 1/2.  Optionally the relevant variables
// are grouped into cliques of r+1 perfectly correlated copies (r-local
// dependence); irrelevant variables are always independent.

enum class Polarity { all_positive, half_half };

struct SourceSpec {
  std::int64_t total_variables = 0;  // N
  std::vector<std::int64_t> relevant;  // sorted variable indices, |relevant| = K
  // signed per-relevant-variable edge: +g agrees w.p. 1/2+g, -g w.p. 1/2-g
  std::vector<Rational> edges;
  std::int64_t clique_r = 0;  // 0 = conditionally independent

  std::int64_t relevant_count() const { return static_cast<std::int64_t>(relevant.size()); }
  bool is_relevant(std::int64_t var) const;
  // signed edge of a variable, 0 for irrelevant
  Rational edge_of(std::int64_t var) const;
  // agreement probability 1/2 + edge as an exact rational
  Rational agreement_prob(std::int64_t var) const;
  bool homogeneous() const;  // all |edges| equal
  Rational gamma_magnitude() const;  // |edge| when homogeneous
  // block id for the clique containing a relevant variable (clique_r > 0)
  std::int64_t block_of(std::int64_t var) const;
  std::uint64_t fingerprint() const;
};

// Relevant set is the lowest K indices; half_half marks the first ceil(K/2)
// positive and the rest negative.
SourceSpec make_spec(std::int64_t total_variables, std::int64_t relevant_count,
                     const Rational& gamma, Polarity polarity, std::int64_t clique_r = 0);

SourceSpec make_spec_explicit(std::int64_t total_variables,
                              std::vector<std::int64_t> relevant,
                              std::vector<Rational> edges, std::int64_t clique_r = 0);

enum class EdgeAssignment { uniform_grid, explicit_list };

// Edges in [gamma_min, gamma_max], all positive: either endpoints-inclusive
// uniform grid or the explicit list passed by the caller.
SourceSpec make_hetero_spec(std::int64_t total_variables, std::int64_t relevant_count,
                            const Rational& gamma_min, const Rational& gamma_max,
                            EdgeAssignment assignment,
                            const std::vector<Rational>& explicit_edges = {});

// Labeled sample; values are stored column-major (one packed bit column per
// variable) so per-variable agreement counting is a popcount sweep.
struct Dataset {
  std::int64_t example_count = 0;   // m
  std::int64_t variable_count = 0;  // N
  std::int64_t relevant_count = 0;  // K, carried for the file header
  std::uint64_t seed = 0;
  std::uint64_t spec_fingerprint = 0;
  std::int64_t words_per_column = 0;
  std::vector<std::uint64_t> labels;  // packed bits, example-indexed
  std::vector<std::uint64_t> values;  // column-major packed bits

  bool label(std::int64_t example) const {
    return (labels[example >> 6] >> (example & 63)) & 1ULL;
  }
  bool value(std::int64_t example, std::int64_t var) const {
    return (values[var * words_per_column + (example >> 6)] >> (example & 63)) & 1ULL;
  }
  // number of examples where variable var equals the label
  std::int64_t agreement_count(std::int64_t var) const;
};

// Deterministic sampling: label, block, and value bits are pure functions of
// (seed, example index, variable/block index), so regeneration is
// bit-identical regardless of how the loops are scheduled.
Dataset draw_dataset(const SourceSpec& spec, std::int64_t example_count, std::uint64_t seed);

// file format: magic "EVD1", u64 header (N, K, m, seed, spec fingerprint),
// labels packed LSB-first, then one row of ceil(N/8) bytes per example
void save_dataset(const Dataset& ds, const std::string& path);
Dataset load_dataset(const std::string& path);

}  // namespace edgevote
