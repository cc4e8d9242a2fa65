#include "edgevote/mbeta_learner.hpp"

#include <algorithm>
#include <stdexcept>

#include "edgevote/parallel.hpp"

namespace edgevote {

EdgeTable empirical_edges(const Dataset& ds) {
  if (ds.example_count < 1) throw std::invalid_argument("empirical_edges: m >= 1 required");
  EdgeTable table;
  table.example_count = ds.example_count;
  table.agreement.assign(ds.variable_count, 0);
  parallel_for(ds.variable_count,
               [&](std::int64_t v) { table.agreement[v] = ds.agreement_count(v); });
  return table;
}

namespace {

void check_beta(const Rational& beta) {
  if (beta < Rational(0) || beta > Rational(1, 2))
    throw std::invalid_argument("select_model: 0 <= beta <= 1/2 required");
}

// agreement count c qualifies iff c/m >= 1/2 + beta, i.e. 2 c den >= m (den + 2 num)
bool qualifies(std::int64_t c, std::int64_t m, const Rational& beta) {
  return 2 * (__int128)c * beta.den >= (__int128)m * (beta.den + 2 * beta.num);
}

}  // namespace

VoteModel select_model(const EdgeTable& table, const Rational& beta) {
  check_beta(beta);
  VoteModel model;
  model.default_label = 1;
  const std::int64_t m = table.example_count;
  for (std::int64_t v = 0; v < table.variable_count(); ++v) {
    const bool pos = qualifies(table.agreement[v], m, beta);
    const bool neg = qualifies(m - table.agreement[v], m, beta);
    if (pos && neg) continue;  // canceling pair, drop the variable
    if (pos) model.features.push_back({v, false});
    if (neg) model.features.push_back({v, true});
  }
  return model;
}

VoteModel select_model(const Dataset& ds, const Rational& beta) {
  return select_model(empirical_edges(ds), beta);
}

VoteModel select_positive_model(const EdgeTable& table, const Rational& beta) {
  check_beta(beta);
  VoteModel model;
  model.default_label = 1;
  for (std::int64_t v = 0; v < table.variable_count(); ++v)
    if (qualifies(table.agreement[v], table.example_count, beta))
      model.features.push_back({v, false});
  return model;
}

VoteModel select_positive_model(const Dataset& ds, const Rational& beta) {
  return select_positive_model(empirical_edges(ds), beta);
}

Rational rank_threshold(const EdgeTable& table, std::int64_t j) {
  const std::int64_t n = table.variable_count();
  if (j < 1 || j > n) throw std::out_of_range("rank_threshold: rank out of range");
  // sort agreement counts descending; equal counts rank lower index first,
  // which does not change the returned edge value
  std::vector<std::int64_t> counts = table.agreement;
  std::nth_element(counts.begin(), counts.begin() + (j - 1), counts.end(),
                   [](std::int64_t a, std::int64_t b) { return a > b; });
  return Rational(2 * counts[j - 1] - table.example_count, 2 * table.example_count);
}

Rational rank_threshold(const Dataset& ds, std::int64_t j) {
  return rank_threshold(empirical_edges(ds), j);
}

}  // namespace edgevote
