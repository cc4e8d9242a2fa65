#include <doctest.h>

#include <random>
#include <set>
#include <stdexcept>

#include "edgevote/mbeta_learner.hpp"
#include "helpers.hpp"

using namespace edgevote;
using testutil::dataset_from_rows;

namespace {

std::set<std::pair<std::int64_t, bool>> feature_set(const VoteModel& model) {
  std::set<std::pair<std::int64_t, bool>> s;
  for (const Feature& f : model.features) s.insert({f.variable, f.negated});
  return s;
}

}  // namespace

TEST_SUITE("mbeta_learner") {

TEST_CASE("empirical edges are exact rationals") {
  const Dataset ds = dataset_from_rows({1, 0, 1}, {{1, 0, 0}, {0, 0, 0}, {1, 1, 0}});
  const EdgeTable table = empirical_edges(ds);
  CHECK(table.agreement[0] == 3);
  CHECK(table.edge(0) == Rational(1, 2));
  CHECK(table.agreement[1] == 2);
  CHECK(table.edge(1) == Rational(1, 6));
  // constant-0 variable against labels (1,0,1) agrees on 1 of 3
  CHECK(table.agreement[2] == 1);
  CHECK(table.edge(2) == Rational(-1, 6));
}

TEST_CASE("select_model at beta = 0.3 and beta = 0 on the worked sample") {
  // labels (1,0,1); x1 = (1,0,1) agrees 3/3, x2 = (0,0,1) agrees 2/3
  const Dataset ds = dataset_from_rows({1, 0, 1}, {{1, 0}, {0, 0}, {1, 1}});
  const VoteModel strict = select_model(ds, Rational(3, 10));
  CHECK(feature_set(strict) == std::set<std::pair<std::int64_t, bool>>{{0, false}});

  const VoteModel loose = select_model(ds, Rational(0));
  CHECK(feature_set(loose) ==
        std::set<std::pair<std::int64_t, bool>>{{0, false}, {1, false}});
  CHECK(loose.default_label == 1);
}

TEST_CASE("even-m cancellation removes both signs") {
  // variable agrees on exactly 1 of 2 examples; at beta = 0 both signs
  // reach the threshold and cancel
  const Dataset ds = dataset_from_rows({1, 0}, {{1}, {1}});
  const VoteModel model = select_model(ds, Rational(0));
  CHECK(model.size() == 0);
}

TEST_CASE("threshold is inclusive at exact equality") {
  // m = 10, agreement 7: edge 1/5, included at beta = 1/5 but not above
  std::vector<std::uint8_t> labels(10, 1);
  std::vector<std::vector<std::uint8_t>> rows(10, std::vector<std::uint8_t>{0});
  for (int e = 0; e < 7; ++e) rows[e][0] = 1;
  const Dataset ds = dataset_from_rows(labels, rows);
  CHECK(select_model(ds, Rational(1, 5)).size() == 1);
  CHECK(select_model(ds, Rational(21, 100)).size() == 0);
}

TEST_CASE("positive-only variant ignores negations") {
  const Dataset ds = dataset_from_rows({1, 0, 1}, {{1, 0}, {0, 0}, {1, 1}});
  const VoteModel pos = select_positive_model(ds, Rational(0));
  CHECK(feature_set(pos) == std::set<std::pair<std::int64_t, bool>>{{0, false}, {1, false}});
  // a variable disagreeing with every label contributes nothing positive
  const Dataset anti = dataset_from_rows({1, 1, 1}, {{0}, {0}, {0}});
  CHECK(select_positive_model(anti, Rational(0)).size() == 0);
  CHECK(select_model(anti, Rational(0)).size() == 1);  // its negation qualifies
  CHECK(select_model(anti, Rational(0)).features[0].negated);
  // beta above the maximal edge leaves the model empty
  const Dataset weak = dataset_from_rows({1, 0, 1}, {{1}, {1}, {1}});  // edge 1/6
  CHECK(select_positive_model(weak, Rational(1, 4)).size() == 0);
  CHECK(select_positive_model(ds, Rational(1, 2)).size() == 1);  // x1 has edge exactly 1/2
  CHECK_THROWS_AS(select_positive_model(ds, Rational(-1, 2)), std::invalid_argument);
}

TEST_CASE("nesting: larger beta selects a subset") {
  std::mt19937_64 gen(17);
  for (int trial = 0; trial < 30; ++trial) {
    const std::int64_t m = 3 + static_cast<std::int64_t>(gen() % 6);
    const std::int64_t n = 1 + static_cast<std::int64_t>(gen() % 6);
    std::vector<std::uint8_t> labels(m);
    std::vector<std::vector<std::uint8_t>> rows(m, std::vector<std::uint8_t>(n));
    for (auto& b : labels) b = gen() & 1;
    for (auto& row : rows)
      for (auto& v : row) v = gen() & 1;
    const Dataset ds = dataset_from_rows(labels, rows);
    const EdgeTable table = empirical_edges(ds);
    const std::vector<Rational> betas = {Rational(0), Rational(1, 10), Rational(1, 4),
                                         Rational(1, 2)};
    for (std::size_t i = 1; i < betas.size(); ++i) {
      const auto smaller = feature_set(select_model(table, betas[i]));
      const auto larger = feature_set(select_model(table, betas[i - 1]));
      // nesting holds on the pre-cancellation sets; cancellation only ever
      // removes pairs at beta = 0, which cannot add features to the superset
      for (const auto& f : smaller) {
        const bool present = larger.count(f) > 0;
        const bool canceled_at_zero =
            betas[i - 1] == Rational(0) && m % 2 == 0 &&
            2 * table.agreement[f.first] == m;
        CHECK((present || canceled_at_zero));
      }
    }
  }
}

TEST_CASE("no model contains a variable with both signs") {
  std::mt19937_64 gen(23);
  for (int trial = 0; trial < 40; ++trial) {
    const std::int64_t m = 2 + static_cast<std::int64_t>(gen() % 5);
    std::vector<std::uint8_t> labels(m);
    std::vector<std::vector<std::uint8_t>> rows(m, std::vector<std::uint8_t>(4));
    for (auto& b : labels) b = gen() & 1;
    for (auto& row : rows)
      for (auto& v : row) v = gen() & 1;
    const Dataset ds = dataset_from_rows(labels, rows);
    for (const Rational& beta : {Rational(0), Rational(1, 8)}) {
      const VoteModel model = select_model(ds, beta);
      std::set<std::int64_t> vars;
      for (const Feature& f : model.features) CHECK(vars.insert(f.variable).second);
    }
  }
}

TEST_CASE("odd m at beta = 0 votes every variable with exactly one sign") {
  std::mt19937_64 gen(29);
  const std::int64_t m = 7, n = 20;
  std::vector<std::uint8_t> labels(m);
  std::vector<std::vector<std::uint8_t>> rows(m, std::vector<std::uint8_t>(n));
  for (auto& b : labels) b = gen() & 1;
  for (auto& row : rows)
    for (auto& v : row) v = gen() & 1;
  const VoteModel model = select_model(dataset_from_rows(labels, rows), Rational(0));
  CHECK(model.size() == n);
}

TEST_CASE("selection is invariant to example order") {
  const std::vector<std::uint8_t> labels = {1, 0, 1, 1, 0};
  const std::vector<std::vector<std::uint8_t>> rows = {
      {1, 0, 1}, {0, 1, 1}, {1, 1, 0}, {0, 0, 1}, {1, 0, 0}};
  std::vector<std::size_t> perm = {4, 2, 0, 1, 3};
  std::vector<std::uint8_t> plabels;
  std::vector<std::vector<std::uint8_t>> prows;
  for (std::size_t i : perm) {
    plabels.push_back(labels[i]);
    prows.push_back(rows[i]);
  }
  const VoteModel a = select_model(dataset_from_rows(labels, rows), Rational(1, 10));
  const VoteModel b = select_model(dataset_from_rows(plabels, prows), Rational(1, 10));
  CHECK(feature_set(a) == feature_set(b));
}

TEST_CASE("rank_threshold orders edges with index tie-break") {
  const Dataset ds = dataset_from_rows({1, 0, 1}, {{1, 0, 1}, {0, 0, 0}, {1, 1, 0}});
  // edges: x0 = 1/2, x1 = 1/6, x2 = 1/6
  const EdgeTable table = empirical_edges(ds);
  CHECK(rank_threshold(table, 1) == Rational(1, 2));
  CHECK(rank_threshold(table, 2) == Rational(1, 6));
  CHECK(rank_threshold(table, 3) == Rational(1, 6));
  CHECK_THROWS_AS(rank_threshold(table, 0), std::out_of_range);
  CHECK_THROWS_AS(rank_threshold(table, 4), std::out_of_range);
}

}  // TEST_SUITE
