#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "edgevote/tail_oracle.hpp"
#include "helpers.hpp"

using namespace edgevote;

namespace {

AuditGrid standard_grid(std::vector<std::int64_t> ells) {
  AuditGrid grid;
  grid.ells = std::move(ells);
  grid.etas = {Rational(0), Rational(1, 50), Rational(1, 20), Rational(1, 10), Rational(3, 20),
               Rational(1, 5)};
  grid.ps = {Rational(1, 10), Rational(1, 4), Rational(1, 2), Rational(3, 4)};
  grid.deltas = {0.01, 0.1, 0.5, 1.0};
  return grid;
}

std::vector<std::int64_t> range_ells(std::int64_t lo, std::int64_t hi) {
  std::vector<std::int64_t> v;
  for (std::int64_t l = lo; l <= hi; ++l) v.push_back(l);
  return v;
}

}  // namespace

TEST_SUITE("tail_oracle") {

TEST_CASE("exact tails at hand-enumerated points") {
  CHECK(exact_upper_tail({10, Rational(1, 2), 7, false}) == doctest::Approx(176.0 / 1024.0).epsilon(1e-13));
  CHECK(exact_upper_tail({5, Rational(1, 2), 0, false}) == 1.0);
  CHECK(exact_upper_tail({16, Rational(1, 2), 10, false}) ==
        doctest::Approx(14893.0 / 65536.0).epsilon(1e-13));
  // strict flag shifts the event by one
  CHECK(exact_upper_tail({10, Rational(1, 2), 6, true}) ==
        doctest::Approx(176.0 / 1024.0).epsilon(1e-13));
}

TEST_CASE("tails agree with 2^l enumeration") {
  for (std::int64_t l : {1, 2, 3, 5, 8, 12, 18}) {
    for (const Rational& p : {Rational(1, 3), Rational(1, 2), Rational(7, 10)}) {
      for (std::int64_t t : {std::int64_t{0}, l / 3, l / 2, l - 1, l}) {
        const double expected = testutil::brute_upper_tail(l, p, t);
        CHECK(exact_upper_tail({l, p, t, false}) == doctest::Approx(expected).epsilon(1e-12));
      }
    }
  }
  CHECK(exact_upper_tail({20, Rational(1, 2), 13, false}) ==
        doctest::Approx(testutil::brute_upper_tail(20, Rational(1, 2), 13)).epsilon(1e-12));
}

TEST_CASE("upper and independently-summed lower tails add to one") {
  for (std::int64_t l : {7, 64, 1000, 100000}) {
    for (const Rational& p : {Rational(1, 7), Rational(1, 2), Rational(9, 10)}) {
      for (std::int64_t t : {l / 10, l / 2, (9 * l) / 10}) {
        const TailQuery q{l, p, t, false};
        CHECK(exact_upper_tail(q) + exact_lower_tail(q) == doctest::Approx(1.0).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("tail is monotone in threshold and in p") {
  const std::int64_t l = 40;
  double prev = 1.0;
  for (std::int64_t t = 0; t <= l + 1; ++t) {
    const double cur = exact_upper_tail({l, Rational(1, 3), t, false});
    CHECK(cur <= prev + 1e-15);
    prev = cur;
  }
  for (std::int64_t t : {15, 21, 30}) {
    double prev_p = 0.0;
    for (int num = 1; num <= 9; ++num) {
      const double cur = exact_upper_tail({l, Rational(num, 10), t, false});
      CHECK(cur >= prev_p - 1e-15);
      prev_p = cur;
    }
  }
}

TEST_CASE("query validation") {
  CHECK_THROWS_AS(exact_upper_tail({0, Rational(1, 2), 0, false}), std::invalid_argument);
  CHECK_THROWS_AS(exact_upper_tail({10, Rational(0), 3, false}), std::invalid_argument);
  CHECK_THROWS_AS(exact_upper_tail({10, Rational(1), 3, false}), std::invalid_argument);
  CHECK_THROWS_AS(exact_upper_tail({10, Rational(1, 2), 12, false}), std::invalid_argument);
  CHECK_THROWS_AS(exact_upper_tail({10, Rational(1, 2), -1, false}), std::invalid_argument);
}

TEST_CASE("upper bound evaluators match direct formula evaluation") {
  BoundParams params;
  params.trials = 10;
  params.eta = Rational(1, 5);
  CHECK(eval_upper_bound(BoundId::hoeffding_upper, params).value ==
        doctest::Approx(std::exp(-0.8)).epsilon(1e-14));

  params = BoundParams{};
  params.mean = 2.0;
  params.eta = Rational(1);
  CHECK(eval_upper_bound(BoundId::chernoff_eta_le4_upper, params).value ==
        doctest::Approx(std::exp(-0.5)).epsilon(1e-14));
  CHECK(eval_upper_bound(BoundId::chernoff_upper, params).value ==
        doctest::Approx(std::exp(-4.0 * (std::log(2.0) - 1.0))).epsilon(1e-14));

  params = BoundParams{};
  params.mean = 5.0;
  params.delta = 0.5;
  const BoundValue fm = eval_upper_bound(BoundId::four_mean_upper, params);
  CHECK(fm.value == 0.5);
  CHECK(fm.threshold == doctest::Approx(20.0 + 3.0 * std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("lower bound evaluators match direct formula evaluation") {
  BoundParams params;
  params.trials = 10000;
  params.eta = Rational(1, 100);
  CHECK(eval_lower_bound(BoundId::berry_esseen_lower, params) ==
        doctest::Approx(std::exp(-2.0) / 7.0 - 0.01).epsilon(1e-12));

  params.trials = 16;
  params.eta = Rational(1, 8);
  CHECK(eval_lower_bound(BoundId::fair_coin_lower, params) ==
        doctest::Approx(0.2 * std::exp(-4.0)).epsilon(1e-14));

  params.trials = 10;
  params.eta = Rational(1, 10);
  CHECK(eval_lower_bound(BoundId::slud_lower, params) ==
        doctest::Approx(0.25 * std::exp(-0.5)).epsilon(1e-14));
}

TEST_CASE("evaluator preconditions name the violated condition") {
  BoundParams params;
  params.trials = 10;
  params.eta = Rational(-1, 10);
  CHECK_THROWS_WITH_AS(eval_upper_bound(BoundId::hoeffding_upper, params),
                       "hoeffding_upper: eta >= 0 required", std::invalid_argument);
  params.eta = Rational(0);
  params.mean = 1.0;
  CHECK_THROWS_AS(eval_upper_bound(BoundId::chernoff_upper, params), std::invalid_argument);
  params.eta = Rational(5);
  CHECK_THROWS_AS(eval_upper_bound(BoundId::chernoff_eta_le4_upper, params),
                  std::invalid_argument);
  params.delta = 1.5;
  CHECK_THROWS_AS(eval_upper_bound(BoundId::four_mean_upper, params), std::invalid_argument);
  params = BoundParams{};
  params.trials = 10;
  params.eta = Rational(1, 2);  // trials < 1/eta^2 fails only for eta below 1/sqrt(10)
  params.eta = Rational(1, 100);
  CHECK_THROWS_AS(eval_lower_bound(BoundId::berry_esseen_lower, params), std::invalid_argument);
  params.eta = Rational(1, 4);
  CHECK_THROWS_AS(eval_lower_bound(BoundId::fair_coin_lower, params), std::invalid_argument);
  params.eta = Rational(1, 3);
  CHECK_THROWS_AS(eval_lower_bound(BoundId::slud_lower, params), std::invalid_argument);
  params.eta = Rational(1, 7);  // eta*trials not an integer
  CHECK_THROWS_AS(eval_lower_bound(BoundId::fair_coin_lower, params), std::invalid_argument);
}

TEST_CASE("hoeffding audit is clean on the standard grid") {
  const AuditReport report = audit_bound(BoundId::hoeffding_upper, standard_grid(range_ells(4, 64)));
  CHECK(report.violation_count() == 0);
  CHECK(report.points.size() > 100);
}

TEST_CASE("chernoff family audits are clean") {
  AuditGrid grid = standard_grid(range_ells(4, 64));
  grid.etas = {Rational(1, 10), Rational(1, 2), Rational(1), Rational(2), Rational(4), Rational(8)};
  CHECK(audit_bound(BoundId::chernoff_upper, grid).violation_count() == 0);
  const AuditReport le4 = audit_bound(BoundId::chernoff_eta_le4_upper, grid);
  CHECK(le4.violation_count() == 0);
  // eta = 8 grid points must be skipped, not checked
  CHECK(le4.skipped_count() > 0);
  CHECK(audit_bound(BoundId::four_mean_upper, grid).violation_count() == 0);
}

TEST_CASE("berry-esseen audit is clean where admissible") {
  AuditGrid grid;
  grid.ells = {100, 400, 10000};
  grid.etas = {Rational(1, 100), Rational(1, 50), Rational(1, 20), Rational(1, 10)};
  const AuditReport report = audit_bound(BoundId::berry_esseen_lower, grid);
  CHECK(report.violation_count() == 0);
  std::int64_t checked = 0;
  for (const auto& pt : report.points) checked += pt.status == AuditStatus::ok;
  CHECK(checked == 7);  // pairs with l >= 1/eta^2: (1/100,1/50)->1e4 only, 1/20 adds 400, 1/10 all
  CHECK(report.skipped_count() == 5);
}

TEST_CASE("fair-coin audit over integral eta*l is clean, corner included") {
  for (std::int64_t l : {16, 17, 31, 64, 100}) {
    AuditGrid grid;
    grid.ells = {l};
    for (std::int64_t j = 0; j * 8 <= l; ++j) grid.etas.push_back(Rational(j, l));
    const AuditReport report = audit_bound(BoundId::fair_coin_lower, grid);
    CHECK(report.violation_count() == 0);
    CHECK(report.skipped_count() == 0);
  }
  // trivial-eta corner: exact P(U >= 8) for l = 16 dominates 1/5
  AuditGrid corner;
  corner.ells = {16};
  corner.etas = {Rational(0)};
  const AuditReport report = audit_bound(BoundId::fair_coin_lower, corner);
  REQUIRE(report.points.size() == 1);
  CHECK(report.points[0].exact_tail == doctest::Approx(39203.0 / 65536.0).epsilon(1e-13));
  CHECK(report.points[0].bound_value == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(report.points[0].status == AuditStatus::ok);
}

// The strict-event reading of the Slud consequence fails at l = 4 and l = 6
// for mid-range eta: the proof controls the tie-inclusive event, and at these
// sizes the tie carries enough mass to flip the comparison.  The audit must
// find exactly these points and no others on the standard grid.
TEST_CASE("slud audit: strict event has the six known small-even-l violations") {
  AuditGrid grid;
  grid.ells = range_ells(4, 64);
  for (std::int64_t l : {100, 200, 400}) grid.ells.push_back(l);
  grid.etas = {Rational(0), Rational(1, 50), Rational(1, 20), Rational(1, 10), Rational(3, 20),
               Rational(1, 5)};
  const AuditReport report = audit_bound(BoundId::slud_lower, grid);
  std::set<std::pair<std::int64_t, std::string>> expected = {
      {4, "1/10"}, {4, "3/20"}, {4, "1/5"}, {6, "1/10"}, {6, "3/20"}, {6, "1/5"}};
  std::set<std::pair<std::int64_t, std::string>> found;
  for (const auto& pt : report.violations()) found.insert({pt.ell, pt.eta_nominal.str()});
  CHECK(found == expected);

  // hand-checked worst offender
  for (const auto& pt : report.points) {
    if (pt.ell == 6 && pt.eta_nominal == Rational(1, 10)) {
      CHECK(pt.exact_tail == doctest::Approx(0.1792).epsilon(1e-12));
      CHECK(pt.bound_value == doctest::Approx(0.25 * std::exp(-0.3)).epsilon(1e-13));
    }
  }
}

TEST_CASE("slud audit: tie-inclusive event is violation-free") {
  AuditGrid grid;
  grid.ells = range_ells(4, 64);
  for (std::int64_t l : {100, 200, 400}) grid.ells.push_back(l);
  grid.etas = {Rational(0), Rational(1, 50), Rational(1, 20), Rational(1, 10), Rational(3, 20),
               Rational(1, 5)};
  grid.slud_strict = false;
  CHECK(audit_bound(BoundId::slud_lower, grid).violation_count() == 0);
}

TEST_CASE("slud anchor point") {
  // l=10, eta=1/10: exact strict tail P(U < 5) = P(Bin(10, 2/5) >= 6)
  AuditGrid grid;
  grid.ells = {10};
  grid.etas = {Rational(1, 10)};
  const AuditReport report = audit_bound(BoundId::slud_lower, grid);
  REQUIRE(report.points.size() == 1);
  CHECK(report.points[0].exact_tail == doctest::Approx(0.1662386176).epsilon(1e-9));
  CHECK(report.points[0].bound_value == doctest::Approx(0.1516326649).epsilon(1e-9));
  CHECK(report.points[0].status == AuditStatus::ok);
}

TEST_CASE("audit csv has the documented columns") {
  AuditGrid grid;
  grid.ells = {10, 11};
  grid.etas = {Rational(1, 10)};
  grid.ps = {Rational(1, 2)};
  const AuditReport report = audit_bound(BoundId::hoeffding_upper, grid);
  std::ostringstream oss;
  write_audit_csv(report, oss);
  const std::string csv = oss.str();
  CHECK(csv.find("bound_id,ell,p,eta_nominal,eta_discrete,threshold,bound_value,exact_tail,"
                 "margin,status") == 0);
  CHECK(csv.find("hoeffding_upper,10,1/2,1/10,") != std::string::npos);
}

TEST_CASE("bound id round trip") {
  for (BoundId id : {BoundId::hoeffding_upper, BoundId::chernoff_upper,
                     BoundId::chernoff_eta_le4_upper, BoundId::four_mean_upper,
                     BoundId::berry_esseen_lower, BoundId::fair_coin_lower, BoundId::slud_lower})
    CHECK(bound_id_from_string(to_string(id)) == id);
  CHECK_THROWS_AS(bound_id_from_string("nope"), std::invalid_argument);
}

}  // TEST_SUITE
