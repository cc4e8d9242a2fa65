#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "edgevote/rational.hpp"

namespace edgevote {

// Exact binomial tails plus evaluators and auditors for the seven tail
// inequalities used by the voting analysis.  All bound evaluators are pure;
// the auditor compares each bound against the exact tail of the event it
// claims to control and reports every point.

// Event over U ~ Bin(trials, success_prob): U >= threshold, or U > threshold
// when strict is set.  Thresholds are integers derived from exact rational
// arithmetic; success_prob stays rational until pmf evaluation.
struct TailQuery {
  std::int64_t trials = 1;
  Rational success_prob{1, 2};
  std::int64_t threshold = 0;
  bool strict = false;
};

// P(event).  Log-space pmf in extended precision, compensated summation
// smallest-to-largest from the mode outward; absolute error <= 1e-12 for
// trials <= 1e5.
double exact_upper_tail(const TailQuery& q);

// P(not event), summed independently over the complementary range (not 1-x).
double exact_lower_tail(const TailQuery& q);

// single pmf value, exposed for the error-model convolutions
double binomial_pmf(std::int64_t trials, const Rational& p, std::int64_t count);

enum class BoundId {
  hoeffding_upper,
  chernoff_upper,
  chernoff_eta_le4_upper,
  four_mean_upper,
  berry_esseen_lower,
  fair_coin_lower,
  slud_lower,
};

bool is_upper_bound(BoundId id);
std::string to_string(BoundId id);
BoundId bound_id_from_string(const std::string& name);

// Parameter bag for the evaluators; each bound reads the fields it needs.
//   hoeffding:      trials, eta (additive)
//   chernoff(+le4): mean E(U), eta (multiplicative)
//   four_mean:      mean E(U), delta
//   berry_esseen:   trials, eta (additive, p = 1/2)
//   fair_coin:      trials, eta (additive, p = 1/2, eta*trials integer)
//   slud:           trials, eta (p = 1/2 + eta)
struct BoundParams {
  std::int64_t trials = 0;
  double mean = 0.0;
  Rational eta{0, 1};
  double delta = 0.0;
};

// value is the probability bound; threshold is set for four_mean_upper
// (the count 4E(U) + 3 ln(1/delta) above which the tail has mass < delta).
struct BoundValue {
  double value = 0.0;
  double threshold = 0.0;
};

BoundValue eval_upper_bound(BoundId id, const BoundParams& params);
double eval_lower_bound(BoundId id, const BoundParams& params);

struct AuditGrid {
  std::vector<std::int64_t> ells;
  std::vector<Rational> etas;
  std::vector<Rational> ps;      // upper-bound grids; ignored by the p=1/2 bounds
  std::vector<double> deltas;    // four_mean_upper only
  // Slud event: strict P(U/l < 1/2) when true (default), the tie-inclusive
  // P(U <= floor(l/2)) proved in the source inequality when false.
  bool slud_strict = true;
};

enum class AuditStatus { ok, violation, skipped };

struct AuditPoint {
  BoundId id;
  std::int64_t ell = 0;
  Rational p{1, 2};
  Rational eta_nominal{0, 1};
  double delta = 0.0;
  double eta_discrete = 0.0;  // realized threshold offset after integer rounding
  std::int64_t threshold = 0;
  double bound_value = 0.0;
  double exact_tail = 0.0;
  double margin = 0.0;  // bound-exact for upper bounds, exact-bound for lower
  AuditStatus status = AuditStatus::ok;
  std::string skip_reason;
};

struct AuditReport {
  BoundId id;
  std::vector<AuditPoint> points;

  std::size_t violation_count() const;
  std::size_t skipped_count() const;
  std::vector<AuditPoint> violations() const;
  // largest margin/bound ratio among checked points (how loose the bound is)
  double max_relative_slack() const;
};

// Evaluates the bound on every admissible grid point and compares it against
// the exact tail of the matching event: upper bounds must dominate the tail,
// lower bounds must stay below it.  Inadmissible points are recorded as
// skipped with the violated precondition named.
AuditReport audit_bound(BoundId id, const AuditGrid& grid);

// bound_id, ell, p, eta_nominal, eta_discrete, threshold, bound_value,
// exact_tail, margin, status
void write_audit_csv(const AuditReport& report, std::ostream& out);

}  // namespace edgevote
