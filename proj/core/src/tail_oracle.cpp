#include "edgevote/tail_oracle.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace edgevote {

namespace {

constexpr std::int64_t kMaxTrials = 1000000;

void validate(const TailQuery& q) {
  if (q.trials < 1 || q.trials > kMaxTrials)
    throw std::invalid_argument("TailQuery: trials must be in [1, 1e6]");
  if (q.success_prob.num <= 0 || q.success_prob >= Rational(1))
    throw std::invalid_argument("TailQuery: success_prob must be in (0,1)");
  if (q.threshold < 0 || q.threshold > q.trials + 1)
    throw std::invalid_argument("TailQuery: threshold must be in [0, trials+1]");
}

long double log_pmf(std::int64_t l, std::int64_t j, long double lp, long double lq) {
  return std::lgamma(static_cast<long double>(l + 1)) -
         std::lgamma(static_cast<long double>(j + 1)) -
         std::lgamma(static_cast<long double>(l - j + 1)) +
         static_cast<long double>(j) * lp + static_cast<long double>(l - j) * lq;
}

// Neumaier-compensated sum of pmf(j) for j in [lo, hi], iterating each
// monotone run from its small end so additions go smallest-to-largest.
long double sum_pmf_range(std::int64_t l, const Rational& p, std::int64_t lo, std::int64_t hi) {
  if (lo < 0) lo = 0;
  if (hi > l) hi = l;
  if (lo > hi) return 0.0L;
  const long double lp = std::log(static_cast<long double>(p.num)) -
                         std::log(static_cast<long double>(p.den));
  const long double lq = std::log(static_cast<long double>(p.den - p.num)) -
                         std::log(static_cast<long double>(p.den));
  // pmf is unimodal with mode at floor((l+1)p)
  const std::int64_t mode = p.floor_mul(l + 1);

  long double sum = 0.0L, comp = 0.0L;
  auto add = [&sum, &comp](long double x) {
    const long double t = sum + x;
    if (std::fabs(sum) >= std::fabs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  };

  const std::int64_t up_hi = std::min(hi, mode - 1);
  for (std::int64_t j = lo; j <= up_hi; ++j) add(std::exp(log_pmf(l, j, lp, lq)));
  const std::int64_t down_lo = std::max(lo, mode);
  for (std::int64_t j = hi; j >= down_lo; --j) add(std::exp(log_pmf(l, j, lp, lq)));
  return sum + comp;
}

std::int64_t effective_threshold(const TailQuery& q) {
  return q.strict ? q.threshold + 1 : q.threshold;
}

double clamp01(long double x) {
  if (x < 0.0L) return 0.0;
  if (x > 1.0L) return 1.0;
  return static_cast<double>(x);
}

}  // namespace

double exact_upper_tail(const TailQuery& q) {
  validate(q);
  const std::int64_t t = effective_threshold(q);
  if (t <= 0) return 1.0;
  if (t > q.trials) return 0.0;
  return clamp01(sum_pmf_range(q.trials, q.success_prob, t, q.trials));
}

double exact_lower_tail(const TailQuery& q) {
  validate(q);
  const std::int64_t t = effective_threshold(q);
  if (t <= 0) return 0.0;
  if (t > q.trials) return 1.0;
  return clamp01(sum_pmf_range(q.trials, q.success_prob, 0, t - 1));
}

double binomial_pmf(std::int64_t trials, const Rational& p, std::int64_t count) {
  if (trials < 0 || count < 0 || count > trials) return 0.0;
  if (trials == 0) return 1.0;
  if (p.num <= 0 || p >= Rational(1))
    throw std::invalid_argument("binomial_pmf: p must be in (0,1)");
  const long double lp = std::log(static_cast<long double>(p.num)) -
                         std::log(static_cast<long double>(p.den));
  const long double lq = std::log(static_cast<long double>(p.den - p.num)) -
                         std::log(static_cast<long double>(p.den));
  return static_cast<double>(std::exp(log_pmf(trials, count, lp, lq)));
}

bool is_upper_bound(BoundId id) {
  switch (id) {
    case BoundId::hoeffding_upper:
    case BoundId::chernoff_upper:
    case BoundId::chernoff_eta_le4_upper:
    case BoundId::four_mean_upper:
      return true;
    default:
      return false;
  }
}

std::string to_string(BoundId id) {
  switch (id) {
    case BoundId::hoeffding_upper: return "hoeffding_upper";
    case BoundId::chernoff_upper: return "chernoff_upper";
    case BoundId::chernoff_eta_le4_upper: return "chernoff_eta_le4_upper";
    case BoundId::four_mean_upper: return "four_mean_upper";
    case BoundId::berry_esseen_lower: return "berry_esseen_lower";
    case BoundId::fair_coin_lower: return "fair_coin_lower";
    case BoundId::slud_lower: return "slud_lower";
  }
  return "unknown";
}

BoundId bound_id_from_string(const std::string& name) {
  for (BoundId id : {BoundId::hoeffding_upper, BoundId::chernoff_upper,
                     BoundId::chernoff_eta_le4_upper, BoundId::four_mean_upper,
                     BoundId::berry_esseen_lower, BoundId::fair_coin_lower,
                     BoundId::slud_lower}) {
    if (to_string(id) == name) return id;
  }
  throw std::invalid_argument("unknown bound id: " + name);
}

BoundValue eval_upper_bound(BoundId id, const BoundParams& params) {
  const double eta = params.eta.to_double();
  switch (id) {
    case BoundId::hoeffding_upper: {
      if (params.trials < 1) throw std::invalid_argument("hoeffding_upper: trials >= 1 required");
      if (eta < 0.0) throw std::invalid_argument("hoeffding_upper: eta >= 0 required");
      return {std::exp(-2.0 * eta * eta * static_cast<double>(params.trials)), 0.0};
    }
    case BoundId::chernoff_upper: {
      if (!(eta > 0.0)) throw std::invalid_argument("chernoff_upper: eta > 0 required");
      if (!(params.mean > 0.0)) throw std::invalid_argument("chernoff_upper: mean > 0 required");
      return {std::exp(-(1.0 + eta) * params.mean * (std::log(1.0 + eta) - 1.0)), 0.0};
    }
    case BoundId::chernoff_eta_le4_upper: {
      if (eta < 0.0 || eta > 4.0)
        throw std::invalid_argument("chernoff_eta_le4_upper: 0 <= eta <= 4 required");
      if (!(params.mean > 0.0))
        throw std::invalid_argument("chernoff_eta_le4_upper: mean > 0 required");
      return {std::exp(-eta * eta * params.mean / 4.0), 0.0};
    }
    case BoundId::four_mean_upper: {
      if (!(params.delta > 0.0) || params.delta > 1.0)
        throw std::invalid_argument("four_mean_upper: 0 < delta <= 1 required");
      if (params.mean < 0.0) throw std::invalid_argument("four_mean_upper: mean >= 0 required");
      const double threshold = 4.0 * params.mean + 3.0 * std::log(1.0 / params.delta);
      return {params.delta, threshold};
    }
    default:
      throw std::invalid_argument(to_string(id) + " is not an upper bound");
  }
}

double eval_lower_bound(BoundId id, const BoundParams& params) {
  const double eta = params.eta.to_double();
  const double l = static_cast<double>(params.trials);
  switch (id) {
    case BoundId::berry_esseen_lower: {
      if (!(eta > 0.0)) throw std::invalid_argument("berry_esseen_lower: eta > 0 required");
      if (l < 1.0 / (eta * eta))
        throw std::invalid_argument("berry_esseen_lower: trials >= 1/eta^2 required");
      return std::exp(-2.0 * eta * eta * l) / (7.0 * eta * std::sqrt(l)) - 1.0 / std::sqrt(l);
    }
    case BoundId::fair_coin_lower: {
      if (eta < 0.0 || params.eta > Rational(1, 8))
        throw std::invalid_argument("fair_coin_lower: 0 <= eta <= 1/8 required");
      if (params.trials % params.eta.den != 0)
        throw std::invalid_argument("fair_coin_lower: eta * trials must be an integer");
      return 0.2 * std::exp(-16.0 * eta * eta * l);
    }
    case BoundId::slud_lower: {
      if (eta < 0.0 || params.eta > Rational(1, 5))
        throw std::invalid_argument("slud_lower: 0 <= eta <= 1/5 required");
      return 0.25 * std::exp(-5.0 * eta * eta * l);
    }
    default:
      throw std::invalid_argument(to_string(id) + " is not a lower bound");
  }
}

namespace {

struct PointSpec {
  TailQuery query;
  double bound = 0.0;
  double eta_discrete = 0.0;
  bool skipped = false;
  std::string skip_reason;
};

PointSpec skip(const std::string& why) {
  PointSpec s;
  s.skipped = true;
  s.skip_reason = why;
  return s;
}

// An event threshold past the support means the tail is empty; the query
// stays valid with probability zero.
std::int64_t clamp_threshold(std::int64_t t, std::int64_t ell) {
  if (t < 0) return 0;
  if (t > ell + 1) return ell + 1;
  return t;
}

// Builds the audited event and bound value for one grid point.  Threshold
// conventions: ">= real threshold" rounds up, "> real threshold" takes
// floor+1; both computed in exact rational arithmetic.
PointSpec make_point(BoundId id, std::int64_t ell, const Rational& p, const Rational& eta,
                     double delta, bool slud_strict) {
  PointSpec s;
  BoundParams params;
  params.trials = ell;
  params.eta = eta;
  params.delta = delta;
  switch (id) {
    case BoundId::hoeffding_upper: {
      const Rational edge = p + eta;
      const std::int64_t t = clamp_threshold(edge.ceil_mul(ell), ell);
      s.query = {ell, p, t, false};
      s.bound = eval_upper_bound(id, params).value;
      s.eta_discrete = static_cast<double>(t) / static_cast<double>(ell) - p.to_double();
      return s;
    }
    case BoundId::chernoff_upper:
    case BoundId::chernoff_eta_le4_upper: {
      if (id == BoundId::chernoff_upper && eta.is_zero()) return skip("eta > 0 required");
      if (id == BoundId::chernoff_eta_le4_upper && eta > Rational(4))
        return skip("eta <= 4 required");
      const Rational mean = p * Rational(ell);
      const Rational real_threshold = (Rational(1) + eta) * mean;
      const std::int64_t t = clamp_threshold(real_threshold.floor_mul(1) + 1, ell);  // U > x
      params.mean = mean.to_double();
      s.query = {ell, p, t, false};
      s.bound = eval_upper_bound(id, params).value;
      s.eta_discrete = static_cast<double>(t) / mean.to_double() - 1.0;
      return s;
    }
    case BoundId::four_mean_upper: {
      if (!(delta > 0.0) || delta > 1.0) return skip("0 < delta <= 1 required");
      params.mean = p.to_double() * static_cast<double>(ell);
      const BoundValue bv = eval_upper_bound(id, params);
      const std::int64_t t =
          clamp_threshold(static_cast<std::int64_t>(std::floor(bv.threshold)) + 1, ell);
      s.query = {ell, p, t, false};
      s.bound = bv.value;
      s.eta_discrete = std::numeric_limits<double>::quiet_NaN();
      return s;
    }
    case BoundId::berry_esseen_lower: {
      if (p != Rational(1, 2)) return skip("p = 1/2 required");
      if (eta.is_zero()) return skip("eta > 0 required");
      if (Rational(ell) * eta * eta < Rational(1)) return skip("trials >= 1/eta^2 required");
      const Rational edge = Rational(1, 2) + eta;
      const std::int64_t t = clamp_threshold(edge.ceil_mul(ell), ell);
      s.query = {ell, p, t, false};
      s.bound = eval_lower_bound(id, params);
      s.eta_discrete = static_cast<double>(t) / static_cast<double>(ell) - 0.5;
      return s;
    }
    case BoundId::fair_coin_lower: {
      if (p != Rational(1, 2)) return skip("p = 1/2 required");
      if (eta > Rational(1, 8)) return skip("eta <= 1/8 required");
      if (ell % eta.den != 0) return skip("eta * trials must be an integer");
      const Rational edge = Rational(1, 2) + eta;
      const std::int64_t t = clamp_threshold(edge.ceil_mul(ell), ell);
      s.query = {ell, p, t, false};
      s.bound = eval_lower_bound(id, params);
      s.eta_discrete = static_cast<double>(t) / static_cast<double>(ell) - 0.5;
      return s;
    }
    case BoundId::slud_lower: {
      if (eta > Rational(1, 5)) return skip("eta <= 1/5 required");
      // P(U/l < 1/2) for P(U_i=1) = 1/2+eta equals the upper tail of the
      // complementary binomial B ~ Bin(l, 1/2-eta) above l/2.
      const Rational pc = Rational(1, 2) - eta;
      const std::int64_t t =
          slud_strict ? Rational(1, 2).floor_mul(ell) + 1 : Rational(1, 2).ceil_mul(ell);
      s.query = {ell, pc, t, false};
      s.bound = eval_lower_bound(id, params);
      s.eta_discrete = static_cast<double>(t) / static_cast<double>(ell) - pc.to_double();
      return s;
    }
  }
  return skip("unhandled bound");
}

}  // namespace

std::size_t AuditReport::violation_count() const {
  std::size_t n = 0;
  for (const auto& pt : points) n += pt.status == AuditStatus::violation;
  return n;
}

std::size_t AuditReport::skipped_count() const {
  std::size_t n = 0;
  for (const auto& pt : points) n += pt.status == AuditStatus::skipped;
  return n;
}

std::vector<AuditPoint> AuditReport::violations() const {
  std::vector<AuditPoint> v;
  for (const auto& pt : points)
    if (pt.status == AuditStatus::violation) v.push_back(pt);
  return v;
}

double AuditReport::max_relative_slack() const {
  double slack = 0.0;
  for (const auto& pt : points) {
    if (pt.status != AuditStatus::ok) continue;
    const double denom = std::max(std::fabs(pt.bound_value), 1e-300);
    slack = std::max(slack, pt.margin / denom);
  }
  return slack;
}

AuditReport audit_bound(BoundId id, const AuditGrid& grid) {
  AuditReport report;
  report.id = id;
  const bool needs_p = id == BoundId::hoeffding_upper || id == BoundId::chernoff_upper ||
                       id == BoundId::chernoff_eta_le4_upper || id == BoundId::four_mean_upper;
  const std::vector<Rational> ps =
      needs_p && !grid.ps.empty() ? grid.ps : std::vector<Rational>{Rational(1, 2)};
  const std::vector<double> deltas =
      id == BoundId::four_mean_upper ? grid.deltas : std::vector<double>{0.0};
  const std::vector<Rational> etas =
      id == BoundId::four_mean_upper ? std::vector<Rational>{Rational(0)} : grid.etas;

  for (std::int64_t ell : grid.ells) {
    for (const Rational& p : ps) {
      for (const Rational& eta : etas) {
        for (double delta : deltas) {
          AuditPoint pt;
          pt.id = id;
          pt.ell = ell;
          pt.p = id == BoundId::slud_lower ? Rational(1, 2) + eta : p;
          pt.eta_nominal = eta;
          pt.delta = delta;
          PointSpec spec = make_point(id, ell, p, eta, delta, grid.slud_strict);
          if (spec.skipped) {
            pt.status = AuditStatus::skipped;
            pt.skip_reason = spec.skip_reason;
            report.points.push_back(pt);
            continue;
          }
          pt.threshold = spec.query.threshold;
          pt.eta_discrete = spec.eta_discrete;
          pt.bound_value = spec.bound;
          pt.exact_tail = exact_upper_tail(spec.query);
          pt.margin = is_upper_bound(id) ? pt.bound_value - pt.exact_tail
                                         : pt.exact_tail - pt.bound_value;
          pt.status = pt.margin >= 0.0 ? AuditStatus::ok : AuditStatus::violation;
          report.points.push_back(pt);
        }
      }
    }
  }
  return report;
}

void write_audit_csv(const AuditReport& report, std::ostream& out) {
  out << "bound_id,ell,p,eta_nominal,eta_discrete,threshold,bound_value,exact_tail,margin,status\n";
  char buf[512];
  for (const auto& pt : report.points) {
    const char* status = pt.status == AuditStatus::ok         ? "ok"
                         : pt.status == AuditStatus::violation ? "violation"
                                                                : "skipped";
    if (pt.status == AuditStatus::skipped) {
      std::snprintf(buf, sizeof(buf), "%s,%lld,%s,%s,,,,,,%s\n", to_string(pt.id).c_str(),
                    static_cast<long long>(pt.ell), pt.p.str().c_str(),
                    pt.eta_nominal.str().c_str(), status);
    } else {
      std::snprintf(buf, sizeof(buf), "%s,%lld,%s,%s,%.17g,%lld,%.17g,%.17g,%.17g,%s\n",
                    to_string(pt.id).c_str(), static_cast<long long>(pt.ell), pt.p.str().c_str(),
                    pt.eta_nominal.str().c_str(), pt.eta_discrete,
                    static_cast<long long>(pt.threshold), pt.bound_value, pt.exact_tail,
                    pt.margin, status);
    }
    out << buf;
  }
}

}  // namespace edgevote
