#include "edgevote/vote_model.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "edgevote/parallel.hpp"
#include "edgevote/rng.hpp"
#include "edgevote/tail_oracle.hpp"

namespace edgevote {

namespace {

void validate_model(const VoteModel& model) {
  for (std::size_t i = 1; i < model.features.size(); ++i)
    if (model.features[i].variable <= model.features[i - 1].variable)
      throw std::invalid_argument("VoteModel: features must be sorted with unique variables");
  if (model.default_label != 0 && model.default_label != 1)
    throw std::invalid_argument("VoteModel: default label must be 0 or 1");
}

int majority(std::int64_t ones, std::int64_t n, int default_label) {
  if (2 * ones > n) return 1;
  if (2 * ones < n) return 0;
  return default_label;
}

}  // namespace

int predict(const VoteModel& model, const std::vector<std::uint8_t>& example) {
  validate_model(model);
  std::int64_t ones = 0;
  for (const Feature& f : model.features) {
    if (f.variable < 0 || f.variable >= static_cast<std::int64_t>(example.size()))
      throw std::out_of_range("predict: feature index outside example");
    const bool v = example[f.variable] != 0;
    ones += f.negated ? !v : v;
  }
  return majority(ones, model.size(), model.default_label);
}

int predict(const VoteModel& model, const Dataset& ds, std::int64_t example) {
  validate_model(model);
  if (example < 0 || example >= ds.example_count)
    throw std::out_of_range("predict: example index out of range");
  std::int64_t ones = 0;
  for (const Feature& f : model.features) {
    if (f.variable < 0 || f.variable >= ds.variable_count)
      throw std::out_of_range("predict: feature index outside dataset");
    const bool v = ds.value(example, f.variable);
    ones += f.negated ? !v : v;
  }
  return majority(ones, model.size(), model.default_label);
}

namespace {

// dense pmf of Bin(n, p); exact tails preserved via log-space evaluation
std::vector<double> binom_pmf_vec(std::int64_t n, const Rational& p) {
  std::vector<double> pmf(n + 1);
  for (std::int64_t j = 0; j <= n; ++j) pmf[j] = binomial_pmf(n, p, j);
  return pmf;
}

std::vector<double> convolve(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double ai = a[i];
    if (ai == 0.0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += ai * b[j];
  }
  return out;
}

// P(correct < n/2) + 1/2 P(correct = n/2) for a correct-count pmf
double error_from_pmf(const std::vector<double>& pmf, std::int64_t n) {
  double err = 0.0;
  for (std::int64_t c = 0; 2 * c < n && c < static_cast<std::int64_t>(pmf.size()); ++c)
    err += pmf[c];
  if (n % 2 == 0 && n / 2 < static_cast<std::int64_t>(pmf.size())) err += 0.5 * pmf[n / 2];
  return std::min(std::max(err, 0.0), 1.0);
}

}  // namespace

double exact_error(const Composition& comp, const Rational& gamma) {
  if (comp.total < 1) throw std::invalid_argument("exact_error: n >= 1 required");
  if (comp.relevant < 0 || comp.misleading < 0 || comp.relevant + comp.misleading > comp.total)
    throw std::invalid_argument("exact_error: k + l <= n required");
  if (gamma.num <= 0 || gamma >= Rational(1, 2))
    throw std::invalid_argument("exact_error: 0 < gamma < 1/2 required");
  const std::int64_t n = comp.total;
  const std::int64_t k = comp.relevant;
  const std::int64_t l = comp.misleading;
  const std::int64_t irr = comp.total - k - l;
  // symmetric agreement distribution about n/2 plus the exact 1/2 tie weight
  if (k == l) return 0.5;

  const Rational agree = Rational(1, 2) + gamma;
  const Rational mislead = Rational(1, 2) - gamma;

  // single binomial group: use the tail oracle directly
  if ((k > 0) + (l > 0) + (irr > 0) == 1) {
    const Rational p = k > 0 ? agree : (l > 0 ? mislead : Rational(1, 2));
    double err;
    if (n % 2 == 0)
      err = exact_lower_tail({n, p, n / 2, false}) + 0.5 * binomial_pmf(n, p, n / 2);
    else
      err = exact_lower_tail({n, p, (n + 1) / 2, false});
    return std::min(std::max(err, 0.0), 1.0);
  }

  struct Group {
    std::int64_t count;
    Rational p;
  };
  std::vector<Group> groups;
  if (k > 0) groups.push_back({k, agree});
  if (l > 0) groups.push_back({l, mislead});
  if (irr > 0) groups.push_back({irr, Rational(1, 2)});
  std::sort(groups.begin(), groups.end(),
            [](const Group& a, const Group& b) { return a.count < b.count; });

  std::vector<double> pmf = binom_pmf_vec(groups[0].count, groups[0].p);
  for (std::size_t i = 1; i < groups.size(); ++i)
    pmf = convolve(pmf, binom_pmf_vec(groups[i].count, groups[i].p));
  return error_from_pmf(pmf, n);
}

double exact_error_hetero(const std::vector<double>& agreement_probs) {
  if (agreement_probs.empty())
    throw std::invalid_argument("exact_error_hetero: empty probability sequence");
  if (agreement_probs.size() > 5000)
    throw std::length_error("exact_error_hetero: capacity is n <= 5000");
  for (double p : agreement_probs)
    if (!(p > 0.0) || !(p < 1.0))
      throw std::invalid_argument("exact_error_hetero: probabilities must be in (0,1)");
  const std::int64_t n = static_cast<std::int64_t>(agreement_probs.size());
  std::vector<double> pmf(n + 1, 0.0);
  pmf[0] = 1.0;
  std::int64_t filled = 0;
  for (double p : agreement_probs) {
    ++filled;
    for (std::int64_t c = filled; c >= 1; --c) pmf[c] = pmf[c] * (1.0 - p) + pmf[c - 1] * p;
    pmf[0] *= 1.0 - p;
  }
  return error_from_pmf(pmf, n);
}

double theorem1_bound(const Composition& comp, double gamma) {
  if (comp.total < 1) throw std::invalid_argument("theorem1_bound: n >= 1 required");
  if (comp.relevant + comp.misleading > comp.total)
    throw std::invalid_argument("theorem1_bound: k + l <= n required");
  if (!(gamma > 0.0) || !(gamma < 0.5))
    throw std::invalid_argument("theorem1_bound: 0 < gamma < 1/2 required");
  const double surplus =
      std::max(static_cast<double>(comp.relevant - comp.misleading), 0.0);
  return std::exp(-2.0 * gamma * gamma * surplus * surplus /
                  static_cast<double>(comp.total));
}

double hetero_bound(std::int64_t n, std::int64_t k, std::int64_t l, double gamma_min,
                    double gamma_max) {
  if (n < 1 || k < 0 || l < 0 || k + l > n)
    throw std::invalid_argument("hetero_bound: need n >= 1, k + l <= n");
  if (!(gamma_min > 0.0) || gamma_min > gamma_max || !(gamma_max < 0.5))
    throw std::invalid_argument("hetero_bound: 0 < gamma_min <= gamma_max < 1/2 required");
  const double surplus = std::max(gamma_min * static_cast<double>(k) -
                                      gamma_max * static_cast<double>(l),
                                  0.0);
  return std::exp(-2.0 * surplus * surplus / static_cast<double>(n));
}

double dependence_bound(std::int64_t n, std::int64_t k, std::int64_t r, double gamma, double c) {
  if (n < 1 || k < 0 || k > n) throw std::invalid_argument("dependence_bound: 0 <= k <= n");
  if (r < 0 || 2 * r > n) throw std::invalid_argument("dependence_bound: 0 <= r <= n/2 required");
  if (!(gamma > 0.0) || !(gamma < 0.5))
    throw std::invalid_argument("dependence_bound: 0 < gamma < 1/2 required");
  const double kk = static_cast<double>(k);
  const double value = c * static_cast<double>(r + 1) *
                       std::exp(-2.0 * gamma * gamma * kk * kk /
                                (static_cast<double>(n) * static_cast<double>(r + 1)));
  return std::min(value, 1.0);
}

McEstimate mc_error(const VoteModel& model, const SourceSpec& spec, std::int64_t trials,
                    std::uint64_t seed) {
  validate_model(model);
  if (trials < 1) throw std::invalid_argument("mc_error: trials >= 1 required");
  for (const Feature& f : model.features)
    if (f.variable < 0 || f.variable >= spec.total_variables)
      throw std::out_of_range("mc_error: feature index outside source");

  struct FeatureDraw {
    Rational agree_prob;
    std::uint64_t stream;   // value or block stream
    std::int64_t counter;   // variable or block id
    bool negated;
  };
  std::vector<FeatureDraw> draws;
  draws.reserve(model.features.size());
  for (const Feature& f : model.features) {
    FeatureDraw d;
    d.agree_prob = spec.agreement_prob(f.variable);
    const bool clique = spec.clique_r > 0 && spec.is_relevant(f.variable);
    d.stream = clique ? kStreamMcBlock : kStreamMc;
    d.counter = clique ? spec.block_of(f.variable) : f.variable;
    d.negated = f.negated;
    draws.push_back(d);
  }

  const int workers = worker_count();
  std::vector<std::int64_t> errors_per_worker(workers, 0);
  const std::int64_t chunk = (trials + workers - 1) / workers;
  parallel_for(workers, [&](std::int64_t w) {
    const std::int64_t lo = w * chunk;
    const std::int64_t hi = std::min(trials, lo + chunk);
    std::int64_t errs = 0;
    for (std::int64_t t = lo; t < hi; ++t) {
      const int label = fair_bit(mix(seed, kStreamLabel, t)) ? 1 : 0;
      std::int64_t ones = 0;
      for (const FeatureDraw& d : draws) {
        const bool agree = bernoulli_bit(mix(seed, d.stream, t, d.counter), d.agree_prob);
        const bool value = agree ? (label == 1) : (label == 0);
        ones += d.negated ? !value : value;
      }
      errs += majority(ones, model.size(), model.default_label) != label;
    }
    errors_per_worker[w] = errs;
  });
  std::int64_t errors = 0;
  for (std::int64_t e : errors_per_worker) errors += e;
  McEstimate est;
  est.estimate = static_cast<double>(errors) / static_cast<double>(trials);
  est.std_error = std::sqrt(est.estimate * (1.0 - est.estimate) / static_cast<double>(trials));
  return est;
}

CompositionReport composition_of(const VoteModel& model, const SourceSpec& spec) {
  validate_model(model);
  CompositionReport report;
  report.comp.total = model.size();
  for (const Feature& f : model.features) {
    if (f.variable < 0 || f.variable >= spec.total_variables)
      throw std::out_of_range("composition_of: feature index outside source");
    const Rational edge = spec.edge_of(f.variable);
    if (edge.is_zero()) continue;
    const bool positive_polarity = edge.num > 0;
    if (positive_polarity != f.negated)
      ++report.comp.relevant;  // sign matches polarity
    else
      ++report.comp.misleading;
  }
  if (report.comp.total > 0) {
    const double n = static_cast<double>(report.comp.total);
    report.exclusivity =
        static_cast<double>(report.comp.relevant + report.comp.misleading) / n;
    report.relevant_fraction = static_cast<double>(report.comp.relevant) / n;
    report.irrelevant_fraction = static_cast<double>(report.comp.irrelevant()) / n;
  }
  return report;
}

std::vector<double> feature_agreement_probs(const VoteModel& model, const SourceSpec& spec) {
  validate_model(model);
  std::vector<double> probs;
  probs.reserve(model.features.size());
  for (const Feature& f : model.features) {
    const Rational p = spec.agreement_prob(f.variable);
    probs.push_back(f.negated ? 1.0 - p.to_double() : p.to_double());
  }
  return probs;
}

}  // namespace edgevote
