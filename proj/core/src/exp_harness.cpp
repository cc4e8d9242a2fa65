#include "edgevote/exp_harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "edgevote/parallel.hpp"
#include "edgevote/rng.hpp"

namespace edgevote {

namespace {

void validate_config(const ExperimentConfig& config) {
  if (config.example_count < 1) throw std::invalid_argument("run_sweep: m >= 1 required");
  if (config.replicates < 1) throw std::invalid_argument("run_sweep: replicates >= 1 required");
  if (config.betas.empty()) throw std::invalid_argument("run_sweep: empty beta grid");
  for (std::size_t i = 1; i < config.betas.size(); ++i)
    if (!(config.betas[i - 1] < config.betas[i]))
      throw std::invalid_argument("run_sweep: beta grid must be strictly ascending");
  if (config.error_mode == ErrorMode::exact && config.source.clique_r > 0)
    throw std::invalid_argument(
        "run_sweep: exact error needs an independent source; use mc mode for cliques");
  if (config.error_mode == ErrorMode::mc && config.trials < 1)
    throw std::invalid_argument("run_sweep: trials >= 1 required in mc mode");
}

struct GammaRange {
  double min_mag = 0.0;
  double max_mag = 0.0;
};

GammaRange edge_range(const SourceSpec& spec) {
  GammaRange r;
  bool first = true;
  for (const auto& e : spec.edges) {
    const double mag = std::fabs(e.to_double());
    if (first) {
      r.min_mag = r.max_mag = mag;
      first = false;
    } else {
      r.min_mag = std::min(r.min_mag, mag);
      r.max_mag = std::max(r.max_mag, mag);
    }
  }
  return r;
}

double exact_error_for(const VoteModel& model, const SourceSpec& spec,
                       const CompositionReport& rep) {
  if (model.size() == 0) return 0.5;  // default-label classifier vs the fair prior
  if (spec.homogeneous()) return exact_error(rep.comp, spec.gamma_magnitude());
  return exact_error_hetero(feature_agreement_probs(model, spec));
}

}  // namespace

std::vector<ExperimentRecord> run_sweep(const ExperimentConfig& config) {
  validate_config(config);
  const std::int64_t reps = config.replicates;
  const std::int64_t nbeta = static_cast<std::int64_t>(config.betas.size());
  const GammaRange gr = edge_range(config.source);
  const bool homogeneous = config.source.homogeneous();
  const std::int64_t total_n = config.source.total_variables;
  const std::int64_t total_k = config.source.relevant_count();

  std::vector<ExperimentRecord> records(reps * nbeta);
  parallel_for(reps, [&](std::int64_t rep) {
    const std::uint64_t rep_seed = mix(config.master_seed, kStreamReplicate, rep);
    const Dataset ds = draw_dataset(config.source, config.example_count, rep_seed);
    const EdgeTable edges = empirical_edges(ds);
    for (std::int64_t bi = 0; bi < nbeta; ++bi) {
      const Rational& beta = config.betas[bi];
      const VoteModel model = config.positive_only ? select_positive_model(edges, beta)
                                                   : select_model(edges, beta);
      const CompositionReport rep_report = composition_of(model, config.source);
      ExperimentRecord& rec = records[rep * nbeta + bi];
      rec.replicate = rep;
      rec.beta = beta;
      rec.model_size = rep_report.comp.total;
      rec.relevant = rep_report.comp.relevant;
      rec.misleading = rep_report.comp.misleading;
      rec.irrelevant = rep_report.comp.irrelevant();
      rec.exclusivity = rep_report.exclusivity;

      if (config.error_mode == ErrorMode::exact) {
        rec.error = exact_error_for(model, config.source, rep_report);
        rec.error_se = 0.0;
      } else {
        const McEstimate mc =
            mc_error(model, config.source, config.trials, mix(config.master_seed, kStreamMc, rep, bi));
        rec.error = mc.estimate;
        rec.error_se = mc.std_error;
      }

      if (rec.model_size > 0) {
        rec.t1_bound = homogeneous
                           ? theorem1_bound(rep_report.comp, gr.min_mag)
                           : hetero_bound(rec.model_size, rec.relevant, rec.misleading,
                                          gr.min_mag, gr.max_mag);
      }
      const double gamma = gr.min_mag;
      const double beta_d = beta.to_double();
      rec.t2_bound = beta_d <= gamma
                         ? theorem2_bound(total_n, total_k, gamma, config.example_count, beta_d)
                               .finite_form
                         : 1.0;
      if (beta_d < gamma) {
        const Theorem3Bound t3 =
            theorem3_bound(total_n, total_k, gamma, config.example_count, beta_d / gamma);
        rec.t3_bound = t3.applicable ? t3.bound : 1.0;
      } else {
        rec.t3_bound = 1.0;
      }
    }
  });
  return records;
}

void write_records_csv(const std::vector<ExperimentRecord>& records, std::ostream& out) {
  out << "replicate,beta_num,beta_den,n,k,l,irrelevant,exclusivity,error,error_se,"
         "t1_bound,t2_bound,t3_bound\n";
  char buf[512];
  for (const auto& r : records) {
    std::snprintf(buf, sizeof(buf),
                  "%lld,%lld,%lld,%lld,%lld,%lld,%lld,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  static_cast<long long>(r.replicate), static_cast<long long>(r.beta.num),
                  static_cast<long long>(r.beta.den), static_cast<long long>(r.model_size),
                  static_cast<long long>(r.relevant), static_cast<long long>(r.misleading),
                  static_cast<long long>(r.irrelevant), r.exclusivity, r.error, r.error_se,
                  r.t1_bound, r.t2_bound, r.t3_bound);
    out << buf;
  }
}

ExperimentConfig fig2_config(std::uint64_t seed) {
  ExperimentConfig config;
  config.source = make_spec(100000, 1000, Rational(1, 10), Polarity::half_half);
  config.example_count = 100;
  config.betas.reserve(31);
  for (int j = 0; j <= 30; ++j) config.betas.push_back(Rational(j, 100));
  config.replicates = 1;
  config.master_seed = seed;
  config.error_mode = ErrorMode::exact;
  return config;
}

Fig2Summary repro_fig2(std::uint64_t seed) {
  Fig2Summary summary;
  summary.seed = seed;
  summary.records = run_sweep(fig2_config(seed));

  const ExperimentRecord* best = nullptr;
  for (const auto& r : summary.records)
    if (best == nullptr || r.error < best->error) best = &r;
  summary.best_beta = best->beta;
  summary.best_model_size = best->model_size;
  summary.best_error = best->error;
  summary.best_irrelevant_fraction =
      best->model_size > 0
          ? static_cast<double>(best->irrelevant) / static_cast<double>(best->model_size)
          : 0.0;

  double min_low = 1.0;
  std::int64_t low_count = 0;
  for (const auto& r : summary.records) {
    const double irr_frac =
        r.model_size > 0 ? static_cast<double>(r.irrelevant) / static_cast<double>(r.model_size)
                         : 0.0;
    if (irr_frac < 0.25) {
      ++low_count;
      min_low = std::min(min_low, r.error);
    }
  }
  summary.low_irrelevant_models = low_count;
  summary.min_error_low_irrelevant = low_count > 0 ? min_low : 1.0;
  return summary;
}

std::vector<ExclusivityReport> exclusivity_profile(const std::vector<Rational>& gammas,
                                                   std::int64_t replicates, std::uint64_t seed) {
  if (replicates < 1) throw std::invalid_argument("exclusivity_profile: replicates >= 1");
  std::vector<ExclusivityReport> reports;
  reports.reserve(gammas.size());
  for (std::size_t gi = 0; gi < gammas.size(); ++gi) {
    const Rational& gamma = gammas[gi];
    ExclusivityReport report;
    report.regime = regime_params(gamma.to_double());
    report.replicates = replicates;
    report.beta_inclusive = Rational(gamma.num, 2 * gamma.den);

    const std::int64_t m = report.regime.example_count;
    // smallest agreement count whose edge reaches beta*, as an exact rational
    const std::int64_t t_star = static_cast<std::int64_t>(
        std::ceil(static_cast<double>(m) * (0.5 + report.regime.beta_star)));
    report.beta_exclusive_effective = Rational(2 * t_star - m, 2 * m);

    const SourceSpec spec =
        make_spec(report.regime.total_variables, report.regime.relevant_count, gamma,
                  Polarity::all_positive);

    struct Row {
      double lambda_inc, lambda_exc, err_inc, err_exc;
      bool q_inc, q_exc;
    };
    std::vector<Row> rows(replicates);
    parallel_for(replicates, [&](std::int64_t rep) {
      const std::uint64_t rep_seed = mix(seed, kStreamReplicate, gi, rep);
      const Dataset ds = draw_dataset(spec, m, rep_seed);
      const EdgeTable edges = empirical_edges(ds);

      const VoteModel inclusive = select_model(edges, report.beta_inclusive);
      const VoteModel exclusive = select_positive_model(edges, report.beta_exclusive_effective);
      const CompositionReport inc_rep = composition_of(inclusive, spec);
      const CompositionReport exc_rep = composition_of(exclusive, spec);

      Row& row = rows[rep];
      row.lambda_inc = inc_rep.exclusivity;
      row.lambda_exc = exc_rep.exclusivity;
      row.err_inc = exact_error_for(inclusive, spec, inc_rep);
      row.err_exc = exact_error_for(exclusive, spec, exc_rep);
      row.q_inc = inclusive.size() > 0 &&
                  rank_threshold(edges, inclusive.size()).to_double() >= report.regime.beta_star;
      row.q_exc = exclusive.size() > 0 &&
                  rank_threshold(edges, exclusive.size()).to_double() >= report.regime.beta_star;
    });

    double sum_li = 0, sum_le = 0, sum_ei = 0, sum_ee = 0, sq_ei = 0, sq_ee = 0;
    std::int64_t qi = 0, qe = 0;
    for (const Row& row : rows) {
      sum_li += row.lambda_inc;
      sum_le += row.lambda_exc;
      sum_ei += row.err_inc;
      sum_ee += row.err_exc;
      sq_ei += row.err_inc * row.err_inc;
      sq_ee += row.err_exc * row.err_exc;
      qi += row.q_inc;
      qe += row.q_exc;
    }
    const double n = static_cast<double>(replicates);
    report.lambda_inclusive = sum_li / n;
    report.lambda_exclusive = sum_le / n;
    report.err_inclusive = sum_ei / n;
    report.err_exclusive = sum_ee / n;
    if (replicates > 1) {
      report.err_inclusive_se =
          std::sqrt(std::max(sq_ei / n - report.err_inclusive * report.err_inclusive, 0.0) /
                    (n - 1.0));
      report.err_exclusive_se =
          std::sqrt(std::max(sq_ee / n - report.err_exclusive * report.err_exclusive, 0.0) /
                    (n - 1.0));
    }
    report.q_inclusive = static_cast<double>(qi) / n;
    report.q_exclusive = static_cast<double>(qe) / n;
    reports.push_back(report);
  }
  return reports;
}

void write_exclusivity_csv(const std::vector<ExclusivityReport>& reports, std::ostream& out) {
  out << "gamma,K,N,m,beta_star,replicates,lambda_inclusive,lambda_exclusive,"
         "q_inclusive,q_exclusive,err_inclusive,err_inclusive_se,err_exclusive,"
         "err_exclusive_se\n";
  char buf[512];
  for (const auto& r : reports) {
    std::snprintf(buf, sizeof(buf),
                  "%.17g,%lld,%lld,%lld,%.17g,%lld,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,"
                  "%.17g\n",
                  r.regime.gamma, static_cast<long long>(r.regime.relevant_count),
                  static_cast<long long>(r.regime.total_variables),
                  static_cast<long long>(r.regime.example_count), r.regime.beta_star,
                  static_cast<long long>(r.replicates), r.lambda_inclusive, r.lambda_exclusive,
                  r.q_inclusive, r.q_exclusive, r.err_inclusive, r.err_inclusive_se,
                  r.err_exclusive, r.err_exclusive_se);
    out << buf;
  }
}

std::vector<DependenceRecord> dependence_study(const std::vector<std::int64_t>& rs,
                                               const DependenceConfig& config) {
  if (config.irrelevant_in_model < 0 ||
      config.relevant_count + config.irrelevant_in_model > config.total_variables)
    throw std::invalid_argument("dependence_study: K + irrelevant_in_model <= N required");
  std::vector<DependenceRecord> records;
  records.reserve(rs.size());
  VoteModel model;
  model.default_label = 1;
  for (std::int64_t v = 0; v < config.relevant_count + config.irrelevant_in_model; ++v)
    model.features.push_back({v, false});

  for (std::int64_t r : rs) {
    const SourceSpec spec = make_spec(config.total_variables, config.relevant_count,
                                      config.gamma, Polarity::all_positive, r);
    DependenceRecord rec;
    rec.r = r;
    rec.model_size = model.size();
    rec.relevant = config.relevant_count;
    rec.trials = config.trials;
    const McEstimate mc =
        mc_error(model, spec, config.trials, mix(config.seed, kStreamMc, static_cast<std::uint64_t>(r)));
    rec.mc_estimate = mc.estimate;
    rec.mc_se = mc.std_error;
    rec.bound_c1 = dependence_bound(rec.model_size, rec.relevant, r, config.gamma.to_double(), 1.0);
    records.push_back(rec);
  }
  return records;
}

void write_dependence_csv(const std::vector<DependenceRecord>& records, std::ostream& out) {
  out << "r,n,k,trials,mc_error,mc_se,dependence_bound_c1\n";
  char buf[256];
  for (const auto& r : records) {
    std::snprintf(buf, sizeof(buf), "%lld,%lld,%lld,%lld,%.17g,%.17g,%.17g\n",
                  static_cast<long long>(r.r), static_cast<long long>(r.model_size),
                  static_cast<long long>(r.relevant), static_cast<long long>(r.trials),
                  r.mc_estimate, r.mc_se, r.bound_c1);
    out << buf;
  }
}

}  // namespace edgevote
