#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "edgevote/mbeta_learner.hpp"
#include "edgevote/rational.hpp"
#include "edgevote/synth_source.hpp"
#include "edgevote/theory_bounds.hpp"
#include "edgevote/vote_model.hpp"

namespace edgevote {

// Experiment runner: draws training sets, fits the threshold learner across a
// beta grid, measures composition/exclusivity/error, evaluates the applicable
// closed-form bounds, and emits flat CSV records.  Every record is a pure
// function of (config, master seed); replicate fan-out never changes output.

enum class ErrorMode { exact, mc };

struct ExperimentConfig {
  SourceSpec source;
  std::int64_t example_count = 1;  // m
  std::vector<Rational> betas;     // sorted ascending
  std::int64_t replicates = 1;
  std::int64_t trials = 10000;     // mc mode only
  std::uint64_t master_seed = 1;
  ErrorMode error_mode = ErrorMode::exact;
  bool positive_only = false;      // learn with the positive-features variant
};

struct ExperimentRecord {
  std::int64_t replicate = 0;
  Rational beta;
  std::int64_t model_size = 0;  // n
  std::int64_t relevant = 0;    // k
  std::int64_t misleading = 0;  // l
  std::int64_t irrelevant = 0;
  double exclusivity = 0.0;
  double error = 0.0;
  double error_se = 0.0;  // 0 in exact mode
  double t1_bound = 1.0;
  double t2_bound = 1.0;  // 1.0 where the theorem's precondition fails
  double t3_bound = 1.0;
};

std::vector<ExperimentRecord> run_sweep(const ExperimentConfig& config);

// replicate,beta_num,beta_den,n,k,l,irrelevant,exclusivity,error,error_se,
// t1_bound,t2_bound,t3_bound
void write_records_csv(const std::vector<ExperimentRecord>& records, std::ostream& out);

// The canonical synthetic run: N = 1e5 variables, 1000 relevant split
// 500 positive / 500 negative at gamma = 1/10, m = 100 training examples,
// beta grid 0..0.30 in steps of 1/100, exact test error.
ExperimentConfig fig2_config(std::uint64_t seed);

struct Fig2Summary {
  std::uint64_t seed = 0;
  Rational best_beta;
  std::int64_t best_model_size = 0;
  double best_error = 1.0;
  double best_irrelevant_fraction = 0.0;
  // minimum error among models with irrelevant fraction < 25%
  double min_error_low_irrelevant = 0.0;
  std::int64_t low_irrelevant_models = 0;
  std::vector<ExperimentRecord> records;
};

Fig2Summary repro_fig2(std::uint64_t seed);

// Inclusive-vs-exclusive comparison in the regime_params scaling: the
// beta = gamma/2 learner against the vote over variables with empirical edge
// at least beta*.  Errors are exact per replicate; lambda is the sign-blind
// relevant-variable fraction; q is the frequency of beta(S) >= beta*.
struct ExclusivityReport {
  RegimeParams regime;
  std::int64_t replicates = 0;
  Rational beta_inclusive;
  Rational beta_exclusive_effective;  // smallest count-achievable edge >= beta*
  double lambda_inclusive = 0.0;
  double lambda_exclusive = 0.0;
  double q_inclusive = 0.0;
  double q_exclusive = 0.0;
  double err_inclusive = 0.0;
  double err_exclusive = 0.0;
  double err_inclusive_se = 0.0;
  double err_exclusive_se = 0.0;
};

std::vector<ExclusivityReport> exclusivity_profile(const std::vector<Rational>& gammas,
                                                   std::int64_t replicates, std::uint64_t seed);

void write_exclusivity_csv(const std::vector<ExclusivityReport>& reports, std::ostream& out);

// Dependent-source study: a fixed model voting all K relevant variables
// positively plus a fixed count of irrelevant ones, Monte Carlo error per
// clique degree r, paired with the closed-form dependence bound at c = 1.
struct DependenceConfig {
  std::int64_t total_variables = 0;   // N
  std::int64_t relevant_count = 0;    // K; r+1 must divide K for every r
  std::int64_t irrelevant_in_model = 0;
  Rational gamma;
  std::int64_t trials = 100000;
  std::uint64_t seed = 1;
};

struct DependenceRecord {
  std::int64_t r = 0;
  std::int64_t model_size = 0;
  std::int64_t relevant = 0;
  std::int64_t trials = 0;
  double mc_estimate = 0.0;
  double mc_se = 0.0;
  double bound_c1 = 1.0;
};

std::vector<DependenceRecord> dependence_study(const std::vector<std::int64_t>& rs,
                                               const DependenceConfig& config);

void write_dependence_csv(const std::vector<DependenceRecord>& records, std::ostream& out);

}  // namespace edgevote
