// edgevote CLI: bound audits, theorem evaluators, synthetic-source sampling,
// threshold learning, exact/monte-carlo error, experiment sweeps.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "edgevote/exp_harness.hpp"
#include "edgevote/json_io.hpp"
#include "edgevote/mbeta_learner.hpp"
#include "edgevote/synth_source.hpp"
#include "edgevote/tail_oracle.hpp"
#include "edgevote/theory_bounds.hpp"
#include "edgevote/vote_model.hpp"

using namespace edgevote;
using nlohmann::json;

namespace {

std::vector<Rational> parse_rational_list(const std::string& csv) {
  std::vector<Rational> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(Rational::parse(item));
  return out;
}

std::vector<std::int64_t> parse_int_list(const std::string& csv) {
  std::vector<std::int64_t> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoll(item));
  return out;
}

Rational rational_arg(const json& v) {
  if (v.is_string()) return Rational::parse(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  return Rational::parse(v.dump());  // shortest round-trip digits
}

int run_theorem(const std::string& which, const std::string& params_text) {
  const json p = json::parse(params_text);
  json result;
  auto rat = [&p](const char* key) { return rational_arg(p.at(key)); };
  if (which == "t1") {
    Composition comp{p.at("n").get<std::int64_t>(), p.at("k").get<std::int64_t>(),
                     p.at("l").get<std::int64_t>()};
    result["bound"] = theorem1_bound(comp, rat("gamma").to_double());
  } else if (which == "t2") {
    const Theorem2Bound b =
        theorem2_bound(p.at("N").get<std::int64_t>(), p.at("K").get<std::int64_t>(),
                       rat("gamma").to_double(), p.at("m").get<std::int64_t>(),
                       rat("beta").to_double());
    result["finite_form"] = b.finite_form;
    result["with_delta_term"] = b.with_delta_term;
  } else if (which == "t3") {
    const Theorem3Bound b =
        theorem3_bound(p.at("N").get<std::int64_t>(), p.at("K").get<std::int64_t>(),
                       rat("gamma").to_double(), p.at("m").get<std::int64_t>(),
                       p.at("c_frac").get<double>());
    result["bound"] = b.bound;
    result["m_threshold"] = b.m_threshold;
    result["applicable"] = b.applicable;
    result["sharp_form_asymptotic"] = b.sharp_form;
  } else if (which == "bayes") {
    const BayesVote b = bayes_error_and_bound(p.at("K").get<std::int64_t>(), rat("gamma"));
    result["exact_error"] = b.exact_error;
    result["bound"] = b.bound;
  } else if (which == "floor") {
    result["floor"] = relevant_floor(p.at("k").get<std::int64_t>(), rat("gamma").to_double());
  } else if (which == "irrfloor") {
    result["floor"] = expected_irrelevant_floor(
        p.at("N").get<std::int64_t>(), p.at("K").get<std::int64_t>(), rat("beta").to_double(),
        p.at("m").get<std::int64_t>());
  } else if (which == "regime") {
    const RegimeParams r = regime_params(rat("gamma").to_double());
    result["K"] = r.relevant_count;
    result["N"] = r.total_variables;
    result["m"] = r.example_count;
    result["beta_star"] = r.beta_star;
  } else {
    throw CLI::ValidationError("--which must be one of t1,t2,t3,bayes,floor,irrfloor,regime");
  }
  std::printf("%s\n", result.dump(2).c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"majority votes over weakly relevant boolean variables: exact "
               "errors, tail-bound audits, threshold learning, experiments"};
  app.require_subcommand(1);

  // ---- bounds ----
  auto* bounds = app.add_subcommand("bounds", "tail and learning bound tools");
  bounds->require_subcommand(1);

  auto* audit = bounds->add_subcommand("audit", "compare a bound against exact tails on a grid");
  std::string audit_bound_name, audit_grid_path, audit_out;
  audit->add_option("--bound", audit_bound_name, "bound id")->required();
  audit->add_option("--grid", audit_grid_path, "grid JSON file")->required();
  audit->add_option("--out", audit_out, "output CSV path")->required();
  audit->callback([&] {
    const AuditGrid grid = parse_audit_grid_json(read_text_file(audit_grid_path));
    const AuditReport report = audit_bound(bound_id_from_string(audit_bound_name), grid);
    std::ofstream out(audit_out);
    if (!out) throw CLI::RuntimeError("cannot open " + audit_out, 1);
    write_audit_csv(report, out);
    std::printf("points: %zu  skipped: %zu  violations: %zu  max_relative_slack: %.6g\n",
                report.points.size(), report.skipped_count(), report.violation_count(),
                report.max_relative_slack());
    for (const auto& pt : report.violations())
      std::printf("  violation: ell=%lld eta=%s bound=%.9g exact=%.9g\n",
                  static_cast<long long>(pt.ell), pt.eta_nominal.str().c_str(), pt.bound_value,
                  pt.exact_tail);
  });

  auto* theorem = bounds->add_subcommand("theorem", "evaluate a closed-form bound");
  std::string theorem_which, theorem_params;
  theorem->add_option("--which", theorem_which, "t1|t2|t3|bayes|floor|irrfloor|regime")
      ->required();
  theorem->add_option("--params", theorem_params, "JSON parameter object")->required();
  theorem->callback([&] { run_theorem(theorem_which, theorem_params); });

  // ---- source ----
  auto* source = app.add_subcommand("source", "synthetic source tools");
  source->require_subcommand(1);
  auto* draw = source->add_subcommand("draw", "sample a dataset and write it to disk");
  std::string draw_config, draw_out;
  std::uint64_t draw_seed = 1;
  std::int64_t draw_m = -1;
  draw->add_option("--config", draw_config, "source spec JSON (with optional m)")->required();
  draw->add_option("--seed", draw_seed, "sampling seed")->required();
  draw->add_option("--out", draw_out, "dataset file path")->required();
  draw->add_option("--m", draw_m, "example count (overrides config)");
  draw->callback([&] {
    const std::string text = read_text_file(draw_config);
    const SourceSpec spec = parse_source_spec_json(text);
    const std::int64_t m = draw_m > 0 ? draw_m : experiment_m_from_json(text);
    if (m < 1) throw CLI::RuntimeError("example count missing: set \"m\" in config or --m", 1);
    save_dataset(draw_dataset(spec, m, draw_seed), draw_out);
    std::printf("wrote %s: N=%lld K=%lld m=%lld seed=%llu\n", draw_out.c_str(),
                static_cast<long long>(spec.total_variables),
                static_cast<long long>(spec.relevant_count()), static_cast<long long>(m),
                static_cast<unsigned long long>(draw_seed));
  });

  // ---- learn ----
  auto* learn = app.add_subcommand("learn", "select the beta-threshold vote from a dataset");
  std::string learn_data, learn_beta, learn_out;
  bool learn_positive = false;
  learn->add_option("--data", learn_data, "dataset file")->required();
  learn->add_option("--beta", learn_beta, "threshold edge (rational)")->required();
  learn->add_option("--out", learn_out, "model JSON path")->required();
  learn->add_flag("--positive-only", learn_positive, "consider un-negated variables only");
  learn->callback([&] {
    const Dataset ds = load_dataset(learn_data);
    const Rational beta = Rational::parse(learn_beta);
    const VoteModel model =
        learn_positive ? select_positive_model(ds, beta) : select_model(ds, beta);
    save_model(model, learn_out);
    std::printf("wrote %s: %lld features\n", learn_out.c_str(),
                static_cast<long long>(model.size()));
  });

  // ---- error ----
  auto* error_cmd = app.add_subcommand("error", "vote error computation");
  error_cmd->require_subcommand(1);
  auto* exact_cmd = error_cmd->add_subcommand("exact", "closed-form exact error");
  std::int64_t en = 1, ek = 0, el = 0;
  std::string egamma = "1/10";
  exact_cmd->add_option("--n", en, "total features")->required();
  exact_cmd->add_option("--k", ek, "relevant features")->required();
  exact_cmd->add_option("--l", el, "misleading features")->required();
  exact_cmd->add_option("--gamma", egamma, "edge (rational)")->required();
  exact_cmd->callback([&] {
    std::printf("%.12g\n", exact_error({en, ek, el}, Rational::parse(egamma)));
  });

  auto* mc_cmd = error_cmd->add_subcommand("mc", "monte-carlo error of a model file");
  std::string mc_model, mc_spec;
  std::int64_t mc_trials = 100000;
  std::uint64_t mc_seed = 1;
  mc_cmd->add_option("--model", mc_model, "model JSON file")->required();
  mc_cmd->add_option("--spec", mc_spec, "source spec JSON file")->required();
  mc_cmd->add_option("--trials", mc_trials, "trial count");
  mc_cmd->add_option("--seed", mc_seed, "seed");
  mc_cmd->callback([&] {
    const VoteModel model = load_model(mc_model);
    const SourceSpec spec = parse_source_spec_json(read_text_file(mc_spec));
    const McEstimate est = mc_error(model, spec, mc_trials, mc_seed);
    json j;
    j["estimate"] = est.estimate;
    j["std_error"] = est.std_error;
    std::printf("%s\n", j.dump(2).c_str());
  });

  // ---- posterior ----
  auto* posterior = app.add_subcommand("posterior", "exact relevance posterior (small instances)");
  std::string post_data, post_gamma;
  std::int64_t post_k = 1, post_var = 0;
  posterior->add_option("--data", post_data, "dataset file")->required();
  posterior->add_option("--K", post_k, "relevant-set size")->required();
  posterior->add_option("--gamma", post_gamma, "edge (rational)")->required();
  posterior->add_option("--var", post_var, "variable index")->required();
  posterior->callback([&] {
    const Dataset ds = load_dataset(post_data);
    const double p = posterior_relevance(ds, post_k, Rational::parse(post_gamma), post_var);
    json j;
    j["variable"] = post_var;
    j["posterior"] = p;
    std::printf("%s\n", j.dump(2).c_str());
  });

  // ---- sweep ----
  auto* sweep = app.add_subcommand("sweep", "beta-grid experiment over replicates");
  std::string sweep_config, sweep_out;
  sweep->add_option("--config", sweep_config, "experiment config JSON")->required();
  sweep->add_option("--out", sweep_out, "records CSV path")->required();
  sweep->callback([&] {
    const ExperimentConfig config = parse_experiment_config_json(read_text_file(sweep_config));
    const auto records = run_sweep(config);
    std::ostringstream oss;
    write_records_csv(records, oss);
    write_text_file(sweep_out, oss.str());
    std::printf("wrote %s: %zu records\n", sweep_out.c_str(), records.size());
  });

  // ---- repro-fig2 ----
  auto* fig2 = app.add_subcommand("repro-fig2", "canonical synthetic run summary");
  std::uint64_t fig2_seed = 1;
  std::string fig2_out, fig2_records;
  fig2->add_option("--seed", fig2_seed, "master seed")->required();
  fig2->add_option("--out", fig2_out, "summary JSON path")->required();
  fig2->add_option("--records", fig2_records, "optional records CSV path");
  fig2->callback([&] {
    const Fig2Summary summary = repro_fig2(fig2_seed);
    write_text_file(fig2_out, fig2_summary_to_json(summary));
    if (!fig2_records.empty()) {
      std::ostringstream oss;
      write_records_csv(summary.records, oss);
      write_text_file(fig2_records, oss.str());
    }
    std::printf("seed %llu: best_beta=%s best_error=%.6f irrelevant_fraction=%.4f\n",
                static_cast<unsigned long long>(fig2_seed), summary.best_beta.str().c_str(),
                summary.best_error, summary.best_irrelevant_fraction);
  });

  // ---- exclusivity ----
  auto* excl = app.add_subcommand("exclusivity", "inclusive vs exclusive learner profiles");
  std::string excl_gammas = "1/5,3/20,1/10", excl_out;
  std::int64_t excl_reps = 100;
  std::uint64_t excl_seed = 1;
  excl->add_option("--gammas", excl_gammas, "comma-separated rational edges");
  excl->add_option("--replicates", excl_reps, "training replicates per gamma");
  excl->add_option("--seed", excl_seed, "master seed");
  excl->add_option("--out", excl_out, "CSV path")->required();
  excl->callback([&] {
    const auto reports =
        exclusivity_profile(parse_rational_list(excl_gammas), excl_reps, excl_seed);
    std::ostringstream oss;
    write_exclusivity_csv(reports, oss);
    write_text_file(excl_out, oss.str());
    for (const auto& r : reports)
      std::printf("gamma=%.3f: err_inclusive=%.3e err_exclusive=%.3e lambda_inclusive=%.3f "
                  "lambda_exclusive=%.3f\n",
                  r.regime.gamma, r.err_inclusive, r.err_exclusive, r.lambda_inclusive,
                  r.lambda_exclusive);
  });

  // ---- dependence ----
  auto* dep = app.add_subcommand("dependence", "clique-dependent source study");
  std::string dep_rs = "0,1,3,7", dep_config, dep_out;
  dep->add_option("--rs", dep_rs, "comma-separated clique degrees");
  dep->add_option("--config", dep_config, "dependence config JSON")->required();
  dep->add_option("--out", dep_out, "CSV path")->required();
  dep->callback([&] {
    const DependenceConfig config = parse_dependence_config_json(read_text_file(dep_config));
    const auto records = dependence_study(parse_int_list(dep_rs), config);
    std::ostringstream oss;
    write_dependence_csv(records, oss);
    write_text_file(dep_out, oss.str());
    for (const auto& r : records)
      std::printf("r=%lld: mc_error=%.5f (se %.5f) bound_c1=%.5f\n",
                  static_cast<long long>(r.r), r.mc_estimate, r.mc_se, r.bound_c1);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
