#include "edgevote/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "edgevote/vote_model.hpp"

namespace edgevote {

using nlohmann::json;

namespace {

Rational rational_from_json(const json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_number_float()) {
    // shortest round-trip digits, so decimal literals parse exactly
    return Rational::parse(j.dump());
  }
  if (j.is_object() && j.contains("num") && j.contains("den"))
    return Rational(j["num"].get<std::int64_t>(), j["den"].get<std::int64_t>());
  throw std::invalid_argument("expected a rational (string \"a/b\", number, or {num,den})");
}

SourceSpec source_from_json(const json& j) {
  const std::int64_t n = j.at("N").get<std::int64_t>();
  const std::int64_t k = j.at("K").get<std::int64_t>();
  const std::int64_t clique_r = j.value("clique_r", std::int64_t{0});
  if (j.contains("gamma_min") || j.contains("gamma_max")) {
    const Rational gmin = rational_from_json(j.at("gamma_min"));
    const Rational gmax = rational_from_json(j.at("gamma_max"));
    if (j.contains("edge_assignment") && j["edge_assignment"].is_object()) {
      std::vector<Rational> edges;
      for (const auto& e : j["edge_assignment"].at("edges"))
        edges.push_back(rational_from_json(e));
      return make_hetero_spec(n, k, gmin, gmax, EdgeAssignment::explicit_list, edges);
    }
    return make_hetero_spec(n, k, gmin, gmax, EdgeAssignment::uniform_grid);
  }
  const Rational gamma = rational_from_json(j.at("gamma"));
  const std::string polarity = j.value("polarity", std::string("all_positive"));
  if (polarity != "all_positive" && polarity != "half_half")
    throw std::invalid_argument("polarity must be all_positive or half_half");
  return make_spec(n, k, gamma,
                   polarity == "half_half" ? Polarity::half_half : Polarity::all_positive,
                   clique_r);
}

json parse(const std::string& text) {
  return json::parse(text);
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream oss;
  oss << in.rdbuf();
  return oss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path);
}

SourceSpec parse_source_spec_json(const std::string& text) {
  const json j = parse(text);
  return source_from_json(j.contains("source") ? j["source"] : j);
}

std::int64_t experiment_m_from_json(const std::string& text) {
  const json j = parse(text);
  if (j.contains("m")) return j["m"].get<std::int64_t>();
  return -1;
}

ExperimentConfig parse_experiment_config_json(const std::string& text) {
  const json j = parse(text);
  ExperimentConfig config;
  config.source = source_from_json(j.contains("source") ? j["source"] : j);
  config.example_count = j.at("m").get<std::int64_t>();
  if (j.contains("betas")) {
    for (const auto& b : j["betas"]) config.betas.push_back(rational_from_json(b));
  } else if (j.contains("beta_grid")) {
    const json& g = j["beta_grid"];
    const Rational start = rational_from_json(g.at("start"));
    const Rational stop = rational_from_json(g.at("stop"));
    const Rational step = rational_from_json(g.at("step"));
    if (step.num <= 0) throw std::invalid_argument("beta_grid: step must be positive");
    for (Rational b = start; b <= stop; b = b + step) config.betas.push_back(b);
  } else {
    throw std::invalid_argument("experiment config needs betas or beta_grid");
  }
  config.replicates = j.value("replicates", std::int64_t{1});
  config.trials = j.value("trials", std::int64_t{10000});
  config.master_seed = j.value("seed", std::uint64_t{1});
  const std::string mode = j.value("error_mode", std::string("exact"));
  if (mode == "exact")
    config.error_mode = ErrorMode::exact;
  else if (mode == "mc")
    config.error_mode = ErrorMode::mc;
  else
    throw std::invalid_argument("error_mode must be exact or mc");
  config.positive_only = j.value("positive_only", false);
  return config;
}

AuditGrid parse_audit_grid_json(const std::string& text) {
  const json j = parse(text);
  AuditGrid grid;
  if (j.contains("ells")) {
    const json& e = j["ells"];
    if (e.is_array()) {
      for (const auto& x : e) grid.ells.push_back(x.get<std::int64_t>());
    } else {
      const std::int64_t lo = e.at("min").get<std::int64_t>();
      const std::int64_t hi = e.at("max").get<std::int64_t>();
      for (std::int64_t l = lo; l <= hi; ++l) grid.ells.push_back(l);
    }
  }
  if (j.contains("etas"))
    for (const auto& x : j["etas"]) grid.etas.push_back(rational_from_json(x));
  if (j.contains("ps"))
    for (const auto& x : j["ps"]) grid.ps.push_back(rational_from_json(x));
  if (j.contains("deltas"))
    for (const auto& x : j["deltas"]) grid.deltas.push_back(
        x.is_string() ? Rational::parse(x.get<std::string>()).to_double() : x.get<double>());
  grid.slud_strict = j.value("slud_strict", true);
  if (grid.ells.empty()) throw std::invalid_argument("audit grid: ells required");
  return grid;
}

DependenceConfig parse_dependence_config_json(const std::string& text) {
  const json j = parse(text);
  DependenceConfig config;
  config.total_variables = j.at("N").get<std::int64_t>();
  config.relevant_count = j.at("K").get<std::int64_t>();
  config.irrelevant_in_model = j.at("irrelevant_in_model").get<std::int64_t>();
  config.gamma = rational_from_json(j.at("gamma"));
  config.trials = j.value("trials", std::int64_t{100000});
  config.seed = j.value("seed", std::uint64_t{1});
  return config;
}

std::string fig2_summary_to_json(const Fig2Summary& summary) {
  json j;
  j["seed"] = summary.seed;
  j["best_beta"] = summary.best_beta.str();
  j["best_model_size"] = summary.best_model_size;
  j["best_error"] = summary.best_error;
  j["best_irrelevant_fraction"] = summary.best_irrelevant_fraction;
  j["low_irrelevant_models"] = summary.low_irrelevant_models;
  j["min_error_low_irrelevant"] = summary.min_error_low_irrelevant;
  return j.dump(2) + "\n";
}

void save_model(const VoteModel& model, const std::string& path) {
  json j;
  std::vector<std::int64_t> signed_indices;
  signed_indices.reserve(model.features.size());
  // one-based signed encoding: +(i+1) for variable i, -(i+1) for its negation
  for (const Feature& f : model.features)
    signed_indices.push_back(f.negated ? -(f.variable + 1) : f.variable + 1);
  j["features"] = signed_indices;
  j["default_label"] = model.default_label;
  write_text_file(path, j.dump(2) + "\n");
}

VoteModel load_model(const std::string& path) {
  const json j = json::parse(read_text_file(path));
  VoteModel model;
  model.default_label = j.value("default_label", 1);
  for (const auto& x : j.at("features")) {
    const std::int64_t s = x.get<std::int64_t>();
    if (s == 0) throw std::invalid_argument("model file: 0 is not a valid signed index");
    model.features.push_back({(s > 0 ? s : -s) - 1, s < 0});
  }
  std::sort(model.features.begin(), model.features.end(),
            [](const Feature& a, const Feature& b) { return a.variable < b.variable; });
  for (std::size_t i = 1; i < model.features.size(); ++i)
    if (model.features[i].variable == model.features[i - 1].variable)
      throw std::invalid_argument("model file: a variable appears with both signs");
  return model;
}

}  // namespace edgevote
