#pragma once

#include <string>

#include "edgevote/exp_harness.hpp"
#include "edgevote/synth_source.hpp"
#include "edgevote/tail_oracle.hpp"

namespace edgevote {

// JSON boundaries for the CLI: config parsing and summary emission.
// Rationals are written as "num/den" strings; plain integers and decimal
// literals are also accepted on input.

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// {"N":..,"K":..,"gamma":"1/10","polarity":"half_half"|"all_positive",
//  "clique_r":0} or the heterogeneous form with "gamma_min"/"gamma_max" and
// "edge_assignment":"uniform_grid"|{"edges":[...]}
SourceSpec parse_source_spec_json(const std::string& text);

// {"source":{...},"m":..,"betas":[...]|"beta_grid":{"start","stop","step"},
//  "replicates":..,"trials":..,"seed":..,"error_mode":"exact"|"mc",
//  "positive_only":false}
ExperimentConfig parse_experiment_config_json(const std::string& text);

// optional "m" carried next to a source spec (used by `source draw`)
std::int64_t experiment_m_from_json(const std::string& text);

// {"ells":[..]|{"min":..,"max":..},"etas":[..],"ps":[..],"deltas":[..],
//  "slud_strict":true}
AuditGrid parse_audit_grid_json(const std::string& text);

// {"N":..,"K":..,"irrelevant_in_model":..,"gamma":"1/5","trials":..,"seed":..}
DependenceConfig parse_dependence_config_json(const std::string& text);

std::string fig2_summary_to_json(const Fig2Summary& summary);

}  // namespace edgevote
