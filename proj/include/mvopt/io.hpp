#pragma once

#include <string>
#include <vector>

#include "mvopt/engine.hpp"

namespace mvopt {

/// Reads a run-config document (JSON, see README). Every key is optional;
/// missing keys keep their built-in defaults. Throws IoError on read
/// failure, ValidationError on malformed or invalid content.
RunConfig load_run_config(const std::string& path);

/// Same parser on in-memory text; `origin` names the source in errors.
RunConfig parse_run_config(const std::string& text, const std::string& origin);

std::string run_config_to_string(const RunConfig& cfg);
void save_run_config(const RunConfig& cfg, const std::string& path);

/// Report document (JSON, 2-space indent): the best configuration with its
/// objectives and total_cost (response_time + maintenance_cost), evaluation
/// count, wall time, and the full effective config. wall_time_seconds is
/// the only field that varies between identical runs.
std::string report_to_string(const RunReport& report);
void save_report(const RunReport& report, const std::string& path);

/// One configuration's evaluation as a document: bitstring, decoded view
/// ids, per-query costs, objectives, the three shaped cost terms, fitness
/// and feasibility.
std::string evaluation_to_string(const EvaluatedIndividual& ind, const FitnessParams& params);

/// Trajectory table: a `# format_version=1` comment, the header
/// `generation,best_fitness,mean_fitness,similarity,mutation_rate`, then
/// one row per generation. Reals carry 17 significant digits so the values
/// round-trip exactly.
std::string trajectory_to_csv(const std::vector<GenerationRecord>& trajectory);
void save_trajectory(const std::vector<GenerationRecord>& trajectory, const std::string& path);

}  // namespace mvopt
