#include "mvopt/io.hpp"

#include <cstdio>
#include <initializer_list>

#include "json.hpp"
#include "mvopt/errors.hpp"
#include "text_file.hpp"

namespace mvopt {

using nlohmann::json;

namespace {

constexpr int kRunConfigFormatVersion = 1;
constexpr int kReportFormatVersion = 1;
constexpr int kTrajectoryFormatVersion = 1;

struct ConfigParser {
  std::string origin;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ValidationError(origin + ": " + msg);
  }

  void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                  const std::string& where) const {
    for (const auto& item : obj.items()) {
      bool known = false;
      for (const char* k : allowed) {
        if (item.key() == k) {
          known = true;
          break;
        }
      }
      if (!known) fail("unknown key '" + item.key() + "' in " + where);
    }
  }

  double number_or(const json& obj, const char* key, double fallback,
                   const std::string& where) const {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number()) fail("'" + std::string(key) + "' in " + where + " must be a number");
    return v.get<double>();
  }

  int int_or(const json& obj, const char* key, int fallback, const std::string& where) const {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number_integer()) {
      fail("'" + std::string(key) + "' in " + where + " must be an integer");
    }
    return v.get<int>();
  }

  bool bool_or(const json& obj, const char* key, bool fallback, const std::string& where) const {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_boolean()) fail("'" + std::string(key) + "' in " + where + " must be a boolean");
    return v.get<bool>();
  }

  std::optional<double> optional_number(const json& obj, const char* key,
                                        const std::string& where) const {
    if (!obj.contains(key)) return std::nullopt;
    const json& v = obj.at(key);
    if (!v.is_number()) fail("'" + std::string(key) + "' in " + where + " must be a number");
    return v.get<double>();
  }
};

RunConfig run_config_from_json(const json& doc, const std::string& origin) {
  const ConfigParser p{origin};
  if (!doc.is_object()) p.fail("top level must be an object");
  p.check_keys(doc,
               {"format_version", "population_size", "generations", "pilot_samples",
                "pilot_view_min", "pilot_view_max", "seed_fraction", "elitism_count", "rng_seed",
                "record_all_fitness", "fitness", "lexicase", "crossover", "mutation"},
               "document");
  if (doc.contains("format_version")) {
    if (!doc["format_version"].is_number_integer() ||
        doc["format_version"].get<int>() != kRunConfigFormatVersion) {
      p.fail("unsupported format_version (expected " + std::to_string(kRunConfigFormatVersion) +
             ")");
    }
  }

  RunConfig cfg;
  cfg.population_size = p.int_or(doc, "population_size", cfg.population_size, "document");
  cfg.generations = p.int_or(doc, "generations", cfg.generations, "document");
  cfg.pilot_samples = p.int_or(doc, "pilot_samples", cfg.pilot_samples, "document");
  cfg.pilot_view_min = p.int_or(doc, "pilot_view_min", cfg.pilot_view_min, "document");
  cfg.pilot_view_max = p.int_or(doc, "pilot_view_max", cfg.pilot_view_max, "document");
  cfg.seed_fraction = p.number_or(doc, "seed_fraction", cfg.seed_fraction, "document");
  cfg.elitism_count = p.int_or(doc, "elitism_count", cfg.elitism_count, "document");
  cfg.record_all_fitness =
      p.bool_or(doc, "record_all_fitness", cfg.record_all_fitness, "document");
  if (doc.contains("rng_seed")) {
    const json& v = doc.at("rng_seed");
    if (!v.is_number_integer() || (!v.is_number_unsigned() && v.get<std::int64_t>() < 0)) {
      p.fail("'rng_seed' must be a non-negative integer");
    }
    cfg.rng_seed = v.get<std::uint64_t>();
  }

  if (doc.contains("fitness")) {
    const json& jf = doc.at("fitness");
    if (!jf.is_object()) p.fail("'fitness' must be an object");
    p.check_keys(jf,
                 {"w1", "w2", "w3", "max_response_time_norm", "max_maintenance_cost_norm", "x0",
                  "sigmoid_scale", "penalty_coefficient", "decreasing_memory_shape"},
                 "fitness");
    FitnessConfig& f = cfg.fitness;
    f.w1 = p.number_or(jf, "w1", f.w1, "fitness");
    f.w2 = p.number_or(jf, "w2", f.w2, "fitness");
    f.w3 = p.number_or(jf, "w3", f.w3, "fitness");
    f.max_response_time_norm = p.optional_number(jf, "max_response_time_norm", "fitness");
    f.max_maintenance_cost_norm = p.optional_number(jf, "max_maintenance_cost_norm", "fitness");
    f.x0 = p.optional_number(jf, "x0", "fitness");
    f.sigmoid_scale = p.optional_number(jf, "sigmoid_scale", "fitness");
    f.penalty_coefficient =
        p.number_or(jf, "penalty_coefficient", f.penalty_coefficient, "fitness");
    f.decreasing_memory_shape =
        p.bool_or(jf, "decreasing_memory_shape", f.decreasing_memory_shape, "fitness");
  }

  if (doc.contains("lexicase")) {
    const json& jl = doc.at("lexicase");
    if (!jl.is_object()) p.fail("'lexicase' must be an object");
    p.check_keys(jl, {"epsilon_mode", "target_survivors"}, "lexicase");
    if (jl.contains("epsilon_mode")) {
      if (!jl["epsilon_mode"].is_string()) p.fail("'epsilon_mode' must be a string");
      const std::string mode = jl["epsilon_mode"].get<std::string>();
      if (mode == "exact") {
        cfg.lexicase.epsilon_mode = EpsilonMode::exact;
      } else if (mode == "mad") {
        cfg.lexicase.epsilon_mode = EpsilonMode::mad;
      } else {
        p.fail("'epsilon_mode' must be \"exact\" or \"mad\", got \"" + mode + "\"");
      }
    }
    cfg.lexicase.target_survivors =
        p.int_or(jl, "target_survivors", cfg.lexicase.target_survivors, "lexicase");
  }

  if (doc.contains("crossover")) {
    const json& jc = doc.at("crossover");
    if (!jc.is_object()) p.fail("'crossover' must be an object");
    p.check_keys(jc, {"alpha", "num_parents"}, "crossover");
    cfg.crossover.alpha = p.number_or(jc, "alpha", cfg.crossover.alpha, "crossover");
    cfg.crossover.num_parents =
        p.int_or(jc, "num_parents", cfg.crossover.num_parents, "crossover");
  }

  if (doc.contains("mutation")) {
    const json& jm = doc.at("mutation");
    if (!jm.is_object()) p.fail("'mutation' must be an object");
    p.check_keys(jm, {"rate_min", "rate_max"}, "mutation");
    cfg.mutation.rate_min = p.number_or(jm, "rate_min", cfg.mutation.rate_min, "mutation");
    cfg.mutation.rate_max = p.number_or(jm, "rate_max", cfg.mutation.rate_max, "mutation");
  }

  validate(cfg);
  return cfg;
}

json fitness_config_to_json(const FitnessConfig& f) {
  json j;
  j["w1"] = f.w1;
  j["w2"] = f.w2;
  j["w3"] = f.w3;
  if (f.max_response_time_norm) j["max_response_time_norm"] = *f.max_response_time_norm;
  if (f.max_maintenance_cost_norm) {
    j["max_maintenance_cost_norm"] = *f.max_maintenance_cost_norm;
  }
  if (f.x0) j["x0"] = *f.x0;
  if (f.sigmoid_scale) j["sigmoid_scale"] = *f.sigmoid_scale;
  j["penalty_coefficient"] = f.penalty_coefficient;
  j["decreasing_memory_shape"] = f.decreasing_memory_shape;
  return j;
}

json fitness_params_to_json(const FitnessParams& f) {
  return {{"w1", f.w1},
          {"w2", f.w2},
          {"w3", f.w3},
          {"max_response_time_norm", f.max_response_time_norm},
          {"max_maintenance_cost_norm", f.max_maintenance_cost_norm},
          {"x0", f.x0},
          {"sigmoid_scale", f.sigmoid_scale},
          {"penalty_coefficient", f.penalty_coefficient},
          {"decreasing_memory_shape", f.decreasing_memory_shape}};
}

json run_config_to_json(const RunConfig& cfg) {
  json doc;
  doc["format_version"] = kRunConfigFormatVersion;
  doc["population_size"] = cfg.population_size;
  doc["generations"] = cfg.generations;
  doc["pilot_samples"] = cfg.pilot_samples;
  doc["pilot_view_min"] = cfg.pilot_view_min;
  doc["pilot_view_max"] = cfg.pilot_view_max;
  doc["seed_fraction"] = cfg.seed_fraction;
  doc["elitism_count"] = cfg.elitism_count;
  doc["rng_seed"] = cfg.rng_seed;
  doc["record_all_fitness"] = cfg.record_all_fitness;
  doc["fitness"] = fitness_config_to_json(cfg.fitness);
  doc["lexicase"] = {
      {"epsilon_mode", cfg.lexicase.epsilon_mode == EpsilonMode::exact ? "exact" : "mad"},
      {"target_survivors", cfg.lexicase.target_survivors}};
  doc["crossover"] = {{"alpha", cfg.crossover.alpha}, {"num_parents", cfg.crossover.num_parents}};
  doc["mutation"] = {{"rate_min", cfg.mutation.rate_min}, {"rate_max", cfg.mutation.rate_max}};
  return doc;
}

json evaluation_to_json(const EvaluatedIndividual& ind) {
  json j;
  j["bitstring"] = ind.chromosome.to_string();
  j["view_ids"] = ind.chromosome.decode();
  j["objectives"] = {{"response_time", ind.objectives.response_time},
                     {"maintenance_cost", ind.objectives.maintenance_cost},
                     {"memory_usage", ind.objectives.memory_usage}};
  j["per_query_costs"] = ind.per_query_costs;
  j["fitness"] = ind.fitness;
  j["feasible"] = ind.feasible;
  j["total_cost"] = ind.objectives.response_time + ind.objectives.maintenance_cost;
  return j;
}

}  // namespace

RunConfig parse_run_config(const std::string& text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(origin + ": " + e.what());
  }
  return run_config_from_json(doc, origin);
}

RunConfig load_run_config(const std::string& path) {
  return parse_run_config(detail::read_text_file(path), "run config '" + path + "'");
}

std::string run_config_to_string(const RunConfig& cfg) {
  return run_config_to_json(cfg).dump(2) + "\n";
}

void save_run_config(const RunConfig& cfg, const std::string& path) {
  detail::write_text_file(path, run_config_to_string(cfg));
}

std::string report_to_string(const RunReport& report) {
  json doc;
  doc["format_version"] = kReportFormatVersion;
  doc["workload"] = report.workload_name;
  doc["best"] = evaluation_to_json(report.best);
  doc["evaluations"] = report.evaluations;
  doc["wall_time_seconds"] = report.wall_time_seconds;
  doc["config"] = run_config_to_json(report.config);
  doc["fitness_params"] = fitness_params_to_json(report.fitness_params);
  return doc.dump(2) + "\n";
}

void save_report(const RunReport& report, const std::string& path) {
  detail::write_text_file(path, report_to_string(report));
}

std::string evaluation_to_string(const EvaluatedIndividual& ind, const FitnessParams& params) {
  json j = evaluation_to_json(ind);
  j["shaped"] = {{"response", shape_response(ind.objectives.response_time, params)},
                 {"maintenance", shape_maintenance(ind.objectives.maintenance_cost, params)},
                 {"memory", shape_memory(ind.objectives.memory_usage, params)}};
  return j.dump(2) + "\n";
}

std::string trajectory_to_csv(const std::vector<GenerationRecord>& trajectory) {
  std::string out = "# format_version=" + std::to_string(kTrajectoryFormatVersion) + "\n";
  out += "generation,best_fitness,mean_fitness,similarity,mutation_rate\n";
  char row[192];
  for (const GenerationRecord& rec : trajectory) {
    std::snprintf(row, sizeof(row), "%d,%.16e,%.16e,%.16e,%.16e\n", rec.generation,
                  rec.best_fitness, rec.mean_fitness, rec.population_similarity,
                  rec.mutation_rate_used);
    out += row;
  }
  return out;
}

void save_trajectory(const std::vector<GenerationRecord>& trajectory, const std::string& path) {
  detail::write_text_file(path, trajectory_to_csv(trajectory));
}

}  // namespace mvopt
