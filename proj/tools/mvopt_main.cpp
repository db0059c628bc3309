#include <chrono>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "mvopt/engine.hpp"
#include "mvopt/errors.hpp"
#include "mvopt/io.hpp"
#include "mvopt/workload.hpp"
#include "text_file.hpp"

using namespace mvopt;

namespace {

bool g_quiet = false;

std::string fmt(double v, int digits = 17) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
  return buf;
}

std::string id_list(const std::vector<std::size_t>& ids) {
  std::string out = "[";
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(ids[i]);
  }
  return out + "]";
}

void print_evaluation(const EvaluatedIndividual& ind, const FitnessParams& params,
                      bool with_queries) {
  if (g_quiet) return;
  std::cout << "bitstring         " << ind.chromosome.to_string() << "\n"
            << "materialized ids  " << id_list(ind.chromosome.decode()) << "\n";
  if (with_queries) {
    std::cout << "per-query effective costs\n";
    for (std::size_t q = 0; q < ind.per_query_costs.size(); ++q) {
      std::cout << "  q" << q << ": " << fmt(ind.per_query_costs[q], 9) << "\n";
    }
  }
  const Objectives& obj = ind.objectives;
  std::cout << "response_time     " << fmt(obj.response_time, 9) << "\n"
            << "maintenance_cost  " << fmt(obj.maintenance_cost, 9) << "\n"
            << "memory_usage      " << fmt(obj.memory_usage, 9) << "\n"
            << "total_cost        " << fmt(obj.response_time + obj.maintenance_cost, 9) << "\n"
            << "shaped terms      f1=" << fmt(shape_response(obj.response_time, params), 9)
            << " f2=" << fmt(shape_maintenance(obj.maintenance_cost, params), 9)
            << " f3=" << fmt(shape_memory(obj.memory_usage, params), 9) << "\n"
            << "fitness           " << fmt(ind.fitness) << "\n"
            << "feasible          " << (ind.feasible ? "yes" : "no") << "\n";
}

// ---- flag override bundles (flags beat config file beats defaults) ----

struct FitnessFlags {
  std::optional<double> w1, w2, w3;
  std::optional<double> response_norm, maintenance_norm, x0, sigmoid_scale, penalty;
  bool decreasing_memory_shape = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--w1", w1, "response time weight");
    cmd->add_option("--w2", w2, "maintenance cost weight");
    cmd->add_option("--w3", w3, "memory usage weight");
    cmd->add_option("--response-norm", response_norm,
                    "response time normalizer (default: empty-configuration cost)");
    cmd->add_option("--maintenance-norm", maintenance_norm,
                    "maintenance normalizer (default: every view materialized)");
    cmd->add_option("--x0", x0, "memory sigmoid center, bytes (default: storage budget)");
    cmd->add_option("--sigmoid-scale", sigmoid_scale,
                    "memory sigmoid width, bytes (default: budget / 10)");
    cmd->add_option("--penalty", penalty, "infeasibility penalty coefficient");
    cmd->add_flag("--decreasing-memory-shape", decreasing_memory_shape,
                  "memory term decreases with usage (uncorrected orientation)");
  }

  void apply(FitnessConfig& f) const {
    if (w1) f.w1 = *w1;
    if (w2) f.w2 = *w2;
    if (w3) f.w3 = *w3;
    if (response_norm) f.max_response_time_norm = response_norm;
    if (maintenance_norm) f.max_maintenance_cost_norm = maintenance_norm;
    if (x0) f.x0 = x0;
    if (sigmoid_scale) f.sigmoid_scale = sigmoid_scale;
    if (penalty) f.penalty_coefficient = *penalty;
    if (decreasing_memory_shape) f.decreasing_memory_shape = true;
  }
};

struct RunFlags {
  std::optional<int> population, generations, pilot_samples, pilot_view_min, pilot_view_max;
  std::optional<int> elitism, target_survivors, num_parents;
  std::optional<double> seed_fraction, alpha, rate_min, rate_max;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> epsilon_mode;
  bool record_all_fitness = false;
  FitnessFlags fitness;

  void attach(CLI::App* cmd) {
    cmd->add_option("--population", population, "population size");
    cmd->add_option("--generations", generations, "generation count");
    cmd->add_option("--pilot-samples", pilot_samples, "pilot study sample count");
    cmd->add_option("--pilot-view-min", pilot_view_min, "fewest set views in a random sample");
    cmd->add_option("--pilot-view-max", pilot_view_max, "most set views in a random sample");
    cmd->add_option("--seed-fraction", seed_fraction,
                    "fraction of pilot samples seeded into the population");
    cmd->add_option("--elitism", elitism, "individuals copied unchanged each generation");
    cmd->add_option("--seed", seed, "rng seed");
    cmd->add_option("--epsilon-mode", epsilon_mode, "lexicase epsilon mode")
        ->check(CLI::IsMember({"exact", "mad"}));
    cmd->add_option("--target-survivors", target_survivors, "lexicase survivor target");
    cmd->add_option("--alpha", alpha, "blend crossover interval expansion");
    cmd->add_option("--num-parents", num_parents, "parents per crossover");
    cmd->add_option("--rate-min", rate_min, "mutation rate lower bound");
    cmd->add_option("--rate-max", rate_max, "mutation rate upper bound");
    cmd->add_flag("--record-all-fitness", record_all_fitness,
                  "record every individual's fitness per generation");
    fitness.attach(cmd);
  }

  void apply(RunConfig& cfg) const {
    if (population) cfg.population_size = *population;
    if (generations) cfg.generations = *generations;
    if (pilot_samples) cfg.pilot_samples = *pilot_samples;
    if (pilot_view_min) cfg.pilot_view_min = *pilot_view_min;
    if (pilot_view_max) cfg.pilot_view_max = *pilot_view_max;
    if (seed_fraction) cfg.seed_fraction = *seed_fraction;
    if (elitism) cfg.elitism_count = *elitism;
    if (seed) cfg.rng_seed = *seed;
    if (epsilon_mode) {
      cfg.lexicase.epsilon_mode =
          *epsilon_mode == "exact" ? EpsilonMode::exact : EpsilonMode::mad;
    }
    if (target_survivors) cfg.lexicase.target_survivors = *target_survivors;
    if (alpha) cfg.crossover.alpha = *alpha;
    if (num_parents) cfg.crossover.num_parents = *num_parents;
    if (rate_min) cfg.mutation.rate_min = *rate_min;
    if (rate_max) cfg.mutation.rate_max = *rate_max;
    if (record_all_fitness) cfg.record_all_fitness = true;
    fitness.apply(cfg.fitness);
  }
};

void attach_config_option(CLI::App* cmd, std::optional<std::string>& path) {
  cmd->add_option("-c,--config", path, "run-config document (JSON)")->envname("MVOPT_CONFIG");
}

RunConfig effective_config(const std::optional<std::string>& path, const RunFlags& flags) {
  RunConfig cfg = path ? load_run_config(*path) : RunConfig{};
  flags.apply(cfg);
  validate(cfg);
  return cfg;
}

FitnessConfig effective_fitness(const std::optional<std::string>& path,
                                const FitnessFlags& flags) {
  FitnessConfig f = path ? load_run_config(*path).fitness : FitnessConfig{};
  flags.apply(f);
  return f;
}

// ---- subcommands ----

struct GenerateOpts {
  int queries = 22;
  int views = 40;
  double density = 0.3;
  std::uint64_t seed = 0;
  std::string name;
  std::optional<double> max_response_time;
  std::optional<double> budget_fraction;
  std::string output;
};

void cmd_generate(const GenerateOpts& o) {
  GeneratorSpec spec;
  spec.num_queries = o.queries;
  spec.num_views = o.views;
  spec.coverage_density = o.density;
  spec.rng_seed = o.seed;
  spec.name = o.name;
  spec.max_response_time = o.max_response_time;
  if (o.budget_fraction) spec.cost_ranges.budget_fraction = *o.budget_fraction;
  const Workload w = generate_workload(spec);
  save_workload(w, o.output);
  if (!g_quiet) {
    std::cout << "workload          " << w.name << "\n"
              << "queries           " << w.queries.size() << "\n"
              << "views             " << w.views.size() << "\n"
              << "storage budget    " << fmt(w.constraints.storage_budget, 9) << " bytes\n"
              << "wrote             " << o.output << "\n";
  }
}

struct RunOpts {
  std::string workload;
  std::optional<std::string> config;
  RunFlags flags;
  std::string report_path = "report.json";
  std::string trajectory_path = "trajectory.csv";
};

void cmd_run(const RunOpts& o) {
  const Workload w = load_workload(o.workload);
  const RunConfig cfg = effective_config(o.config, o.flags);
  const RunReport report = evolve(w, cfg);
  save_report(report, o.report_path);
  save_trajectory(report.trajectory, o.trajectory_path);
  if (!g_quiet) {
    std::cout << "workload          " << report.workload_name << "\n"
              << "evaluations       " << report.evaluations << "\n"
              << "wall time         " << fmt(report.wall_time_seconds, 6) << " s\n";
  }
  print_evaluation(report.best, report.fitness_params, false);
  if (!g_quiet) {
    std::cout << "report            " << o.report_path << "\n"
              << "trajectory        " << o.trajectory_path << "\n";
  }
}

struct EvalOpts {
  std::string workload;
  std::optional<std::string> config;
  FitnessFlags fitness;
  bool as_json = false;
};

void cmd_exhaustive(const EvalOpts& o) {
  const Workload w = load_workload(o.workload);
  const FitnessParams params = resolve_fitness_params(effective_fitness(o.config, o.fitness), w);
  const EvaluatedIndividual best = exhaustive_oracle(w, params);
  if (o.as_json) {
    std::cout << evaluation_to_string(best, params);
  } else {
    print_evaluation(best, params, false);
  }
}

void cmd_greedy(const EvalOpts& o) {
  const Workload w = load_workload(o.workload);
  const FitnessParams params = resolve_fitness_params(effective_fitness(o.config, o.fitness), w);
  const EvaluatedIndividual best = greedy_baseline(w, params);
  if (o.as_json) {
    std::cout << evaluation_to_string(best, params);
  } else {
    print_evaluation(best, params, false);
  }
}

struct CompareOpts {
  std::string workload;
  std::optional<std::string> config;
  RunFlags flags;
  int samples = 1000;
  std::optional<std::string> output;
};

void cmd_compare(const CompareOpts& o) {
  if (o.samples < 1) throw ValidationError("compare: --samples must be >= 1");
  const Workload w = load_workload(o.workload);
  const RunConfig cfg = effective_config(o.config, o.flags);
  const FitnessParams params = resolve_fitness_params(cfg.fitness, w);

  struct Row {
    std::string method;
    EvaluatedIndividual ind;
    double seconds = 0.0;
  };
  std::vector<Row> rows;
  const auto timed = [](auto&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    EvaluatedIndividual ind = fn();
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return std::make_pair(std::move(ind), secs);
  };

  const RunReport report = evolve(w, cfg);
  rows.push_back({"ga", report.best, report.wall_time_seconds});
  {
    auto [ind, secs] = timed([&] { return greedy_baseline(w, params); });
    rows.push_back({"greedy", std::move(ind), secs});
  }
  {
    std::mt19937_64 rng(cfg.rng_seed);
    auto [ind, secs] = timed([&] { return random_baseline(w, params, o.samples, rng); });
    rows.push_back({"random", std::move(ind), secs});
  }
  if (w.views.size() <= 24) {
    auto [ind, secs] = timed([&] { return exhaustive_oracle(w, params); });
    rows.push_back({"exhaustive", std::move(ind), secs});
  }

  std::string csv = "# format_version=1\n";
  csv += "method,fitness,response_time,maintenance_cost,memory_usage,total_cost,wall_time_seconds\n";
  for (const Row& row : rows) {
    const Objectives& obj = row.ind.objectives;
    csv += row.method + "," + fmt(row.ind.fitness) + "," + fmt(obj.response_time) + "," +
           fmt(obj.maintenance_cost) + "," + fmt(obj.memory_usage) + "," +
           fmt(obj.response_time + obj.maintenance_cost) + "," + fmt(row.seconds) + "\n";
  }
  if (o.output) {
    detail::write_text_file(*o.output, csv);
    if (!g_quiet) std::cout << "wrote " << *o.output << "\n";
  } else {
    std::cout << csv;
  }
}

struct ExplainOpts {
  std::string workload;
  std::string bitstring;
  std::optional<std::string> config;
  FitnessFlags fitness;
  bool as_json = false;
};

void cmd_explain(const ExplainOpts& o) {
  const Workload w = load_workload(o.workload);
  if (o.bitstring.size() != w.views.size()) {
    throw ValidationError("bitstring has length " + std::to_string(o.bitstring.size()) +
                          " but the workload has " + std::to_string(w.views.size()) +
                          " candidate views");
  }
  Chromosome config = Chromosome::from_string(o.bitstring);
  const FitnessParams params = resolve_fitness_params(effective_fitness(o.config, o.fitness), w);
  const EvaluatedIndividual ind = evaluate(w, std::move(config), params);
  if (o.as_json) {
    std::cout << evaluation_to_string(ind, params);
  } else {
    print_evaluation(ind, params, true);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"materialized view selection via a seeded genetic algorithm"};
  app.set_version_flag("--version", "mvopt 0.1.0");
  app.add_flag("-q,--quiet", g_quiet, "suppress summary output");
  app.fallthrough();
  app.require_subcommand(1);

  GenerateOpts gen;
  CLI::App* cgen = app.add_subcommand("generate", "write a synthetic workload document");
  cgen->add_option("--queries", gen.queries, "number of queries")->capture_default_str();
  cgen->add_option("--views", gen.views, "number of candidate views")->capture_default_str();
  cgen->add_option("--density", gen.density, "per-view query coverage probability")
      ->capture_default_str();
  cgen->add_option("--seed", gen.seed, "rng seed")->capture_default_str();
  cgen->add_option("--name", gen.name, "workload name (default: derived from parameters)");
  cgen->add_option("--max-response-time", gen.max_response_time, "response time cap");
  cgen->add_option("--budget-fraction", gen.budget_fraction,
                   "storage budget as a share of total candidate storage (default 0.4)");
  cgen->add_option("-o,--output", gen.output, "output path")->required();
  cgen->callback([&gen] { cmd_generate(gen); });

  RunOpts run;
  CLI::App* crun = app.add_subcommand("run", "optimize a workload and write report + trajectory");
  crun->add_option("workload", run.workload, "workload document path")->required();
  attach_config_option(crun, run.config);
  crun->add_option("--report", run.report_path, "report output path")->capture_default_str();
  crun->add_option("--trajectory", run.trajectory_path, "trajectory output path")
      ->capture_default_str();
  run.flags.attach(crun);
  crun->callback([&run] { cmd_run(run); });

  EvalOpts exh;
  CLI::App* cexh = app.add_subcommand("exhaustive", "enumerate every configuration (V <= 24)");
  cexh->add_option("workload", exh.workload, "workload document path")->required();
  attach_config_option(cexh, exh.config);
  cexh->add_flag("--json", exh.as_json, "emit the evaluation as JSON");
  exh.fitness.attach(cexh);
  cexh->callback([&exh] { cmd_exhaustive(exh); });

  EvalOpts grd;
  CLI::App* cgrd = app.add_subcommand("greedy", "greedy baseline: best single addition first");
  cgrd->add_option("workload", grd.workload, "workload document path")->required();
  attach_config_option(cgrd, grd.config);
  cgrd->add_flag("--json", grd.as_json, "emit the evaluation as JSON");
  grd.fitness.attach(cgrd);
  cgrd->callback([&grd] { cmd_greedy(grd); });

  CompareOpts cmp;
  CLI::App* ccmp = app.add_subcommand("compare", "run ga, greedy, random (and exhaustive) side by side");
  ccmp->add_option("workload", cmp.workload, "workload document path")->required();
  attach_config_option(ccmp, cmp.config);
  ccmp->add_option("--samples", cmp.samples, "random baseline sample count")
      ->capture_default_str();
  ccmp->add_option("-o,--output", cmp.output, "comparison table path (default: stdout)");
  cmp.flags.attach(ccmp);
  ccmp->callback([&cmp] { cmd_compare(cmp); });

  ExplainOpts xpl;
  CLI::App* cexp = app.add_subcommand("explain", "evaluate one configuration bitstring");
  cexp->add_option("workload", xpl.workload, "workload document path")->required();
  cexp->add_option("bitstring", xpl.bitstring, "configuration, one 0/1 per view")->required();
  attach_config_option(cexp, xpl.config);
  cexp->add_flag("--json", xpl.as_json, "emit the evaluation as JSON");
  xpl.fitness.attach(cexp);
  cexp->callback([&xpl] { cmd_explain(xpl); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const NoFeasibleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
