#include "mvopt/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "mvopt/errors.hpp"

namespace mvopt {

void validate(const RunConfig& cfg) {
  if (cfg.population_size < 2) throw ValidationError("run config: population_size must be >= 2");
  if (cfg.generations < 1) throw ValidationError("run config: generations must be >= 1");
  if (cfg.pilot_samples < 1) throw ValidationError("run config: pilot_samples must be >= 1");
  if (cfg.pilot_view_min < 0) throw ValidationError("run config: pilot_view_min must be >= 0");
  if (cfg.pilot_view_max < cfg.pilot_view_min) {
    throw ValidationError("run config: pilot_view_max must be >= pilot_view_min");
  }
  if (!(cfg.seed_fraction > 0.0) || cfg.seed_fraction > 1.0) {
    throw ValidationError("run config: seed_fraction must be in (0, 1]");
  }
  if (cfg.elitism_count < 0 || cfg.elitism_count >= cfg.population_size) {
    throw ValidationError("run config: elitism_count must be in [0, population_size)");
  }
  validate(cfg.lexicase);
  validate(cfg.crossover);
  validate(cfg.mutation);
}

namespace {

// Indices of the `count` lowest-fitness individuals, fitness ties broken by
// population index so the ordering is deterministic.
std::vector<std::size_t> best_indices(const std::vector<EvaluatedIndividual>& population,
                                      std::size_t count) {
  std::vector<std::size_t> idx(population.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::partial_sort(idx.begin(), idx.begin() + count, idx.end(),
                    [&population](std::size_t a, std::size_t b) {
                      if (population[a].fitness != population[b].fitness) {
                        return population[a].fitness < population[b].fitness;
                      }
                      return a < b;
                    });
  idx.resize(count);
  return idx;
}

Chromosome random_pilot_chromosome(std::size_t num_views, int view_min, int view_max,
                                   std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num_set(view_min, view_max);
  return random_chromosome(num_views, static_cast<std::size_t>(num_set(rng)), rng);
}

// Keeps dropping the materialized view with the smallest marginal
// response-time benefit per byte until the configuration fits the budget.
EvaluatedIndividual repair_to_budget(const Workload& w, const FitnessParams& params,
                                     Chromosome config) {
  EvaluatedIndividual current = evaluate(w, std::move(config), params);
  while (current.objectives.memory_usage > w.constraints.storage_budget &&
         current.chromosome.count() > 0) {
    double worst_ratio = std::numeric_limits<double>::infinity();
    std::size_t worst_view = 0;
    for (std::size_t v = 0; v < w.views.size(); ++v) {
      if (!current.chromosome.test(v)) continue;
      Chromosome without = current.chromosome;
      without.set(v, false);
      const Objectives obj = compute_objectives(w, without);
      const double benefit = obj.response_time - current.objectives.response_time;
      const double ratio = benefit / w.views[v].storage_size;
      if (ratio < worst_ratio) {
        worst_ratio = ratio;
        worst_view = v;
      }
    }
    Chromosome next = current.chromosome;
    next.set(worst_view, false);
    current = evaluate(w, std::move(next), params);
  }
  return current;
}

}  // namespace

SeededPopulation pilot_seed(const Workload& w, const RunConfig& cfg, const FitnessParams& params,
                            std::mt19937_64& rng) {
  validate(cfg);
  const std::size_t num_views = w.views.size();
  if (num_views == 0) throw ValidationError("pilot_seed: workload has no candidate views");

  // Clamp the sampled set-bit range to what the instance allows.
  const int view_max = std::min<int>(cfg.pilot_view_max, static_cast<int>(num_views));
  const int view_min = std::min<int>(cfg.pilot_view_min, view_max);

  std::vector<Chromosome> samples;
  samples.reserve(cfg.pilot_samples);
  std::vector<EvaluatedIndividual> evaluated;
  evaluated.reserve(cfg.pilot_samples);
  for (int i = 0; i < cfg.pilot_samples; ++i) {
    samples.push_back(random_pilot_chromosome(num_views, view_min, view_max, rng));
    evaluated.push_back(evaluate(w, samples.back(), params));
  }

  const std::size_t elite_target = static_cast<std::size_t>(
      std::ceil(cfg.seed_fraction * static_cast<double>(cfg.pilot_samples)));
  const std::size_t elite_count =
      std::min<std::size_t>(elite_target, static_cast<std::size_t>(cfg.population_size));

  SeededPopulation out;
  out.elite_count = elite_count;
  for (std::size_t idx : best_indices(evaluated, elite_count)) {
    out.chromosomes.push_back(samples[idx]);
  }
  while (out.chromosomes.size() < static_cast<std::size_t>(cfg.population_size)) {
    out.chromosomes.push_back(random_pilot_chromosome(num_views, view_min, view_max, rng));
  }

  out.pilot_fitness.reserve(evaluated.size());
  for (const EvaluatedIndividual& ind : evaluated) out.pilot_fitness.push_back(ind.fitness);
  std::sort(out.pilot_fitness.begin(), out.pilot_fitness.end());
  return out;
}

RunReport evolve(const Workload& w, const RunConfig& cfg) {
  validate(cfg);
  validate(w);
  const FitnessParams params = resolve_fitness_params(cfg.fitness, w);
  const auto start = std::chrono::steady_clock::now();

  std::mt19937_64 rng(cfg.rng_seed);
  SeededPopulation seeded = pilot_seed(w, cfg, params, rng);
  std::vector<Chromosome> population = std::move(seeded.chromosomes);

  RunReport report;
  report.config = cfg;
  report.fitness_params = params;
  report.workload_name = w.name;
  report.evaluations = cfg.pilot_samples;
  report.trajectory.reserve(cfg.generations);

  bool have_best = false;
  EvaluatedIndividual best_feasible;
  bool have_any = false;
  EvaluatedIndividual best_any;  // by penalized fitness, repair fallback

  std::vector<EvaluatedIndividual> evaluated;
  for (int gen = 0; gen < cfg.generations; ++gen) {
    evaluated.clear();
    evaluated.reserve(population.size());
    for (const Chromosome& c : population) evaluated.push_back(evaluate(w, c, params));
    report.evaluations += static_cast<std::int64_t>(population.size());

    for (const EvaluatedIndividual& ind : evaluated) {
      if (!have_any || ind.fitness < best_any.fitness) {
        best_any = ind;
        have_any = true;
      }
      if (ind.feasible && (!have_best || ind.fitness < best_feasible.fitness)) {
        best_feasible = ind;
        have_best = true;
      }
    }

    GenerationRecord rec;
    rec.generation = gen;
    rec.best_fitness = std::numeric_limits<double>::infinity();
    double sum = 0.0;
    for (const EvaluatedIndividual& ind : evaluated) {
      rec.best_fitness = std::min(rec.best_fitness, ind.fitness);
      sum += ind.fitness;
    }
    rec.mean_fitness = sum / static_cast<double>(evaluated.size());
    rec.population_similarity = mean_pairwise_similarity(population);
    rec.mutation_rate_used = adaptive_mutation_rate(population, cfg.mutation);
    if (cfg.record_all_fitness) {
      for (const EvaluatedIndividual& ind : evaluated) rec.all_fitness.push_back(ind.fitness);
    }
    report.trajectory.push_back(std::move(rec));

    if (gen == cfg.generations - 1) break;

    // Next generation: elites carried over unchanged, the rest bred.
    const double mutation_rate = report.trajectory.back().mutation_rate_used;
    std::vector<Chromosome> next;
    next.reserve(population.size());
    for (std::size_t idx :
         best_indices(evaluated, static_cast<std::size_t>(cfg.elitism_count))) {
      next.push_back(evaluated[idx].chromosome);
    }
    while (next.size() < population.size()) {
      std::vector<Chromosome> parents;
      while (parents.size() < static_cast<std::size_t>(cfg.crossover.num_parents)) {
        for (std::size_t idx : lexicase_select(evaluated, cfg.lexicase, rng)) {
          parents.push_back(evaluated[idx].chromosome);
        }
      }
      parents.resize(cfg.crossover.num_parents);
      Chromosome child = blend_crossover(parents, cfg.crossover, rng);
      next.push_back(mutate(child, mutation_rate, rng));
    }
    population = std::move(next);
  }

  if (have_best) {
    report.best = std::move(best_feasible);
  } else {
    // Nothing feasible was ever evaluated; repair the best penalized
    // individual down to the storage budget.
    report.best = repair_to_budget(w, params, best_any.chromosome);
    if (!report.best.feasible) {
      throw NoFeasibleError(
          "no feasible configuration found: the response-time cap cannot be met "
          "within the storage budget");
    }
  }

  report.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

EvaluatedIndividual exhaustive_oracle(const Workload& w, const FitnessParams& params) {
  validate(w);
  validate(params);
  const std::size_t num_views = w.views.size();
  if (num_views > 24) {
    throw std::invalid_argument("exhaustive_oracle: " + std::to_string(num_views) +
                                " views exceed the 2^24 enumeration guard");
  }

  // A bitstring is lexicographically smaller when the first differing view
  // position holds a 0, which is not the numeric order of the masks.
  const auto bitstring_less = [num_views](std::uint32_t a, std::uint32_t b) {
    for (std::size_t v = 0; v < num_views; ++v) {
      const std::uint32_t ba = (a >> v) & 1u;
      const std::uint32_t bb = (b >> v) & 1u;
      if (ba != bb) return ba < bb;
    }
    return false;
  };

  std::vector<double> costs(w.queries.size());
  bool found = false;
  std::uint32_t best_mask = 0;
  double best_fitness = std::numeric_limits<double>::infinity();
  const std::uint64_t total = std::uint64_t{1} << num_views;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    Objectives obj;
    for (std::size_t q = 0; q < w.queries.size(); ++q) costs[q] = w.queries[q].base_cost;
    for (std::size_t v = 0; v < num_views; ++v) {
      if (!((mask >> v) & 1u)) continue;
      obj.maintenance_cost += w.views[v].maintenance_cost;
      obj.memory_usage += w.views[v].storage_size;
      for (const auto& [q, c] : w.views[v].answer_costs) costs[q] = std::min(costs[q], c);
    }
    for (std::size_t q = 0; q < w.queries.size(); ++q) {
      obj.response_time += w.queries[q].weight * costs[q];
    }
    const FitnessResult r = fitness(obj, params, w.constraints);
    if (!r.feasible) continue;
    if (!found || r.value < best_fitness ||
        (r.value == best_fitness &&
         bitstring_less(static_cast<std::uint32_t>(mask), best_mask))) {
      found = true;
      best_fitness = r.value;
      best_mask = static_cast<std::uint32_t>(mask);
    }
  }
  if (!found) {
    throw NoFeasibleError("exhaustive_oracle: no configuration satisfies the constraints");
  }

  Chromosome best(num_views);
  for (std::size_t v = 0; v < num_views; ++v) best.set(v, (best_mask >> v) & 1u);
  return evaluate(w, std::move(best), params);
}

EvaluatedIndividual greedy_baseline(const Workload& w, const FitnessParams& params) {
  validate(w);
  validate(params);
  EvaluatedIndividual current = evaluate(w, Chromosome(w.views.size()), params);
  for (;;) {
    bool improved = false;
    std::size_t pick = 0;
    double pick_fitness = current.fitness;
    for (std::size_t v = 0; v < w.views.size(); ++v) {
      if (current.chromosome.test(v)) continue;
      if (current.objectives.memory_usage + w.views[v].storage_size >
          w.constraints.storage_budget) {
        continue;  // additions must stay storage-feasible
      }
      Chromosome candidate = current.chromosome;
      candidate.set(v, true);
      const double f = evaluate(w, std::move(candidate), params).fitness;
      if (f < pick_fitness) {
        pick_fitness = f;
        pick = v;
        improved = true;
      }
    }
    if (!improved) break;
    Chromosome next = current.chromosome;
    next.set(pick, true);
    current = evaluate(w, std::move(next), params);
  }
  return current;
}

EvaluatedIndividual random_baseline(const Workload& w, const FitnessParams& params, int samples,
                                    std::mt19937_64& rng) {
  validate(w);
  validate(params);
  if (samples < 1) throw std::invalid_argument("random_baseline: samples must be >= 1");

  bool have_feasible = false;
  EvaluatedIndividual best_feasible;
  EvaluatedIndividual best_any;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int s = 0; s < samples; ++s) {
    Chromosome c(w.views.size());
    for (std::size_t v = 0; v < c.size(); ++v) c.set(v, unit(rng) < 0.5);
    EvaluatedIndividual ind = evaluate(w, std::move(c), params);
    if (s == 0 || ind.fitness < best_any.fitness) best_any = ind;
    if (ind.feasible && (!have_feasible || ind.fitness < best_feasible.fitness)) {
      best_feasible = std::move(ind);
      have_feasible = true;
    }
  }
  return have_feasible ? best_feasible : best_any;
}

}  // namespace mvopt
