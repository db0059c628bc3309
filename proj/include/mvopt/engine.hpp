#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "mvopt/fitness.hpp"
#include "mvopt/operators.hpp"
#include "mvopt/workload.hpp"

namespace mvopt {

struct RunConfig {
  int population_size = 50;
  int generations = 200;
  int pilot_samples = 500;
  int pilot_view_min = 5;
  int pilot_view_max = 10;
  /// Fraction of the pilot study seeded into the initial population.
  double seed_fraction = 0.05;
  int elitism_count = 2;
  std::uint64_t rng_seed = 0;
  FitnessConfig fitness;
  LexicaseConfig lexicase;
  CrossoverConfig crossover;
  MutationConfig mutation;
  /// Also record every individual's fitness per generation (large).
  bool record_all_fitness = false;

  bool operator==(const RunConfig&) const = default;
};

void validate(const RunConfig& cfg);

struct GenerationRecord {
  int generation = 0;
  double best_fitness = 0.0;
  double mean_fitness = 0.0;
  double population_similarity = 0.0;
  double mutation_rate_used = 0.0;
  std::vector<double> all_fitness;  // filled only when record_all_fitness is set
};

struct RunReport {
  EvaluatedIndividual best;  // always feasible
  std::vector<GenerationRecord> trajectory;
  double wall_time_seconds = 0.0;
  std::int64_t evaluations = 0;  // pilot_samples + generations * population_size
  RunConfig config;              // as supplied
  FitnessParams fitness_params;  // fully resolved values used for the run
  std::string workload_name;
};

struct SeededPopulation {
  std::vector<Chromosome> chromosomes;  // length = population_size
  /// Leading entries taken from the pilot study, best fitness first.
  std::size_t elite_count = 0;
  /// Every pilot sample's fitness, ascending.
  std::vector<double> pilot_fitness;
};

/// Pilot study: evaluates pilot_samples random configurations whose set-bit
/// counts are uniform in [pilot_view_min, min(pilot_view_max, V)], seeds the
/// population with the best ceil(seed_fraction * pilot_samples) of them and
/// fills the remaining slots with fresh random configurations from the same
/// distribution.
SeededPopulation pilot_seed(const Workload& w, const RunConfig& cfg, const FitnessParams& params,
                            std::mt19937_64& rng);

/// Runs the full genetic algorithm: pilot seeding, then `generations` rounds
/// of evaluate -> record -> elitism + (lexicase -> blend crossover -> mutate)
/// offspring. The reported best is the lowest-fitness feasible individual
/// evaluated in the generational loop; when none was feasible the best
/// penalized individual is repaired by dropping views with the least
/// response-time benefit per byte until it fits the budget. Deterministic
/// given rng_seed. Throws NoFeasibleError when the response-time cap cannot
/// be met.
RunReport evolve(const Workload& w, const RunConfig& cfg);

/// Minimum-fitness feasible configuration over all 2^V, ties broken by the
/// lexicographically smallest bitstring. Guarded to V <= 24; throws
/// NoFeasibleError when the constraints exclude every configuration.
EvaluatedIndividual exhaustive_oracle(const Workload& w, const FitnessParams& params);

/// Hill climber: starting empty, repeatedly adds the view with the largest
/// fitness decrease while staying within the storage budget; stops when no
/// addition improves fitness. Ties go to the lowest view id.
EvaluatedIndividual greedy_baseline(const Workload& w, const FitnessParams& params);

/// Best feasible individual among `samples` uniform random configurations
/// (each bit a fair coin). When no sample is feasible, returns the lowest
/// penalized-fitness sample, flagged infeasible.
EvaluatedIndividual random_baseline(const Workload& w, const FitnessParams& params, int samples,
                                    std::mt19937_64& rng);

}  // namespace mvopt
