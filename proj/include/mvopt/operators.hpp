#pragma once

#include <random>
#include <span>
#include <vector>

#include "mvopt/chromosome.hpp"
#include "mvopt/fitness.hpp"

namespace mvopt {

enum class EpsilonMode {
  exact,  // keep only the per-query best
  mad     // keep everything within one median absolute deviation of the best
};

struct LexicaseConfig {
  EpsilonMode epsilon_mode = EpsilonMode::mad;
  int target_survivors = 2;

  bool operator==(const LexicaseConfig&) const = default;
};

struct CrossoverConfig {
  double alpha = 0.5;  // blend interval expansion
  int num_parents = 2;

  bool operator==(const CrossoverConfig&) const = default;
};

struct MutationConfig {
  double rate_min = 0.01;
  double rate_max = 0.25;

  bool operator==(const MutationConfig&) const = default;
};

void validate(const LexicaseConfig& cfg);
void validate(const CrossoverConfig& cfg);
void validate(const MutationConfig& cfg);

/// Lexicase parent selection: shuffles the query indices, then repeatedly
/// keeps the individuals within epsilon of the pool best on the current
/// query until at most target_survivors remain. A pool still larger after
/// all queries is sampled down uniformly; a pool that collapsed below the
/// target is padded by repetition. Returns indices into `population`.
std::vector<std::size_t> lexicase_select(const std::vector<EvaluatedIndividual>& population,
                                         const LexicaseConfig& cfg, std::mt19937_64& rng);

/// Same filter with a caller-supplied query order. rng is used only for the
/// final uniform draw when the pool never shrinks to the target.
std::vector<std::size_t> lexicase_select_ordered(const std::vector<EvaluatedIndividual>& population,
                                                 std::span<const std::size_t> query_order,
                                                 const LexicaseConfig& cfg, std::mt19937_64& rng);

/// Blend crossover restricted to loci where the parents disagree; unanimous
/// loci are inherited unchanged. At a differing locus the blend interval
/// [lo - alpha, hi + alpha] is symmetric about 1/2, so thresholding the
/// sample at 1/2 makes the child bit a fair coin for every alpha.
/// Requires >= 2 parents of equal length.
Chromosome blend_crossover(std::span<const Chromosome> parents, const CrossoverConfig& cfg,
                           std::mt19937_64& rng);

/// Mean pairwise Hamming similarity over all unordered pairs; defined as 1
/// for a single-chromosome population.
double mean_pairwise_similarity(std::span<const Chromosome> population);

/// rate_min + (rate_max - rate_min) * mean pairwise similarity, clamped to
/// the bounds: homogeneous populations mutate the most.
double adaptive_mutation_rate(std::span<const Chromosome> population, const MutationConfig& cfg);

/// Flips each bit independently with probability rate.
/// Throws std::invalid_argument when rate is outside [0, 1].
Chromosome mutate(const Chromosome& c, double rate, std::mt19937_64& rng);

}  // namespace mvopt
