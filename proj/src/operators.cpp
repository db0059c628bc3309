#include "mvopt/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "mvopt/errors.hpp"

namespace mvopt {

void validate(const LexicaseConfig& cfg) {
  if (cfg.target_survivors < 2) {
    throw ValidationError("lexicase: target_survivors must be >= 2");
  }
}

void validate(const CrossoverConfig& cfg) {
  if (!(cfg.alpha >= 0.0)) throw ValidationError("crossover: alpha must be >= 0");
  if (cfg.num_parents < 2) throw ValidationError("crossover: num_parents must be >= 2");
}

void validate(const MutationConfig& cfg) {
  if (!(cfg.rate_min >= 0.0) || !(cfg.rate_max <= 1.0) || !(cfg.rate_min <= cfg.rate_max)) {
    throw ValidationError("mutation: rates must satisfy 0 <= rate_min <= rate_max <= 1");
  }
}

namespace {

double median(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const std::size_t mid = xs.size() / 2;
  if (xs.size() % 2 == 1) return xs[mid];
  return 0.5 * (xs[mid - 1] + xs[mid]);
}

// Median absolute deviation of the pool's costs on one query.
double mad(const std::vector<double>& xs) {
  const double med = median(xs);
  std::vector<double> dev;
  dev.reserve(xs.size());
  for (double x : xs) dev.push_back(std::abs(x - med));
  return median(std::move(dev));
}

std::size_t checked_query_count(const std::vector<EvaluatedIndividual>& population) {
  if (population.empty()) throw std::invalid_argument("lexicase: empty population");
  const std::size_t q = population.front().per_query_costs.size();
  for (const EvaluatedIndividual& ind : population) {
    if (ind.per_query_costs.size() != q) {
      throw std::invalid_argument("lexicase: inconsistent per-query cost vector lengths");
    }
  }
  return q;
}

}  // namespace

std::vector<std::size_t> lexicase_select_ordered(const std::vector<EvaluatedIndividual>& population,
                                                 std::span<const std::size_t> query_order,
                                                 const LexicaseConfig& cfg, std::mt19937_64& rng) {
  validate(cfg);
  const std::size_t num_queries = checked_query_count(population);
  const std::size_t target = static_cast<std::size_t>(cfg.target_survivors);

  std::vector<std::size_t> pool(population.size());
  std::iota(pool.begin(), pool.end(), std::size_t{0});

  std::vector<double> pool_costs;
  for (std::size_t query : query_order) {
    if (pool.size() <= target) break;
    if (query >= num_queries) {
      throw std::invalid_argument("lexicase: query index out of range");
    }
    pool_costs.clear();
    for (std::size_t i : pool) pool_costs.push_back(population[i].per_query_costs[query]);
    const double best = *std::min_element(pool_costs.begin(), pool_costs.end());
    const double eps = cfg.epsilon_mode == EpsilonMode::exact ? 0.0 : mad(pool_costs);

    std::vector<std::size_t> kept;
    for (std::size_t i : pool) {
      if (population[i].per_query_costs[query] <= best + eps) kept.push_back(i);
    }
    pool = std::move(kept);
  }

  if (pool.size() > target) {
    // Queries exhausted with ties left: draw uniformly without replacement.
    for (std::size_t i = 0; i < target; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, pool.size() - 1);
      std::swap(pool[i], pool[pick(rng)]);
    }
    pool.resize(target);
  } else if (pool.size() < target) {
    // The filter collapsed below the target; pad by repetition.
    const std::size_t have = pool.size();
    for (std::size_t i = have; i < target; ++i) pool.push_back(pool[i % have]);
  }
  return pool;
}

std::vector<std::size_t> lexicase_select(const std::vector<EvaluatedIndividual>& population,
                                         const LexicaseConfig& cfg, std::mt19937_64& rng) {
  const std::size_t num_queries = checked_query_count(population);
  std::vector<std::size_t> order(num_queries);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::shuffle(order.begin(), order.end(), rng);
  return lexicase_select_ordered(population, order, cfg, rng);
}

Chromosome blend_crossover(std::span<const Chromosome> parents, const CrossoverConfig& cfg,
                           std::mt19937_64& rng) {
  validate(cfg);
  if (parents.size() < 2) {
    throw std::invalid_argument("blend_crossover: need at least 2 parents");
  }
  const std::size_t length = parents.front().size();
  for (const Chromosome& p : parents) {
    if (p.size() != length) {
      throw std::invalid_argument("blend_crossover: parent length mismatch");
    }
  }

  Chromosome child(length);
  for (std::size_t locus = 0; locus < length; ++locus) {
    std::uint8_t lo = 1, hi = 0;
    for (const Chromosome& p : parents) {
      const std::uint8_t b = p.bits()[locus];
      lo = std::min(lo, b);
      hi = std::max(hi, b);
    }
    if (lo == hi) {
      child.set(locus, lo != 0);  // unanimous locus inherited directly
      continue;
    }
    const double span = static_cast<double>(hi - lo);
    std::uniform_real_distribution<double> blend(lo - cfg.alpha * span, hi + cfg.alpha * span);
    child.set(locus, blend(rng) > 0.5);
  }
  return child;
}

double mean_pairwise_similarity(std::span<const Chromosome> population) {
  if (population.empty()) {
    throw std::invalid_argument("mean_pairwise_similarity: empty population");
  }
  const std::size_t n = population.size();
  if (n == 1) return 1.0;
  const std::size_t length = population.front().size();
  for (const Chromosome& c : population) {
    if (c.size() != length) {
      throw std::invalid_argument("mean_pairwise_similarity: length mismatch");
    }
  }
  if (length == 0) return 1.0;

  // Per-position agreement counting: k set bits at a position contribute
  // C(k,2) + C(n-k,2) agreeing pairs. Integer arithmetic until the final
  // division keeps the all-identical and complementary-pair cases exact.
  std::uint64_t agreements = 0;
  for (std::size_t pos = 0; pos < length; ++pos) {
    std::uint64_t ones = 0;
    for (const Chromosome& c : population) ones += c.bits()[pos];
    const std::uint64_t zeros = n - ones;
    agreements += ones * (ones - 1) / 2 + zeros * (zeros - 1) / 2;
  }
  const std::uint64_t pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  return static_cast<double>(agreements) / (static_cast<double>(pairs) * static_cast<double>(length));
}

double adaptive_mutation_rate(std::span<const Chromosome> population, const MutationConfig& cfg) {
  validate(cfg);
  const double s = mean_pairwise_similarity(population);
  // Written as a convex combination so s = 0 and s = 1 hit the bounds exactly.
  const double rate = cfg.rate_min * (1.0 - s) + cfg.rate_max * s;
  return std::clamp(rate, cfg.rate_min, cfg.rate_max);
}

Chromosome mutate(const Chromosome& c, double rate, std::mt19937_64& rng) {
  if (!(rate >= 0.0) || !(rate <= 1.0)) {
    throw std::invalid_argument("mutate: rate must be in [0, 1]");
  }
  Chromosome out = c;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (unit(rng) < rate) out.flip(i);
  }
  return out;
}

}  // namespace mvopt
