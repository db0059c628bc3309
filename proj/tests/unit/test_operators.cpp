#include "mvopt/operators.hpp"

#include <array>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "mvopt/errors.hpp"

using namespace mvopt;

namespace {

EvaluatedIndividual with_costs(std::vector<double> costs) {
  EvaluatedIndividual ind;
  ind.per_query_costs = std::move(costs);
  return ind;
}

// A=(1,9), B=(9,1), C=(5,5): A wins query 0 outright, B wins query 1.
std::vector<EvaluatedIndividual> abc_population() {
  return {with_costs({1.0, 9.0}), with_costs({9.0, 1.0}), with_costs({5.0, 5.0})};
}

Chromosome bits(const char* s) { return Chromosome::from_string(s); }

}  // namespace

TEST_CASE("operator configs validate their invariants") {
  CHECK_THROWS_AS(validate(LexicaseConfig{EpsilonMode::exact, 1}), ValidationError);
  CHECK_THROWS_AS(validate(CrossoverConfig{-0.1, 2}), ValidationError);
  CHECK_THROWS_AS(validate(CrossoverConfig{0.5, 1}), ValidationError);
  CHECK_THROWS_AS(validate(MutationConfig{0.5, 0.4}), ValidationError);
  CHECK_THROWS_AS(validate(MutationConfig{-0.01, 0.4}), ValidationError);
  CHECK_THROWS_AS(validate(MutationConfig{0.1, 1.2}), ValidationError);
  CHECK_NOTHROW(validate(MutationConfig{0.25, 0.25}));
}

TEST_CASE("lexicase filter on a fixed query order") {
  const auto population = abc_population();
  const LexicaseConfig cfg{EpsilonMode::exact, 2};
  std::mt19937_64 rng(0);

  const std::array<std::size_t, 2> order01{0, 1};
  const auto first = lexicase_select_ordered(population, order01, cfg, rng);
  CHECK(first == std::vector<std::size_t>{0, 0});

  const std::array<std::size_t, 2> order10{1, 0};
  const auto second = lexicase_select_ordered(population, order10, cfg, rng);
  CHECK(second == std::vector<std::size_t>{1, 1});
}

TEST_CASE("lexicase selection frequencies match the analytic ordering probabilities") {
  const auto population = abc_population();
  const LexicaseConfig cfg{EpsilonMode::exact, 2};
  std::mt19937_64 rng(42);
  int a = 0, b = 0, c = 0;
  const int draws = 10000;
  for (int i = 0; i < draws; ++i) {
    const auto picked = lexicase_select(population, cfg, rng);
    CHECK(picked.size() == 2);
    for (std::size_t idx : picked) CHECK(idx < population.size());
    if (picked[0] == 0) ++a;
    if (picked[0] == 1) ++b;
    if (picked[0] == 2 || picked[1] == 2) ++c;
  }
  CHECK(std::abs(a / double(draws) - 0.5) < 0.02);
  CHECK(std::abs(b / double(draws) - 0.5) < 0.02);
  CHECK(c == 0);
}

TEST_CASE("lexicase degenerate and error cases") {
  const LexicaseConfig cfg{EpsilonMode::exact, 2};
  std::mt19937_64 rng(1);

  const std::vector<EvaluatedIndividual> lone{with_costs({3.0, 4.0})};
  CHECK(lexicase_select(lone, cfg, rng) == std::vector<std::size_t>{0, 0});

  CHECK_THROWS_AS(lexicase_select(std::vector<EvaluatedIndividual>{}, cfg, rng),
                  std::invalid_argument);

  std::vector<EvaluatedIndividual> ragged{with_costs({1.0}), with_costs({1.0, 2.0})};
  CHECK_THROWS_AS(lexicase_select(ragged, cfg, rng), std::invalid_argument);
}

TEST_CASE("single-query exact lexicase returns argmin individuals, ties drawn uniformly") {
  std::vector<EvaluatedIndividual> population{with_costs({5.0}), with_costs({1.0}),
                                              with_costs({9.0}), with_costs({1.0})};
  const LexicaseConfig cfg{EpsilonMode::exact, 2};
  std::mt19937_64 rng(9);
  int saw1 = 0, saw3 = 0;
  for (int i = 0; i < 2000; ++i) {
    for (std::size_t idx : lexicase_select(population, cfg, rng)) {
      CHECK((idx == 1 || idx == 3));
      if (idx == 1) ++saw1;
      if (idx == 3) ++saw3;
    }
  }
  CHECK(saw1 > 1500);
  CHECK(saw3 > 1500);
}

TEST_CASE("mad epsilon keeps near-best individuals") {
  // Costs 1.0, 1.05, 9.0: median 1.05, deviations (0.05, 0, 7.95), MAD 0.05,
  // so the keep threshold is 1.05 and the outlier is filtered out.
  std::vector<EvaluatedIndividual> population{with_costs({1.0}), with_costs({1.05}),
                                              with_costs({9.0})};
  const LexicaseConfig cfg{EpsilonMode::mad, 2};
  std::mt19937_64 rng(2);
  for (int i = 0; i < 50; ++i) {
    const auto picked = lexicase_select(population, cfg, rng);
    for (std::size_t idx : picked) CHECK(idx < 2);
  }
}

TEST_CASE("pool larger than the target after all queries is drawn down uniformly") {
  // All individuals tie on the single query, so the pool never shrinks.
  std::vector<EvaluatedIndividual> population{with_costs({2.0}), with_costs({2.0}),
                                              with_costs({2.0}), with_costs({2.0})};
  const LexicaseConfig cfg{EpsilonMode::exact, 2};
  std::mt19937_64 rng(3);
  std::array<int, 4> seen{};
  for (int i = 0; i < 4000; ++i) {
    const auto picked = lexicase_select(population, cfg, rng);
    CHECK(picked.size() == 2);
    CHECK(picked[0] != picked[1]);
    for (std::size_t idx : picked) ++seen[idx];
  }
  for (int count : seen) CHECK(count > 1700);
}

TEST_CASE("blend crossover inherits unanimous loci and flips fair coins elsewhere") {
  const CrossoverConfig cfg{0.5, 2};
  std::mt19937_64 rng(7);

  SUBCASE("identical parents give an identical child") {
    const std::vector<Chromosome> parents{bits("110010"), bits("110010")};
    for (int i = 0; i < 20; ++i) CHECK(blend_crossover(parents, cfg, rng) == parents[0]);
  }

  SUBCASE("differing loci are unbiased for every alpha") {
    const std::vector<Chromosome> parents{bits("1100"), bits("1010")};
    for (double alpha : {0.0, 0.25, 0.5, 2.0}) {
      const CrossoverConfig c{alpha, 2};
      int ones1 = 0, ones2 = 0;
      const int trials = 4000;
      for (int i = 0; i < trials; ++i) {
        const Chromosome child = blend_crossover(parents, c, rng);
        CHECK(child.test(0));
        CHECK_FALSE(child.test(3));
        ones1 += child.test(1);
        ones2 += child.test(2);
      }
      const double sigma = std::sqrt(0.25 / trials);
      CHECK(std::abs(ones1 / double(trials) - 0.5) < 4.0 * sigma);
      CHECK(std::abs(ones2 / double(trials) - 0.5) < 4.0 * sigma);
    }
  }

  SUBCASE("three parents: only fully unanimous loci are fixed") {
    const std::vector<Chromosome> parents{bits("1100"), bits("1010"), bits("1001")};
    for (int i = 0; i < 50; ++i) {
      const Chromosome child = blend_crossover(parents, cfg, rng);
      CHECK(child.test(0));
    }
  }

  SUBCASE("errors") {
    CHECK_THROWS_AS(blend_crossover(std::vector<Chromosome>{bits("11")}, cfg, rng),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        blend_crossover(std::vector<Chromosome>{bits("11"), bits("101")}, cfg, rng),
        std::invalid_argument);
  }
}

TEST_CASE("mean pairwise similarity") {
  CHECK(mean_pairwise_similarity(std::vector<Chromosome>{bits("10110")}) == 1.0);
  CHECK(mean_pairwise_similarity(std::vector<Chromosome>{bits("1100"), bits("1010"),
                                                         bits("1001")}) == 0.5);
  CHECK(mean_pairwise_similarity(std::vector<Chromosome>{bits("111"), bits("111"),
                                                         bits("111")}) == 1.0);
  CHECK(mean_pairwise_similarity(std::vector<Chromosome>{bits("1010"), bits("0101")}) == 0.0);
  CHECK_THROWS_AS(mean_pairwise_similarity(std::vector<Chromosome>{}), std::invalid_argument);
}

TEST_CASE("adaptive mutation rate interpolates between its bounds") {
  const MutationConfig cfg{0.01, 0.25};

  const std::vector<Chromosome> same{bits("1100"), bits("1100"), bits("1100")};
  CHECK(adaptive_mutation_rate(same, cfg) == 0.25);

  const std::vector<Chromosome> opposite{bits("1010"), bits("0101")};
  CHECK(adaptive_mutation_rate(opposite, cfg) == 0.01);

  const std::vector<Chromosome> spread{bits("1100"), bits("1010"), bits("1001")};
  CHECK(adaptive_mutation_rate(spread, cfg) == doctest::Approx(0.13).epsilon(1e-15));

  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> bit(0, 1);
  std::uniform_int_distribution<int> size(2, 12);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Chromosome> population;
    const int n = size(rng);
    for (int i = 0; i < n; ++i) {
      Chromosome c(9);
      for (std::size_t j = 0; j < 9; ++j) c.set(j, bit(rng));
      population.push_back(c);
    }
    const double rate = adaptive_mutation_rate(population, cfg);
    CHECK(rate >= cfg.rate_min);
    CHECK(rate <= cfg.rate_max);
  }
}

TEST_CASE("mutation flips bits at the requested rate") {
  std::mt19937_64 rng(23);
  const Chromosome c = bits("110101");

  CHECK(mutate(c, 0.0, rng) == c);

  Chromosome complement = c;
  for (std::size_t i = 0; i < complement.size(); ++i) complement.flip(i);
  CHECK(mutate(c, 1.0, rng) == complement);

  CHECK_THROWS_AS(mutate(c, -0.1, rng), std::invalid_argument);
  CHECK_THROWS_AS(mutate(c, 1.1, rng), std::invalid_argument);

  SUBCASE("flip counts follow binomial statistics") {
    const Chromosome big(1000);
    const int trials = 300;
    double total_flips = 0.0;
    for (int t = 0; t < trials; ++t) {
      total_flips += static_cast<double>(mutate(big, 0.1, rng).count());
    }
    const double mean = total_flips / trials;
    const double sigma_of_mean = std::sqrt(1000 * 0.1 * 0.9 / trials);
    CHECK(std::abs(mean - 100.0) <= 3.0 * sigma_of_mean);
  }
}

TEST_CASE("stochastic operators are deterministic given the rng state") {
  const auto population = abc_population();
  const LexicaseConfig lex{EpsilonMode::exact, 2};
  const CrossoverConfig cross{0.5, 2};
  const std::vector<Chromosome> parents{bits("110010"), bits("011010")};

  std::mt19937_64 r1(77), r2(77);
  for (int i = 0; i < 30; ++i) {
    CHECK(lexicase_select(population, lex, r1) == lexicase_select(population, lex, r2));
    CHECK(blend_crossover(parents, cross, r1) == blend_crossover(parents, cross, r2));
    CHECK(mutate(parents[0], 0.3, r1) == mutate(parents[0], 0.3, r2));
  }
}
