#include "mvopt/workload.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <random>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "helpers.hpp"
#include "mvopt/errors.hpp"
#include "text_file.hpp"

using namespace mvopt;

namespace {

std::string temp_path(const std::string& stem) {
  static int counter = 0;
  return (std::filesystem::temp_directory_path() /
          (stem + "-" + std::to_string(++counter) + ".json"))
      .string();
}

}  // namespace

TEST_CASE("validation accepts the smallest instance and names violations") {
  Workload w = testhelp::single_view_workload();
  CHECK_NOTHROW(validate(w));

  SUBCASE("dangling query reference") {
    w.views[0].answer_costs = {{5, 10.0}};
    CHECK_THROWS_WITH_AS(validate(w),
                         doctest::Contains("references query 5"), ValidationError);
  }
  SUBCASE("answer cost above base cost") {
    w.views[0].answer_costs = {{0, 101.0}};
    CHECK_THROWS_WITH_AS(validate(w), doctest::Contains("exceeds"), ValidationError);
  }
  SUBCASE("non-contiguous view ids") {
    w.views[0].id = 3;
    CHECK_THROWS_AS(validate(w), ValidationError);
  }
  SUBCASE("non-positive base cost") {
    w.queries[0].base_cost = 0.0;
    CHECK_THROWS_AS(validate(w), ValidationError);
  }
  SUBCASE("negative weight") {
    w.queries[0].weight = -1.0;
    CHECK_THROWS_AS(validate(w), ValidationError);
  }
  SUBCASE("non-positive budget") {
    w.constraints.storage_budget = 0.0;
    CHECK_THROWS_AS(validate(w), ValidationError);
  }
  SUBCASE("no queries") {
    w.queries.clear();
    CHECK_THROWS_AS(validate(w), ValidationError);
  }
}

TEST_CASE("objectives of the empty and full single-view configurations") {
  const Workload w = testhelp::single_view_workload();

  const Objectives empty = compute_objectives(w, Chromosome(1));
  CHECK(empty.response_time == 100.0);
  CHECK(empty.maintenance_cost == 0.0);
  CHECK(empty.memory_usage == 0.0);

  const Objectives full = compute_objectives(w, Chromosome::from_string("1"));
  CHECK(full.response_time == 10.0);
  CHECK(full.maintenance_cost == 5.0);
  CHECK(full.memory_usage == 50.0);

  CHECK_THROWS_AS(compute_objectives(w, Chromosome(2)), std::invalid_argument);
}

TEST_CASE("hand-enumerated objectives for the three-view instance") {
  const Workload w = testhelp::three_view_workload();
  const struct {
    const char* bits;
    double rt, mc, mem;
  } table[] = {
      {"000", 260, 0, 0},  {"100", 170, 5, 50},  {"010", 140, 4, 60},  {"001", 110, 2, 40},
      {"110", 50, 9, 110}, {"101", 90, 7, 90},   {"011", 70, 6, 100}, {"111", 50, 11, 150},
  };
  for (const auto& row : table) {
    CAPTURE(row.bits);
    const Objectives obj = compute_objectives(w, Chromosome::from_string(row.bits));
    CHECK(obj.response_time == row.rt);
    CHECK(obj.maintenance_cost == row.mc);
    CHECK(obj.memory_usage == row.mem);
  }
}

TEST_CASE("objectives match a brute-force recomputation on random instances") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    GeneratorSpec spec;
    spec.num_queries = 3;
    spec.num_views = 3;
    spec.rng_seed = rng();
    const Workload w = generate_workload(spec);

    for (std::uint32_t mask = 0; mask < 8; ++mask) {
      Chromosome config(3);
      for (std::size_t v = 0; v < 3; ++v) config.set(v, (mask >> v) & 1u);

      double rt = 0.0, mc = 0.0, mem = 0.0;
      for (const Query& q : w.queries) {
        double cost = q.base_cost;
        for (const CandidateView& v : w.views) {
          if (!config.test(v.id)) continue;
          const auto it = v.answer_costs.find(q.id);
          if (it != v.answer_costs.end() && it->second < cost) cost = it->second;
        }
        rt += q.weight * cost;
      }
      for (const CandidateView& v : w.views) {
        if (config.test(v.id)) {
          mc += v.maintenance_cost;
          mem += v.storage_size;
        }
      }

      const Objectives obj = compute_objectives(w, config);
      CHECK(obj.response_time == doctest::Approx(rt).epsilon(1e-14));
      CHECK(obj.maintenance_cost == mc);
      CHECK(obj.memory_usage == mem);
    }
  }
}

TEST_CASE("materializing one more view never hurts response time") {
  GeneratorSpec spec;
  spec.num_queries = 6;
  spec.num_views = 8;
  spec.rng_seed = 99;
  const Workload w = generate_workload(spec);
  const double empty_rt = compute_objectives(w, Chromosome(8)).response_time;

  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> bit(0, 1);
  for (int trial = 0; trial < 100; ++trial) {
    Chromosome config(8);
    for (std::size_t i = 0; i < 8; ++i) config.set(i, bit(rng));
    const Objectives base = compute_objectives(w, config);
    CHECK(base.response_time <= empty_rt);

    for (std::size_t v = 0; v < 8; ++v) {
      if (config.test(v)) continue;
      Chromosome more = config;
      more.set(v, true);
      const Objectives grown = compute_objectives(w, more);
      CHECK(grown.response_time <= base.response_time);
      CHECK(grown.maintenance_cost >= base.maintenance_cost);
      CHECK(grown.memory_usage >= base.memory_usage);
    }
  }
}

TEST_CASE("generator is deterministic and honors its spec") {
  GeneratorSpec spec;
  spec.num_queries = 22;
  spec.num_views = 40;
  spec.coverage_density = 0.3;
  spec.rng_seed = 7;
  const Workload a = generate_workload(spec);
  const Workload b = generate_workload(spec);
  CHECK(a == b);
  CHECK(a.queries.size() == 22);
  CHECK(a.views.size() == 40);
  CHECK_NOTHROW(validate(a));

  double total_storage = 0.0;
  for (const CandidateView& v : a.views) {
    total_storage += v.storage_size;
    CHECK(v.storage_size >= spec.cost_ranges.storage_min);
    CHECK(v.storage_size <= spec.cost_ranges.storage_max);
    CHECK(v.maintenance_cost >= spec.cost_ranges.maintenance_min);
    CHECK(v.maintenance_cost <= spec.cost_ranges.maintenance_max);
    CHECK(!v.answer_costs.empty());
    for (const auto& [q, c] : v.answer_costs) {
      CHECK(c >= 0.05 * a.queries[q].base_cost);
      CHECK(c <= 0.5 * a.queries[q].base_cost);
    }
  }
  CHECK(a.constraints.storage_budget == doctest::Approx(0.4 * total_storage).epsilon(1e-12));
}

TEST_CASE("full coverage density covers every query") {
  GeneratorSpec spec;
  spec.num_queries = 5;
  spec.num_views = 4;
  spec.coverage_density = 1.0;
  spec.rng_seed = 2;
  const Workload w = generate_workload(spec);
  for (const CandidateView& v : w.views) CHECK(v.answer_costs.size() == 5);
}

TEST_CASE("generator rejects invalid specs") {
  GeneratorSpec spec;
  spec.num_queries = 0;
  CHECK_THROWS_AS(generate_workload(spec), ValidationError);
  spec.num_queries = 3;
  spec.coverage_density = 0.0;
  CHECK_THROWS_AS(generate_workload(spec), ValidationError);
  spec.coverage_density = 1.5;
  CHECK_THROWS_AS(generate_workload(spec), ValidationError);
}

TEST_CASE("workload documents round-trip exactly") {
  GeneratorSpec spec;
  spec.num_queries = 9;
  spec.num_views = 11;
  spec.rng_seed = 13;
  spec.max_response_time = 123456.789;
  const Workload w = generate_workload(spec);

  const std::string path = temp_path("roundtrip");
  save_workload(w, path);
  const Workload loaded = load_workload(path);
  CHECK(loaded == w);
  std::filesystem::remove(path);
}

TEST_CASE("minimal workload document parses") {
  const std::string path = temp_path("minimal");
  detail::write_text_file(path, R"({
    "name": "tiny",
    "queries": [{"id": 0, "weight": 1.0, "base_cost": 100.0}],
    "views": [{"id": 0, "storage_size": 50.0, "maintenance_cost": 5.0,
               "answer_costs": [[0, 10.0]]}],
    "constraints": {"storage_budget": 100.0}
  })");
  const Workload w = load_workload(path);
  CHECK(w.queries.size() == 1);
  CHECK(w.views.size() == 1);
  CHECK(w.name == "tiny");
  CHECK(w.views[0].answer_costs.at(0) == 10.0);
  CHECK_FALSE(w.constraints.max_response_time.has_value());
  std::filesystem::remove(path);
}

TEST_CASE("document validation failures") {
  const std::string path = temp_path("invalid");

  SUBCASE("dangling answer-cost reference") {
    detail::write_text_file(path, R"({
      "queries": [{"id": 0, "base_cost": 10.0}, {"id": 1, "base_cost": 10.0},
                  {"id": 2, "base_cost": 10.0}],
      "views": [{"id": 0, "storage_size": 1.0, "maintenance_cost": 0.0,
                 "answer_costs": [[5, 1.0]]}],
      "constraints": {"storage_budget": 10.0}
    })");
    CHECK_THROWS_WITH_AS(load_workload(path), doctest::Contains("query 5"), ValidationError);
  }
  SUBCASE("unknown key") {
    detail::write_text_file(path, R"({
      "queries": [{"id": 0, "base_cost": 10.0}],
      "views": [{"id": 0, "storage_size": 1.0, "maintenance_cost": 0.0,
                 "answer_costs": [[0, 1.0]]}],
      "constraints": {"storage_budget": 10.0},
      "extra": 1
    })");
    CHECK_THROWS_WITH_AS(load_workload(path), doctest::Contains("unknown key"), ValidationError);
  }
  SUBCASE("duplicate answer-cost pair") {
    detail::write_text_file(path, R"({
      "queries": [{"id": 0, "base_cost": 10.0}],
      "views": [{"id": 0, "storage_size": 1.0, "maintenance_cost": 0.0,
                 "answer_costs": [[0, 1.0], [0, 2.0]]}],
      "constraints": {"storage_budget": 10.0}
    })");
    CHECK_THROWS_WITH_AS(load_workload(path), doctest::Contains("twice"), ValidationError);
  }
  SUBCASE("malformed json") {
    detail::write_text_file(path, "{nope");
    CHECK_THROWS_AS(load_workload(path), ValidationError);
  }
  std::filesystem::remove(path);
}

TEST_CASE("missing workload file raises an io error") {
  CHECK_THROWS_AS(load_workload("/nonexistent/w.json"), IoError);
}

TEST_CASE("documents may list entries out of id order") {
  const std::string path = temp_path("unordered");
  detail::write_text_file(path, R"({
    "queries": [{"id": 1, "base_cost": 20.0}, {"id": 0, "base_cost": 10.0}],
    "views": [{"id": 1, "storage_size": 2.0, "maintenance_cost": 0.0,
               "answer_costs": [[1, 5.0]]},
              {"id": 0, "storage_size": 1.0, "maintenance_cost": 0.0,
               "answer_costs": [[0, 5.0]]}],
    "constraints": {"storage_budget": 10.0}
  })");
  const Workload w = load_workload(path);
  CHECK(w.queries[0].id == 0);
  CHECK(w.queries[1].base_cost == 20.0);
  CHECK(w.views[0].id == 0);
  std::filesystem::remove(path);
}
