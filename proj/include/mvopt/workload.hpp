#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mvopt/chromosome.hpp"

namespace mvopt {

struct Query {
  int id = 0;
  double weight = 1.0;     // relative frequency, dimensionless
  double base_cost = 0.0;  // cost to answer without any materialized view

  bool operator==(const Query&) const = default;
};

struct CandidateView {
  int id = 0;
  double storage_size = 0.0;      // bytes
  double maintenance_cost = 0.0;  // cost units per refresh cycle
  /// query id -> cost to answer that query through this view.
  /// Absence means the view cannot answer the query.
  std::map<int, double> answer_costs;

  bool operator==(const CandidateView&) const = default;
};

struct Constraints {
  double storage_budget = 0.0;  // bytes, cap on total materialized storage
  std::optional<double> max_response_time;

  bool operator==(const Constraints&) const = default;
};

/// One optimization instance: queries, candidate views, constraints.
/// Immutable after load; safe to share read-only across threads.
struct Workload {
  std::string name;
  std::vector<Query> queries;
  std::vector<CandidateView> views;
  Constraints constraints;

  bool operator==(const Workload&) const = default;
};

/// Raw objective triple for one configuration.
struct Objectives {
  double response_time = 0.0;     // cost units
  double maintenance_cost = 0.0;  // cost units
  double memory_usage = 0.0;      // bytes

  bool operator==(const Objectives&) const = default;
};

/// Checks every Workload invariant and throws ValidationError naming the
/// first violated one. Invariants: >=1 query and view, contiguous 0-based
/// ids, weight >= 0, base_cost > 0, storage_size > 0, maintenance_cost >= 0,
/// answer costs positive, referenced queries exist, and no answer cost above
/// the query's base cost.
void validate(const Workload& w);

/// Cheapest way to answer each query under `config`: min of the base cost
/// and the best materialized view covering it. Unweighted; these are the
/// lexicase test-case scores.
std::vector<double> per_query_costs(const Workload& w, const Chromosome& config);

/// (weighted response time, total maintenance cost, total storage) of a
/// configuration. Pure; throws std::invalid_argument on length mismatch.
Objectives compute_objectives(const Workload& w, const Chromosome& config);

struct CostRanges {
  double base_cost_min = 1e4;
  double base_cost_max = 1e6;
  double weight_min = 0.5;
  double weight_max = 2.0;
  /// Storage and maintenance are sampled log-uniformly across wide spreads:
  /// a few oversized candidates dominate the storage pool (and therefore the
  /// budget), so the knapsack constraint binds through exclusion of the heavy
  /// tail rather than by crowding out the small views that drive response
  /// time.
  double storage_min = 1e1;  // bytes
  double storage_max = 1e10;
  double maintenance_min = 1e-4;
  double maintenance_max = 1e6;
  /// Answer cost as a fraction of the query's base cost.
  double answer_fraction_min = 0.05;
  double answer_fraction_max = 0.5;
  /// Storage budget as a share of the total candidate-view storage.
  double budget_fraction = 0.4;

  bool operator==(const CostRanges&) const = default;
};

struct GeneratorSpec {
  int num_queries = 22;
  int num_views = 40;
  /// Per-view probability of covering each query; coverage is redrawn until
  /// nonempty.
  double coverage_density = 0.3;
  std::uint64_t rng_seed = 0;
  CostRanges cost_ranges;
  std::optional<double> max_response_time;
  std::string name;  // empty: derived from the parameters
};

/// Deterministic synthetic instance in the shape of a decision-support
/// workload: a couple dozen heavy queries and a pool of candidate views
/// whose combined storage exceeds the budget.
Workload generate_workload(const GeneratorSpec& spec);

/// Reads a workload document (JSON, see README). Throws IoError when the
/// file cannot be read, ValidationError on malformed or invalid content.
Workload load_workload(const std::string& path);

/// Writes the workload document; load_workload(save_workload(w)) == w.
void save_workload(const Workload& w, const std::string& path);

}  // namespace mvopt
