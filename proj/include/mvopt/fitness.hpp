#pragma once

#include <optional>
#include <vector>

#include "mvopt/chromosome.hpp"
#include "mvopt/workload.hpp"

namespace mvopt {

/// Fully resolved shaping/weighting parameters. All fields concrete; use
/// resolve_fitness_params to fill workload-dependent defaults.
struct FitnessParams {
  double w1 = 0.5;  // response time weight
  double w2 = 0.2;  // maintenance cost weight
  double w3 = 0.3;  // memory usage weight
  double max_response_time_norm = 1.0;
  double max_maintenance_cost_norm = 1.0;
  double x0 = 0.0;             // memory sigmoid center, bytes
  double sigmoid_scale = 1.0;  // memory sigmoid width, bytes
  /// Additive penalty per unit of fractional constraint overrun.
  double penalty_coefficient = 10.0;
  /// Flip the memory sigmoid so it decreases as usage grows (the uncorrected
  /// orientation, which rewards memory consumption). Off by default; kept for
  /// side-by-side study only.
  bool decreasing_memory_shape = false;

  bool operator==(const FitnessParams&) const = default;
};

/// Throws ValidationError unless weights are non-negative with a positive
/// sum, normalizers and sigmoid_scale are positive, and the penalty
/// coefficient is positive.
void validate(const FitnessParams& p);

/// File/CLI-facing knobs. Unset normalizers and sigmoid parameters are
/// filled in from the workload by resolve_fitness_params.
struct FitnessConfig {
  double w1 = 0.5;
  double w2 = 0.2;
  double w3 = 0.3;
  std::optional<double> max_response_time_norm;
  std::optional<double> max_maintenance_cost_norm;
  std::optional<double> x0;
  std::optional<double> sigmoid_scale;
  double penalty_coefficient = 10.0;
  bool decreasing_memory_shape = false;

  bool operator==(const FitnessConfig&) const = default;
};

struct Normalizers {
  double response_time = 1.0;
  double maintenance_cost = 1.0;
};

/// Response-time normalizer: cost of the empty configuration (its maximum,
/// by monotonicity). Maintenance normalizer: cost of materializing every
/// candidate view. Zero values clamp to 1 so the shaped terms stay defined.
Normalizers default_normalizers(const Workload& w);

/// FitnessConfig -> FitnessParams with workload-dependent defaults:
/// normalizers from default_normalizers, x0 = storage budget,
/// sigmoid_scale = budget / 10. Validates the result.
FitnessParams resolve_fitness_params(const FitnessConfig& cfg, const Workload& w);

/// response_time / max_response_time_norm.
double shape_response(double response_time, const FitnessParams& p);

/// maintenance_cost / max_maintenance_cost_norm.
double shape_maintenance(double maintenance_cost, const FitnessParams& p);

/// Logistic shaping of memory usage: 1 / (1 + exp(-(mem - x0)/scale)).
/// 0.5 at x0, rising towards 1 as usage grows; numerically stable for
/// arguments hundreds of scales away from the center.
double shape_memory(double memory_usage, const FitnessParams& p);

struct FitnessResult {
  double value = 0.0;
  bool feasible = false;
};

/// Weighted shaped sum w1*f1 + w2*f2 + w3*f3, lower is better. Feasibility
/// means memory within the storage budget and response time within the cap
/// (when one is set); infeasible configurations get an additive
/// penalty_coefficient * (sum of fractional overruns).
FitnessResult fitness(const Objectives& obj, const FitnessParams& p, const Constraints& c);

struct EvaluatedIndividual {
  Chromosome chromosome;
  Objectives objectives;
  /// Per-query effective costs (unweighted); the lexicase test-case scores.
  std::vector<double> per_query_costs;
  double fitness = 0.0;
  bool feasible = false;
};

/// Full evaluation of one configuration against the workload's constraints.
EvaluatedIndividual evaluate(const Workload& w, Chromosome config, const FitnessParams& p);

}  // namespace mvopt
