#include "mvopt/fitness.hpp"

#include <cmath>
#include <utility>

#include "mvopt/errors.hpp"

namespace mvopt {

void validate(const FitnessParams& p) {
  if (!(p.w1 >= 0.0) || !(p.w2 >= 0.0) || !(p.w3 >= 0.0)) {
    throw ValidationError("fitness: weights must be >= 0");
  }
  if (!(p.w1 + p.w2 + p.w3 > 0.0)) {
    throw ValidationError("fitness: w1 + w2 + w3 must be > 0");
  }
  if (!(p.max_response_time_norm > 0.0)) {
    throw ValidationError("fitness: max_response_time_norm must be > 0");
  }
  if (!(p.max_maintenance_cost_norm > 0.0)) {
    throw ValidationError("fitness: max_maintenance_cost_norm must be > 0");
  }
  if (!(p.sigmoid_scale > 0.0)) {
    throw ValidationError("fitness: sigmoid_scale must be > 0");
  }
  if (!(p.penalty_coefficient > 0.0)) {
    throw ValidationError("fitness: penalty_coefficient must be > 0");
  }
}

Normalizers default_normalizers(const Workload& w) {
  Normalizers n;
  double rt = 0.0;
  for (const Query& q : w.queries) rt += q.weight * q.base_cost;
  double maint = 0.0;
  for (const CandidateView& v : w.views) maint += v.maintenance_cost;
  n.response_time = rt > 0.0 ? rt : 1.0;
  n.maintenance_cost = maint > 0.0 ? maint : 1.0;
  return n;
}

FitnessParams resolve_fitness_params(const FitnessConfig& cfg, const Workload& w) {
  const Normalizers defaults = default_normalizers(w);
  FitnessParams p;
  p.w1 = cfg.w1;
  p.w2 = cfg.w2;
  p.w3 = cfg.w3;
  p.max_response_time_norm = cfg.max_response_time_norm.value_or(defaults.response_time);
  p.max_maintenance_cost_norm = cfg.max_maintenance_cost_norm.value_or(defaults.maintenance_cost);
  p.x0 = cfg.x0.value_or(w.constraints.storage_budget);
  p.sigmoid_scale = cfg.sigmoid_scale.value_or(w.constraints.storage_budget / 10.0);
  p.penalty_coefficient = cfg.penalty_coefficient;
  p.decreasing_memory_shape = cfg.decreasing_memory_shape;
  validate(p);
  return p;
}

double shape_response(double response_time, const FitnessParams& p) {
  return response_time / p.max_response_time_norm;
}

double shape_maintenance(double maintenance_cost, const FitnessParams& p) {
  return maintenance_cost / p.max_maintenance_cost_norm;
}

namespace {

// Logistic with the saturated branch computed through exp of a negative
// argument, so |z| in the hundreds underflows to 0/1 instead of overflowing.
double stable_logistic(double z) {
  if (z >= 0.0) {
    return 1.0 / (1.0 + std::exp(-z));
  }
  const double e = std::exp(z);
  return e / (1.0 + e);
}

}  // namespace

double shape_memory(double memory_usage, const FitnessParams& p) {
  double z = (memory_usage - p.x0) / p.sigmoid_scale;
  if (p.decreasing_memory_shape) z = -z;
  return stable_logistic(z);
}

FitnessResult fitness(const Objectives& obj, const FitnessParams& p, const Constraints& c) {
  FitnessResult r;
  r.value = p.w1 * shape_response(obj.response_time, p) +
            p.w2 * shape_maintenance(obj.maintenance_cost, p) +
            p.w3 * shape_memory(obj.memory_usage, p);

  const bool memory_ok = obj.memory_usage <= c.storage_budget;
  const bool response_ok = !c.max_response_time || obj.response_time <= *c.max_response_time;
  r.feasible = memory_ok && response_ok;
  if (!r.feasible) {
    double overrun = 0.0;
    if (!memory_ok) {
      overrun += (obj.memory_usage - c.storage_budget) / c.storage_budget;
    }
    if (!response_ok) {
      overrun += (obj.response_time - *c.max_response_time) / *c.max_response_time;
    }
    r.value += p.penalty_coefficient * overrun;
  }
  return r;
}

EvaluatedIndividual evaluate(const Workload& w, Chromosome config, const FitnessParams& p) {
  EvaluatedIndividual ind;
  ind.per_query_costs = per_query_costs(w, config);
  for (std::size_t q = 0; q < w.queries.size(); ++q) {
    ind.objectives.response_time += w.queries[q].weight * ind.per_query_costs[q];
  }
  for (std::size_t v = 0; v < w.views.size(); ++v) {
    if (config.test(v)) {
      ind.objectives.maintenance_cost += w.views[v].maintenance_cost;
      ind.objectives.memory_usage += w.views[v].storage_size;
    }
  }
  const FitnessResult r = fitness(ind.objectives, p, w.constraints);
  ind.fitness = r.value;
  ind.feasible = r.feasible;
  ind.chromosome = std::move(config);
  return ind;
}

}  // namespace mvopt
