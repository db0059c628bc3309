#pragma once

#include "mvopt/workload.hpp"

namespace testhelp {

// Two queries, three views, budget 100. Small enough to enumerate by hand:
//   config  response  maintenance  memory
//   000        260         0          0
//   100        170         5         50
//   010        140         4         60
//   001        110         2         40
//   110         50         9        110   (over budget)
//   101         90         7         90
//   011         70         6        100
//   111         50        11        150   (over budget)
inline mvopt::Workload three_view_workload() {
  mvopt::Workload w;
  w.name = "three-view";
  w.queries = {{0, 1.0, 100.0}, {1, 2.0, 80.0}};

  mvopt::CandidateView v0;
  v0.id = 0;
  v0.storage_size = 50.0;
  v0.maintenance_cost = 5.0;
  v0.answer_costs = {{0, 10.0}};

  mvopt::CandidateView v1;
  v1.id = 1;
  v1.storage_size = 60.0;
  v1.maintenance_cost = 4.0;
  v1.answer_costs = {{1, 20.0}};

  mvopt::CandidateView v2;
  v2.id = 2;
  v2.storage_size = 40.0;
  v2.maintenance_cost = 2.0;
  v2.answer_costs = {{0, 30.0}, {1, 40.0}};

  w.views = {v0, v1, v2};
  w.constraints.storage_budget = 100.0;
  return w;
}

// One query (base 100, weight 1) covered by one view at cost 10.
inline mvopt::Workload single_view_workload(double answer_cost = 10.0,
                                            double maintenance = 5.0, double storage = 50.0,
                                            double budget = 100.0) {
  mvopt::Workload w;
  w.name = "single-view";
  w.queries = {{0, 1.0, 100.0}};
  mvopt::CandidateView v;
  v.id = 0;
  v.storage_size = storage;
  v.maintenance_cost = maintenance;
  v.answer_costs = {{0, answer_cost}};
  w.views = {v};
  w.constraints.storage_budget = budget;
  return w;
}

}  // namespace testhelp
