#include "mvopt/workload.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

#include "json.hpp"
#include "mvopt/errors.hpp"
#include "text_file.hpp"

namespace mvopt {

using nlohmann::json;

void validate(const Workload& w) {
  if (w.queries.empty()) throw ValidationError("workload has no queries");
  if (w.views.empty()) throw ValidationError("workload has no candidate views");

  const int q_count = static_cast<int>(w.queries.size());
  for (int i = 0; i < q_count; ++i) {
    const Query& q = w.queries[i];
    if (q.id != i) {
      throw ValidationError("query ids must be unique and contiguous 0.." +
                            std::to_string(q_count - 1) + "; found id " + std::to_string(q.id) +
                            " at position " + std::to_string(i));
    }
    if (!(q.weight >= 0.0)) {
      throw ValidationError("query " + std::to_string(q.id) + ": weight must be >= 0");
    }
    if (!(q.base_cost > 0.0)) {
      throw ValidationError("query " + std::to_string(q.id) + ": base_cost must be > 0");
    }
  }

  const int v_count = static_cast<int>(w.views.size());
  for (int i = 0; i < v_count; ++i) {
    const CandidateView& v = w.views[i];
    if (v.id != i) {
      throw ValidationError("view ids must be unique and contiguous 0.." +
                            std::to_string(v_count - 1) + "; found id " + std::to_string(v.id) +
                            " at position " + std::to_string(i));
    }
    if (!(v.storage_size > 0.0)) {
      throw ValidationError("view " + std::to_string(v.id) + ": storage_size must be > 0");
    }
    if (!(v.maintenance_cost >= 0.0)) {
      throw ValidationError("view " + std::to_string(v.id) + ": maintenance_cost must be >= 0");
    }
    for (const auto& [q, c] : v.answer_costs) {
      if (q < 0 || q >= q_count) {
        throw ValidationError("view " + std::to_string(v.id) + ": answer cost references query " +
                              std::to_string(q) + " but only " + std::to_string(q_count) +
                              " queries exist");
      }
      if (!(c > 0.0)) {
        throw ValidationError("view " + std::to_string(v.id) + ": answer cost for query " +
                              std::to_string(q) + " must be > 0");
      }
      if (c > w.queries[q].base_cost) {
        throw ValidationError("view " + std::to_string(v.id) + ": answer cost " +
                              std::to_string(c) + " for query " + std::to_string(q) +
                              " exceeds the query's base cost " +
                              std::to_string(w.queries[q].base_cost));
      }
    }
  }

  if (!(w.constraints.storage_budget > 0.0)) {
    throw ValidationError("constraints: storage_budget must be > 0");
  }
  if (w.constraints.max_response_time && !(*w.constraints.max_response_time > 0.0)) {
    throw ValidationError("constraints: max_response_time must be > 0 when present");
  }
}

std::vector<double> per_query_costs(const Workload& w, const Chromosome& config) {
  if (config.size() != w.views.size()) {
    throw std::invalid_argument("configuration length " + std::to_string(config.size()) +
                                " does not match view count " + std::to_string(w.views.size()));
  }
  std::vector<double> costs(w.queries.size());
  for (std::size_t q = 0; q < w.queries.size(); ++q) costs[q] = w.queries[q].base_cost;
  for (std::size_t v = 0; v < w.views.size(); ++v) {
    if (!config.test(v)) continue;
    for (const auto& [q, c] : w.views[v].answer_costs) {
      costs[q] = std::min(costs[q], c);
    }
  }
  return costs;
}

Objectives compute_objectives(const Workload& w, const Chromosome& config) {
  const std::vector<double> costs = per_query_costs(w, config);
  Objectives out;
  for (std::size_t q = 0; q < w.queries.size(); ++q) {
    out.response_time += w.queries[q].weight * costs[q];
  }
  for (std::size_t v = 0; v < w.views.size(); ++v) {
    if (config.test(v)) {
      out.maintenance_cost += w.views[v].maintenance_cost;
      out.memory_usage += w.views[v].storage_size;
    }
  }
  return out;
}

namespace {

void check_spec(const GeneratorSpec& s) {
  if (s.num_queries < 1) throw ValidationError("generator: num_queries must be >= 1");
  if (s.num_views < 1) throw ValidationError("generator: num_views must be >= 1");
  if (!(s.coverage_density > 0.0) || s.coverage_density > 1.0) {
    throw ValidationError("generator: coverage_density must be in (0, 1]");
  }
  const CostRanges& r = s.cost_ranges;
  auto range_ok = [](double lo, double hi) { return lo <= hi; };
  if (!(r.base_cost_min > 0.0) || !range_ok(r.base_cost_min, r.base_cost_max)) {
    throw ValidationError("generator: base cost range must satisfy 0 < min <= max");
  }
  if (!(r.weight_min >= 0.0) || !range_ok(r.weight_min, r.weight_max)) {
    throw ValidationError("generator: weight range must satisfy 0 <= min <= max");
  }
  if (!(r.storage_min > 0.0) || !range_ok(r.storage_min, r.storage_max)) {
    throw ValidationError("generator: storage range must satisfy 0 < min <= max");
  }
  if (!(r.maintenance_min >= 0.0) || !range_ok(r.maintenance_min, r.maintenance_max)) {
    throw ValidationError("generator: maintenance range must satisfy 0 <= min <= max");
  }
  if (!(r.answer_fraction_min > 0.0) || !range_ok(r.answer_fraction_min, r.answer_fraction_max) ||
      r.answer_fraction_max > 1.0) {
    throw ValidationError("generator: answer fraction range must lie in (0, 1]");
  }
  if (!(r.budget_fraction > 0.0)) {
    throw ValidationError("generator: budget_fraction must be > 0");
  }
  if (s.max_response_time && !(*s.max_response_time > 0.0)) {
    throw ValidationError("generator: max_response_time must be > 0 when present");
  }
}

std::string default_name(const GeneratorSpec& s) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "synthetic-q%d-v%d-d%.2f-s%llu", s.num_queries, s.num_views,
                s.coverage_density, static_cast<unsigned long long>(s.rng_seed));
  return buf;
}

}  // namespace

Workload generate_workload(const GeneratorSpec& spec) {
  check_spec(spec);
  const CostRanges& r = spec.cost_ranges;
  std::mt19937_64 rng(spec.rng_seed);
  auto uniform = [&rng](double lo, double hi) {
    if (lo == hi) return lo;
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  };
  auto log_uniform = [&uniform](double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  };

  Workload w;
  w.name = spec.name.empty() ? default_name(spec) : spec.name;

  w.queries.reserve(spec.num_queries);
  for (int q = 0; q < spec.num_queries; ++q) {
    Query query;
    query.id = q;
    query.weight = uniform(r.weight_min, r.weight_max);
    query.base_cost = uniform(r.base_cost_min, r.base_cost_max);
    w.queries.push_back(query);
  }

  std::bernoulli_distribution covers(spec.coverage_density);
  double total_storage = 0.0;
  w.views.reserve(spec.num_views);
  for (int v = 0; v < spec.num_views; ++v) {
    CandidateView view;
    view.id = v;
    view.storage_size = log_uniform(r.storage_min, r.storage_max);
    view.maintenance_cost = log_uniform(r.maintenance_min, r.maintenance_max);
    total_storage += view.storage_size;

    // Coverage is redrawn whole until at least one query is covered.
    std::vector<int> covered;
    while (covered.empty()) {
      for (int q = 0; q < spec.num_queries; ++q) {
        if (covers(rng)) covered.push_back(q);
      }
    }
    for (int q : covered) {
      const double frac = uniform(r.answer_fraction_min, r.answer_fraction_max);
      view.answer_costs.emplace(q, frac * w.queries[q].base_cost);
    }
    w.views.push_back(std::move(view));
  }

  w.constraints.storage_budget = r.budget_fraction * total_storage;
  w.constraints.max_response_time = spec.max_response_time;

  validate(w);
  return w;
}

namespace {

constexpr int kWorkloadFormatVersion = 1;

[[noreturn]] void fail(const std::string& msg) { throw ValidationError("workload document: " + msg); }

void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                const std::string& where) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* k : allowed) {
      if (item.key() == k) {
        known = true;
        break;
      }
    }
    if (!known) fail("unknown key '" + item.key() + "' in " + where);
  }
}

double require_number(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) fail("missing '" + std::string(key) + "' in " + where);
  const json& v = obj.at(key);
  if (!v.is_number()) fail("'" + std::string(key) + "' in " + where + " must be a number");
  return v.get<double>();
}

int require_int(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) fail("missing '" + std::string(key) + "' in " + where);
  const json& v = obj.at(key);
  if (!v.is_number_integer()) fail("'" + std::string(key) + "' in " + where + " must be an integer");
  return v.get<int>();
}

Workload workload_from_json(const json& doc) {
  if (!doc.is_object()) fail("top level must be an object");
  check_keys(doc, {"format_version", "name", "queries", "views", "constraints"}, "document");
  if (doc.contains("format_version")) {
    if (!doc["format_version"].is_number_integer() ||
        doc["format_version"].get<int>() != kWorkloadFormatVersion) {
      fail("unsupported format_version (expected " + std::to_string(kWorkloadFormatVersion) + ")");
    }
  }

  Workload w;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) fail("'name' must be a string");
    w.name = doc["name"].get<std::string>();
  }

  if (!doc.contains("queries") || !doc["queries"].is_array()) fail("missing 'queries' array");
  for (const json& jq : doc["queries"]) {
    if (!jq.is_object()) fail("each query must be an object");
    check_keys(jq, {"id", "weight", "base_cost"}, "query");
    Query q;
    q.id = require_int(jq, "id", "query");
    q.weight = jq.contains("weight") ? require_number(jq, "weight", "query") : 1.0;
    q.base_cost = require_number(jq, "base_cost", "query");
    w.queries.push_back(q);
  }

  if (!doc.contains("views") || !doc["views"].is_array()) fail("missing 'views' array");
  for (const json& jv : doc["views"]) {
    if (!jv.is_object()) fail("each view must be an object");
    check_keys(jv, {"id", "storage_size", "maintenance_cost", "answer_costs"}, "view");
    CandidateView v;
    v.id = require_int(jv, "id", "view");
    v.storage_size = require_number(jv, "storage_size", "view");
    v.maintenance_cost = require_number(jv, "maintenance_cost", "view");
    if (jv.contains("answer_costs")) {
      if (!jv["answer_costs"].is_array()) fail("'answer_costs' must be an array of [query, cost]");
      for (const json& pair : jv["answer_costs"]) {
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() ||
            !pair[1].is_number()) {
          fail("each answer_costs entry must be a [query id, cost] pair");
        }
        const int q = pair[0].get<int>();
        if (!v.answer_costs.emplace(q, pair[1].get<double>()).second) {
          fail("view " + std::to_string(v.id) + " lists query " + std::to_string(q) + " twice");
        }
      }
    }
    w.views.push_back(std::move(v));
  }

  if (!doc.contains("constraints") || !doc["constraints"].is_object()) {
    fail("missing 'constraints' object");
  }
  const json& jc = doc["constraints"];
  check_keys(jc, {"storage_budget", "max_response_time"}, "constraints");
  w.constraints.storage_budget = require_number(jc, "storage_budget", "constraints");
  if (jc.contains("max_response_time")) {
    if (!jc["max_response_time"].is_number()) fail("'max_response_time' must be a number");
    w.constraints.max_response_time = jc["max_response_time"].get<double>();
  }

  // Document order does not have to be id order.
  std::sort(w.queries.begin(), w.queries.end(),
            [](const Query& a, const Query& b) { return a.id < b.id; });
  std::sort(w.views.begin(), w.views.end(),
            [](const CandidateView& a, const CandidateView& b) { return a.id < b.id; });

  validate(w);
  return w;
}

json workload_to_json(const Workload& w) {
  json doc;
  doc["format_version"] = kWorkloadFormatVersion;
  doc["name"] = w.name;
  doc["queries"] = json::array();
  for (const Query& q : w.queries) {
    doc["queries"].push_back({{"id", q.id}, {"weight", q.weight}, {"base_cost", q.base_cost}});
  }
  doc["views"] = json::array();
  for (const CandidateView& v : w.views) {
    json jv = {{"id", v.id},
               {"storage_size", v.storage_size},
               {"maintenance_cost", v.maintenance_cost}};
    json costs = json::array();
    for (const auto& [q, c] : v.answer_costs) costs.push_back({q, c});
    jv["answer_costs"] = std::move(costs);
    doc["views"].push_back(std::move(jv));
  }
  doc["constraints"]["storage_budget"] = w.constraints.storage_budget;
  if (w.constraints.max_response_time) {
    doc["constraints"]["max_response_time"] = *w.constraints.max_response_time;
  }
  return doc;
}

}  // namespace

Workload load_workload(const std::string& path) {
  const std::string text = detail::read_text_file(path);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError("workload document '" + path + "': " + e.what());
  }
  return workload_from_json(doc);
}

void save_workload(const Workload& w, const std::string& path) {
  detail::write_text_file(path, workload_to_json(w).dump(2) + "\n");
}

}  // namespace mvopt
