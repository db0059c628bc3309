#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <random>

#include "mvopt/engine.hpp"
#include "mvopt/errors.hpp"
#include "mvopt/io.hpp"
#include "mvopt/workload.hpp"

namespace py = pybind11;
using namespace mvopt;

PYBIND11_MODULE(_core, m) {
  m.doc() = "materialized view selection via a seeded genetic algorithm";
  m.attr("__version__") = "0.1.0";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);
  py::register_exception<NoFeasibleError>(m, "NoFeasibleError", PyExc_RuntimeError);

  py::class_<Chromosome>(m, "Chromosome")
      .def(py::init<std::size_t>(), py::arg("length"))
      .def_static("from_string", &Chromosome::from_string, py::arg("bits"))
      .def("__len__", &Chromosome::size)
      .def("__str__", &Chromosome::to_string)
      .def("__repr__",
           [](const Chromosome& c) { return "Chromosome('" + c.to_string() + "')"; })
      .def("test", &Chromosome::test, py::arg("i"))
      .def("set", &Chromosome::set, py::arg("i"), py::arg("value"))
      .def("flip", &Chromosome::flip, py::arg("i"))
      .def("count", &Chromosome::count)
      .def("decode", &Chromosome::decode)
      .def("to_string", &Chromosome::to_string)
      .def("bits", [](const Chromosome& c) { return c.bits(); })
      .def(py::self == py::self)
      .def(py::self < py::self);

  m.def("hamming_similarity", &hamming_similarity, py::arg("a"), py::arg("b"));
  m.def(
      "random_chromosome",
      [](std::size_t length, std::size_t num_set, std::uint64_t seed) {
        std::mt19937_64 rng(seed);
        return random_chromosome(length, num_set, rng);
      },
      py::arg("length"), py::arg("num_set"), py::arg("seed"));

  py::class_<Query>(m, "Query")
      .def(py::init<>())
      .def_readwrite("id", &Query::id)
      .def_readwrite("weight", &Query::weight)
      .def_readwrite("base_cost", &Query::base_cost)
      .def(py::self == py::self);

  py::class_<CandidateView>(m, "CandidateView")
      .def(py::init<>())
      .def_readwrite("id", &CandidateView::id)
      .def_readwrite("storage_size", &CandidateView::storage_size)
      .def_readwrite("maintenance_cost", &CandidateView::maintenance_cost)
      .def_readwrite("answer_costs", &CandidateView::answer_costs)
      .def(py::self == py::self);

  py::class_<Constraints>(m, "Constraints")
      .def(py::init<>())
      .def_readwrite("storage_budget", &Constraints::storage_budget)
      .def_readwrite("max_response_time", &Constraints::max_response_time)
      .def(py::self == py::self);

  py::class_<Workload>(m, "Workload")
      .def(py::init<>())
      .def_readwrite("name", &Workload::name)
      .def_readwrite("queries", &Workload::queries)
      .def_readwrite("views", &Workload::views)
      .def_readwrite("constraints", &Workload::constraints)
      .def(py::self == py::self);

  py::class_<Objectives>(m, "Objectives")
      .def(py::init<>())
      .def_readwrite("response_time", &Objectives::response_time)
      .def_readwrite("maintenance_cost", &Objectives::maintenance_cost)
      .def_readwrite("memory_usage", &Objectives::memory_usage)
      .def(py::self == py::self);

  m.def("validate_workload", [](const Workload& w) { validate(w); }, py::arg("workload"));
  m.def("per_query_costs", &per_query_costs, py::arg("workload"), py::arg("config"));
  m.def("compute_objectives", &compute_objectives, py::arg("workload"), py::arg("config"));

  py::class_<CostRanges>(m, "CostRanges")
      .def(py::init<>())
      .def_readwrite("base_cost_min", &CostRanges::base_cost_min)
      .def_readwrite("base_cost_max", &CostRanges::base_cost_max)
      .def_readwrite("weight_min", &CostRanges::weight_min)
      .def_readwrite("weight_max", &CostRanges::weight_max)
      .def_readwrite("storage_min", &CostRanges::storage_min)
      .def_readwrite("storage_max", &CostRanges::storage_max)
      .def_readwrite("maintenance_min", &CostRanges::maintenance_min)
      .def_readwrite("maintenance_max", &CostRanges::maintenance_max)
      .def_readwrite("answer_fraction_min", &CostRanges::answer_fraction_min)
      .def_readwrite("answer_fraction_max", &CostRanges::answer_fraction_max)
      .def_readwrite("budget_fraction", &CostRanges::budget_fraction);

  py::class_<GeneratorSpec>(m, "GeneratorSpec")
      .def(py::init<>())
      .def_readwrite("num_queries", &GeneratorSpec::num_queries)
      .def_readwrite("num_views", &GeneratorSpec::num_views)
      .def_readwrite("coverage_density", &GeneratorSpec::coverage_density)
      .def_readwrite("rng_seed", &GeneratorSpec::rng_seed)
      .def_readwrite("cost_ranges", &GeneratorSpec::cost_ranges)
      .def_readwrite("max_response_time", &GeneratorSpec::max_response_time)
      .def_readwrite("name", &GeneratorSpec::name);

  m.def("generate_workload", &generate_workload, py::arg("spec"));
  m.def("load_workload", &load_workload, py::arg("path"));
  m.def("save_workload", &save_workload, py::arg("workload"), py::arg("path"));

  py::class_<FitnessConfig>(m, "FitnessConfig")
      .def(py::init<>())
      .def_readwrite("w1", &FitnessConfig::w1)
      .def_readwrite("w2", &FitnessConfig::w2)
      .def_readwrite("w3", &FitnessConfig::w3)
      .def_readwrite("max_response_time_norm", &FitnessConfig::max_response_time_norm)
      .def_readwrite("max_maintenance_cost_norm", &FitnessConfig::max_maintenance_cost_norm)
      .def_readwrite("x0", &FitnessConfig::x0)
      .def_readwrite("sigmoid_scale", &FitnessConfig::sigmoid_scale)
      .def_readwrite("penalty_coefficient", &FitnessConfig::penalty_coefficient)
      .def_readwrite("decreasing_memory_shape", &FitnessConfig::decreasing_memory_shape)
      .def(py::self == py::self);

  py::class_<FitnessParams>(m, "FitnessParams")
      .def(py::init<>())
      .def_readwrite("w1", &FitnessParams::w1)
      .def_readwrite("w2", &FitnessParams::w2)
      .def_readwrite("w3", &FitnessParams::w3)
      .def_readwrite("max_response_time_norm", &FitnessParams::max_response_time_norm)
      .def_readwrite("max_maintenance_cost_norm", &FitnessParams::max_maintenance_cost_norm)
      .def_readwrite("x0", &FitnessParams::x0)
      .def_readwrite("sigmoid_scale", &FitnessParams::sigmoid_scale)
      .def_readwrite("penalty_coefficient", &FitnessParams::penalty_coefficient)
      .def_readwrite("decreasing_memory_shape", &FitnessParams::decreasing_memory_shape)
      .def(py::self == py::self);

  m.def("resolve_fitness_params", &resolve_fitness_params, py::arg("config"),
        py::arg("workload"));
  m.def("shape_response", &shape_response, py::arg("response_time"), py::arg("params"));
  m.def("shape_maintenance", &shape_maintenance, py::arg("maintenance_cost"), py::arg("params"));
  m.def("shape_memory", &shape_memory, py::arg("memory_usage"), py::arg("params"));

  py::class_<FitnessResult>(m, "FitnessResult")
      .def_readonly("value", &FitnessResult::value)
      .def_readonly("feasible", &FitnessResult::feasible);

  m.def("fitness", &fitness, py::arg("objectives"), py::arg("params"), py::arg("constraints"));

  py::class_<EvaluatedIndividual>(m, "EvaluatedIndividual")
      .def_readonly("chromosome", &EvaluatedIndividual::chromosome)
      .def_readonly("objectives", &EvaluatedIndividual::objectives)
      .def_readonly("per_query_costs", &EvaluatedIndividual::per_query_costs)
      .def_readonly("fitness", &EvaluatedIndividual::fitness)
      .def_readonly("feasible", &EvaluatedIndividual::feasible);

  m.def("evaluate", &evaluate, py::arg("workload"), py::arg("config"), py::arg("params"));

  py::enum_<EpsilonMode>(m, "EpsilonMode")
      .value("exact", EpsilonMode::exact)
      .value("mad", EpsilonMode::mad);

  py::class_<LexicaseConfig>(m, "LexicaseConfig")
      .def(py::init<>())
      .def_readwrite("epsilon_mode", &LexicaseConfig::epsilon_mode)
      .def_readwrite("target_survivors", &LexicaseConfig::target_survivors)
      .def(py::self == py::self);

  py::class_<CrossoverConfig>(m, "CrossoverConfig")
      .def(py::init<>())
      .def_readwrite("alpha", &CrossoverConfig::alpha)
      .def_readwrite("num_parents", &CrossoverConfig::num_parents)
      .def(py::self == py::self);

  py::class_<MutationConfig>(m, "MutationConfig")
      .def(py::init<>())
      .def_readwrite("rate_min", &MutationConfig::rate_min)
      .def_readwrite("rate_max", &MutationConfig::rate_max)
      .def(py::self == py::self);

  m.def(
      "lexicase_select",
      [](const std::vector<EvaluatedIndividual>& population, const LexicaseConfig& cfg,
         std::uint64_t seed) {
        std::mt19937_64 rng(seed);
        return lexicase_select(population, cfg, rng);
      },
      py::arg("population"), py::arg("config"), py::arg("seed"));
  m.def(
      "blend_crossover",
      [](const std::vector<Chromosome>& parents, const CrossoverConfig& cfg,
         std::uint64_t seed) {
        std::mt19937_64 rng(seed);
        return blend_crossover(parents, cfg, rng);
      },
      py::arg("parents"), py::arg("config"), py::arg("seed"));
  m.def(
      "mean_pairwise_similarity",
      [](const std::vector<Chromosome>& population) {
        return mean_pairwise_similarity(population);
      },
      py::arg("population"));
  m.def(
      "adaptive_mutation_rate",
      [](const std::vector<Chromosome>& population, const MutationConfig& cfg) {
        return adaptive_mutation_rate(population, cfg);
      },
      py::arg("population"), py::arg("config"));
  m.def(
      "mutate",
      [](const Chromosome& c, double rate, std::uint64_t seed) {
        std::mt19937_64 rng(seed);
        return mutate(c, rate, rng);
      },
      py::arg("chromosome"), py::arg("rate"), py::arg("seed"));

  py::class_<RunConfig>(m, "RunConfig")
      .def(py::init<>())
      .def_readwrite("population_size", &RunConfig::population_size)
      .def_readwrite("generations", &RunConfig::generations)
      .def_readwrite("pilot_samples", &RunConfig::pilot_samples)
      .def_readwrite("pilot_view_min", &RunConfig::pilot_view_min)
      .def_readwrite("pilot_view_max", &RunConfig::pilot_view_max)
      .def_readwrite("seed_fraction", &RunConfig::seed_fraction)
      .def_readwrite("elitism_count", &RunConfig::elitism_count)
      .def_readwrite("rng_seed", &RunConfig::rng_seed)
      .def_readwrite("fitness", &RunConfig::fitness)
      .def_readwrite("lexicase", &RunConfig::lexicase)
      .def_readwrite("crossover", &RunConfig::crossover)
      .def_readwrite("mutation", &RunConfig::mutation)
      .def_readwrite("record_all_fitness", &RunConfig::record_all_fitness)
      .def(py::self == py::self);

  py::class_<GenerationRecord>(m, "GenerationRecord")
      .def_readonly("generation", &GenerationRecord::generation)
      .def_readonly("best_fitness", &GenerationRecord::best_fitness)
      .def_readonly("mean_fitness", &GenerationRecord::mean_fitness)
      .def_readonly("population_similarity", &GenerationRecord::population_similarity)
      .def_readonly("mutation_rate_used", &GenerationRecord::mutation_rate_used)
      .def_readonly("all_fitness", &GenerationRecord::all_fitness);

  py::class_<RunReport>(m, "RunReport")
      .def_readonly("best", &RunReport::best)
      .def_readonly("trajectory", &RunReport::trajectory)
      .def_readonly("wall_time_seconds", &RunReport::wall_time_seconds)
      .def_readonly("evaluations", &RunReport::evaluations)
      .def_readonly("config", &RunReport::config)
      .def_readonly("fitness_params", &RunReport::fitness_params)
      .def_readonly("workload_name", &RunReport::workload_name);

  m.def("evolve", &evolve, py::arg("workload"), py::arg("config"));
  m.def("exhaustive_oracle", &exhaustive_oracle, py::arg("workload"), py::arg("params"));
  m.def("greedy_baseline", &greedy_baseline, py::arg("workload"), py::arg("params"));
  m.def(
      "random_baseline",
      [](const Workload& w, const FitnessParams& params, int samples, std::uint64_t seed) {
        std::mt19937_64 rng(seed);
        return random_baseline(w, params, samples, rng);
      },
      py::arg("workload"), py::arg("params"), py::arg("samples"), py::arg("seed"));

  m.def("load_run_config", &load_run_config, py::arg("path"));
  m.def("save_run_config", &save_run_config, py::arg("config"), py::arg("path"));
  m.def("run_config_to_string", &run_config_to_string, py::arg("config"));
  m.def("report_to_string", &report_to_string, py::arg("report"));
  m.def("save_report", &save_report, py::arg("report"), py::arg("path"));
  m.def("evaluation_to_string", &evaluation_to_string, py::arg("individual"),
        py::arg("params"));
  m.def("trajectory_to_csv", &trajectory_to_csv, py::arg("trajectory"));
  m.def("save_trajectory", &save_trajectory, py::arg("trajectory"), py::arg("path"));
}
