#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <optional>
#include <sstream>

#include "robsel/algorithms.hpp"
#include "robsel/attack.hpp"
#include "robsel/bayes.hpp"
#include "robsel/bounds.hpp"
#include "robsel/errors.hpp"
#include "robsel/harness.hpp"
#include "robsel/instance.hpp"
#include "robsel/objectives.hpp"
#include "robsel/ratios.hpp"

namespace py = pybind11;
using namespace robsel;

namespace {

// Source/hypothesis subsets cross the boundary as plain integer bitmasks.
SourceSet source_set(std::uint64_t mask) { return SourceSet::from_mask(mask); }

SelectionOutcome with_optimal(const ObjectiveEvaluator& evaluator, SelectionOutcome outcome) {
    const auto optimum = optimal_robust_selection(evaluator, outcome.selection_budget,
                                                  outcome.attack_budget, outcome.objective);
    outcome.optimal_value = optimum.attack.surviving_value;
    outcome.ratio = *outcome.optimal_value > 0.0 ? outcome.surviving_value / *outcome.optimal_value : 1.0;
    return outcome;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Robust information-source selection for penalty-aware hypothesis testing";

    py::register_exception<EnumerationRefusedError>(m, "EnumerationRefused");
    py::register_exception<DegenerateRatioError>(m, "DegenerateRatio");
    py::register_exception<InvalidInputError>(m, "InvalidInput", PyExc_ValueError);

    py::class_<PenaltyMatrix>(m, "PenaltyMatrix")
        .def(py::init<>())
        .def_readwrite("m", &PenaltyMatrix::m)
        .def_readwrite("entries", &PenaltyMatrix::entries)
        .def_readwrite("unique_rows_assumption", &PenaltyMatrix::unique_rows_assumption);

    py::class_<SourcePartition>(m, "SourcePartition")
        .def(py::init<>())
        .def_readwrite("source_id", &SourcePartition::source_id)
        .def_readwrite("blocks", &SourcePartition::blocks);

    py::class_<ProblemInstance>(m, "ProblemInstance")
        .def(py::init<PenaltyMatrix, std::vector<SourcePartition>, std::optional<InstanceLabels>>(),
             py::arg("penalties"), py::arg("partitions"), py::arg("labels") = std::nullopt)
        .def_property_readonly("m", &ProblemInstance::num_hypotheses)
        .def_property_readonly("n", &ProblemInstance::num_sources)
        .def_property_readonly("penalties", &ProblemInstance::penalties)
        .def_property_readonly("partitions", &ProblemInstance::partitions)
        .def("penalty", &ProblemInstance::penalty, py::arg("p"), py::arg("j"))
        .def("block_of", [](const ProblemInstance& inst, int source, int p) {
            return inst.block_of(source, p).mask();
        })
        .def("to_json", &to_json_string)
        .def_static("from_json", &from_json_string)
        .def("save", [](const ProblemInstance& inst, const std::string& path) { save(inst, path); })
        .def_static("load", [](const std::string& path) { return load(path); })
        .def("validate", [](const ProblemInstance& inst) { return validate(inst); });

    py::class_<InstanceLabels>(m, "InstanceLabels")
        .def(py::init<>())
        .def_readwrite("hypotheses", &InstanceLabels::hypotheses)
        .def_readwrite("sources", &InstanceLabels::sources);

    m.def("random_penalty_matrix", &random_penalty_matrix, py::arg("m"), py::arg("seed"),
          py::arg("enforce_unique") = false);
    m.def(
        "random_equivalence_structure",
        [](int m, int n, std::uint64_t seed, std::optional<int> fixed_blocks) {
            return random_equivalence_structure(
                m, n, seed, fixed_blocks ? BlockProfile::fixed(*fixed_blocks) : BlockProfile::uniform());
        },
        py::arg("m"), py::arg("n"), py::arg("seed"), py::arg("fixed_blocks") = std::nullopt);
    m.def(
        "random_instance",
        [](int m, int n, std::uint64_t seed, bool enforce_unique, std::optional<int> fixed_blocks) {
            return random_instance(
                m, n, seed, enforce_unique,
                fixed_blocks ? BlockProfile::fixed(*fixed_blocks) : BlockProfile::uniform());
        },
        py::arg("m"), py::arg("n"), py::arg("seed"), py::arg("enforce_unique") = false,
        py::arg("fixed_blocks") = std::nullopt);

    py::class_<ObjectiveEvaluator>(m, "Evaluator")
        .def(py::init<const ProblemInstance&, bool>(), py::arg("instance"), py::arg("enable_cache") = true,
             py::keep_alive<1, 2>())
        .def("equiv_set",
             [](const ObjectiveEvaluator& e, std::uint64_t mask, int p) {
                 return e.equiv_set(source_set(mask), p).mask();
             })
        .def("f_value",
             [](const ObjectiveEvaluator& e, std::uint64_t mask, int p) {
                 return e.f_value(source_set(mask), p);
             })
        .def("rho_value",
             [](const ObjectiveEvaluator& e, std::uint64_t mask, int p) {
                 return e.rho_value(source_set(mask), p);
             })
        .def("lambda_value",
             [](const ObjectiveEvaluator& e, std::uint64_t mask) {
                 return e.lambda_value(source_set(mask));
             })
        .def("gamma_obj_value",
             [](const ObjectiveEvaluator& e, std::uint64_t mask) {
                 return e.gamma_obj_value(source_set(mask));
             })
        .def("value",
             [](const ObjectiveEvaluator& e, const std::string& objective, std::uint64_t mask) {
                 return e.value(objective_from_string(objective), source_set(mask));
             })
        .def_property_readonly("eval_count", &ObjectiveEvaluator::eval_count);

    py::class_<RatioBundle>(m, "RatioBundle")
        .def_readonly("gamma_p", &RatioBundle::gamma_p)
        .def_readonly("alpha_check_p", &RatioBundle::alpha_check_p)
        .def_readonly("nu_check_p", &RatioBundle::nu_check_p)
        .def_readonly("kappa_p", &RatioBundle::kappa_p)
        .def_readonly("c_gp", &RatioBundle::c_gp)
        .def_readonly("gamma", &RatioBundle::gamma)
        .def_readonly("alpha_check", &RatioBundle::alpha_check)
        .def_readonly("nu_check", &RatioBundle::nu_check)
        .def_readonly("kappa", &RatioBundle::kappa)
        .def_readonly("c_Gamma", &RatioBundle::c_Gamma)
        .def_readonly("kappa_valid_for_guarantee", &RatioBundle::kappa_valid_for_guarantee);

    m.def("gamma_bound", &gamma_bound, py::arg("instance"), py::arg("p"));
    m.def(
        "curvature_bounds",
        [](const ProblemInstance& inst, int p) {
            const auto b = curvature_bounds(inst, p);
            return py::make_tuple(b.alpha_check, b.nu_check, b.kappa);
        },
        py::arg("instance"), py::arg("p"));
    m.def("c_gp_value", &c_gp_value, py::arg("instance"), py::arg("p"));
    m.def("aggregate_ratios", &aggregate_ratios, py::arg("instance"));

    const auto as_set_function = [](const ProblemInstance& inst, const std::string& objective,
                                    std::optional<int> p) {
        auto evaluator = std::make_shared<ObjectiveEvaluator>(inst);
        auto fn = make_set_function(*evaluator, objective_from_string(objective), p);
        return [evaluator, fn](SourceSet s) { return fn(s); };
    };
    m.def(
        "exact_submodularity_ratio",
        [as_set_function](const ProblemInstance& inst, const std::string& objective, std::optional<int> p) {
            return exact_submodularity_ratio(as_set_function(inst, objective, p), inst.num_sources());
        },
        py::arg("instance"), py::arg("objective"), py::arg("p") = std::nullopt);
    m.def(
        "exact_inverse_curvature",
        [as_set_function](const ProblemInstance& inst, const std::string& objective, std::optional<int> p) {
            return exact_inverse_curvature(as_set_function(inst, objective, p), inst.num_sources());
        },
        py::arg("instance"), py::arg("objective"), py::arg("p") = std::nullopt);
    m.def(
        "exact_superadditivity",
        [as_set_function](const ProblemInstance& inst, const std::string& objective, std::optional<int> p) {
            return exact_superadditivity(as_set_function(inst, objective, p), inst.num_sources());
        },
        py::arg("instance"), py::arg("objective"), py::arg("p") = std::nullopt);
    m.def(
        "exact_bipartite_subadditivity",
        [as_set_function](const ProblemInstance& inst, const std::string& objective, std::optional<int> p) {
            return exact_bipartite_subadditivity(as_set_function(inst, objective, p), inst.num_sources());
        },
        py::arg("instance"), py::arg("objective"), py::arg("p") = std::nullopt);
    m.def(
        "exact_curvature",
        [as_set_function](const ProblemInstance& inst, const std::string& objective, std::optional<int> p) {
            return exact_curvature(as_set_function(inst, objective, p), inst.num_sources());
        },
        py::arg("instance"), py::arg("objective"), py::arg("p") = std::nullopt);

    py::class_<AttackResult>(m, "AttackResult")
        .def_property_readonly("removed", [](const AttackResult& r) { return r.removed.mask(); })
        .def_readonly("surviving_value", &AttackResult::surviving_value)
        .def_readonly("evaluations", &AttackResult::evaluations);

    m.def(
        "worst_case_attack",
        [](const ProblemInstance& inst, std::uint64_t selected, int attack_budget,
           const std::string& objective) {
            const ObjectiveEvaluator evaluator(inst);
            return worst_case_attack(evaluator, source_set(selected), attack_budget,
                                     objective_from_string(objective));
        },
        py::arg("instance"), py::arg("selected"), py::arg("attack_budget"), py::arg("objective"));

    py::class_<SelectionOutcome>(m, "SelectionOutcome")
        .def_property_readonly("selected", [](const SelectionOutcome& o) { return o.selected.mask(); })
        .def_readonly("method", &SelectionOutcome::method)
        .def_property_readonly("objective",
                               [](const SelectionOutcome& o) { return to_string(o.objective); })
        .def_readonly("selection_budget", &SelectionOutcome::selection_budget)
        .def_readonly("attack_budget", &SelectionOutcome::attack_budget)
        .def_readonly("beta", &SelectionOutcome::beta)
        .def_readonly("attack", &SelectionOutcome::attack)
        .def_readonly("surviving_value", &SelectionOutcome::surviving_value)
        .def_readonly("optimal_value", &SelectionOutcome::optimal_value)
        .def_readonly("ratio", &SelectionOutcome::ratio)
        .def_readonly("eval_count", &SelectionOutcome::eval_count);

    m.def(
        "vanilla_greedy",
        [](const ProblemInstance& inst, int budget, const std::string& objective) {
            const ObjectiveEvaluator evaluator(inst);
            return vanilla_greedy(evaluator, budget, inst.all_sources(), objective_from_string(objective))
                .mask();
        },
        py::arg("instance"), py::arg("budget"), py::arg("objective"));
    m.def(
        "oblivious_select",
        [](const ProblemInstance& inst, int count, const std::string& objective) {
            const ObjectiveEvaluator evaluator(inst);
            return oblivious_select(evaluator, count, inst.all_sources(),
                                    objective_from_string(objective))
                .mask();
        },
        py::arg("instance"), py::arg("count"), py::arg("objective"));
    m.def(
        "robust_greedy_max_penalty",
        [](const ProblemInstance& inst, int selection_budget, int attack_budget, double beta,
           bool compute_optimal) {
            const ObjectiveEvaluator evaluator(inst);
            auto outcome = robust_greedy_max_penalty(evaluator, selection_budget, attack_budget, beta);
            return compute_optimal ? with_optimal(evaluator, std::move(outcome)) : outcome;
        },
        py::arg("instance"), py::arg("selection_budget"), py::arg("attack_budget"), py::arg("beta"),
        py::arg("compute_optimal") = false);
    m.def(
        "robust_greedy_total_penalty",
        [](const ProblemInstance& inst, int selection_budget, int attack_budget, bool compute_optimal) {
            const ObjectiveEvaluator evaluator(inst);
            auto outcome = robust_greedy_total_penalty(evaluator, selection_budget, attack_budget);
            return compute_optimal ? with_optimal(evaluator, std::move(outcome)) : outcome;
        },
        py::arg("instance"), py::arg("selection_budget"), py::arg("attack_budget"),
        py::arg("compute_optimal") = false);
    m.def(
        "optimal_robust_selection",
        [](const ProblemInstance& inst, int selection_budget, int attack_budget,
           const std::string& objective) {
            const ObjectiveEvaluator evaluator(inst);
            const auto optimum = optimal_robust_selection(evaluator, selection_budget, attack_budget,
                                                          objective_from_string(objective));
            return py::make_tuple(optimum.selected.mask(), optimum.attack.surviving_value,
                                  optimum.evaluations);
        },
        py::arg("instance"), py::arg("selection_budget"), py::arg("attack_budget"), py::arg("objective"));

    py::class_<BoundReport>(m, "BoundReport")
        .def_readonly("factor", &BoundReport::factor)
        .def_readonly("valid", &BoundReport::valid)
        .def_readonly("beta_above_one", &BoundReport::beta_above_one)
        .def_readonly("beta_c_below_one", &BoundReport::beta_c_below_one)
        .def_readonly("kappa_in_unit", &BoundReport::kappa_in_unit)
        .def_readonly("gamma_in_unit", &BoundReport::gamma_in_unit)
        .def_readonly("limit_case", &BoundReport::limit_case);

    m.def("theorem2_factor", &theorem2_factor, py::arg("gamma"), py::arg("kappa"),
          py::arg("alpha_check"), py::arg("nu_check"), py::arg("beta"), py::arg("c"));
    m.def("h_func", &h_func, py::arg("selection_budget"), py::arg("attack_budget"));
    m.def("theorem3_factor", &theorem3_factor, py::arg("c_Gamma"), py::arg("selection_budget"),
          py::arg("attack_budget"));

    py::class_<LikelihoodModel>(m, "LikelihoodModel")
        .def_readonly("probs", &LikelihoodModel::probs)
        .def("alphabet_size", &LikelihoodModel::alphabet_size);
    py::class_<ConvergenceReport>(m, "ConvergenceReport")
        .def_property_readonly("equivalent_set",
                               [](const ConvergenceReport& r) { return r.equivalent_set.mask(); })
        .def_readonly("max_within_deviation", &ConvergenceReport::max_within_deviation)
        .def_readonly("final_outside_mass", &ConvergenceReport::final_outside_mass)
        .def_readonly("max_outside_belief", &ConvergenceReport::max_outside_belief)
        .def_readonly("within_ok", &ConvergenceReport::within_ok)
        .def_readonly("outside_ok", &ConvergenceReport::outside_ok)
        .def("ok", &ConvergenceReport::ok);

    m.def("synthesize_likelihoods", &synthesize_likelihoods, py::arg("instance"), py::arg("epsilon"));
    m.def(
        "simulate_convergence",
        [](const ProblemInstance& inst, const LikelihoodModel& model, std::uint64_t selected,
           int true_state, int horizon, std::uint64_t seed, double within_tolerance,
           double outside_tolerance, bool want_trace) {
            std::ostringstream trace;
            const auto report =
                simulate_convergence(inst, model, source_set(selected), true_state, horizon, seed,
                                     within_tolerance, outside_tolerance, want_trace ? &trace : nullptr);
            return py::make_tuple(report, trace.str());
        },
        py::arg("instance"), py::arg("model"), py::arg("selected"), py::arg("true_state"),
        py::arg("horizon"), py::arg("seed"), py::arg("within_tolerance") = 1e-12,
        py::arg("outside_tolerance") = 1e-3, py::arg("want_trace") = false);

    m.def(
        "run_experiment",
        [](const std::string& config_json, bool with_timing) {
            const auto config = ExperimentConfig::from_json_string(config_json);
            return run_experiment(config).to_csv(with_timing);
        },
        py::arg("config_json"), py::arg("with_timing") = true,
        "Run an experiment config (JSON text) and return the results CSV");
}
