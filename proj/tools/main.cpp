#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "robsel/algorithms.hpp"
#include "robsel/attack.hpp"
#include "robsel/bayes.hpp"
#include "robsel/bounds.hpp"
#include "robsel/errors.hpp"
#include "robsel/harness.hpp"
#include "robsel/instance.hpp"
#include "robsel/ratios.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_invalid_input = 2;
constexpr int exit_infeasible = 3;

robsel::SourceSet parse_set(const std::string& text, int n) {
    std::uint64_t mask = 0;
    try {
        if (text.rfind("0x", 0) == 0 || text.rfind("0X", 0) == 0) {
            mask = std::stoull(text.substr(2), nullptr, 16);
        } else {
            // comma-separated indices
            std::size_t pos = 0;
            while (pos < text.size()) {
                std::size_t next = text.find(',', pos);
                if (next == std::string::npos) next = text.size();
                const int idx = std::stoi(text.substr(pos, next - pos));
                mask |= std::uint64_t{1} << idx;
                pos = next + 1;
            }
        }
    } catch (const std::exception&) {
        throw robsel::InvalidInputError("cannot parse source set: " + text);
    }
    if (n < 64 && (mask >> n) != 0) {
        throw robsel::InvalidInputError("source set " + text + " has bits beyond n-1");
    }
    return robsel::SourceSet::from_mask(mask);
}

nlohmann::ordered_json outcome_to_json(const robsel::SelectionOutcome& outcome) {
    nlohmann::ordered_json j;
    j["algorithm"] = outcome.method;
    j["objective"] = robsel::to_string(outcome.objective);
    j["K"] = outcome.selection_budget;
    j["A"] = outcome.attack_budget;
    if (outcome.beta) j["beta"] = *outcome.beta;
    j["selected_set"] = robsel::format_mask(outcome.selected);
    j["selected_indices"] = outcome.selected.indices();
    j["attack_set"] = robsel::format_mask(outcome.attack.removed);
    j["surviving_value"] = outcome.surviving_value;
    if (outcome.optimal_value) j["optimal_value"] = *outcome.optimal_value;
    if (outcome.ratio) j["ratio"] = *outcome.ratio;
    if (outcome.bound_factor) j["bound_factor"] = *outcome.bound_factor;
    if (outcome.bound_valid) j["bound_valid"] = *outcome.bound_valid;
    j["eval_count"] = outcome.eval_count;
    return j;
}

void write_output(const std::string& text, const std::optional<std::string>& path) {
    if (path) {
        std::ofstream out(*path);
        if (!out) throw robsel::InvalidInputError("cannot open for writing: " + *path);
        out << text;
    } else {
        std::cout << text;
    }
}

int run(int argc, char** argv) {
    CLI::App app{"Robust information-source selection for penalty-aware hypothesis testing"};
    app.require_subcommand(1);

    // generate
    auto* generate = app.add_subcommand("generate", "Generate a random instance as JSON");
    int gen_m = 10, gen_n = 10;
    std::uint64_t gen_seed = 0;
    bool gen_unique = false;
    std::optional<int> gen_fixed_blocks;
    std::optional<std::string> gen_out;
    generate->add_option("-m,--hypotheses", gen_m, "Number of hypotheses")->required();
    generate->add_option("-n,--sources", gen_n, "Number of sources")->required();
    generate->add_option("--seed", gen_seed, "Generator seed")->required();
    generate->add_flag("--enforce-unique", gen_unique, "Resample rows until penalties are distinct");
    generate->add_option("--fixed-blocks", gen_fixed_blocks, "Force this many blocks per partition");
    generate->add_option("-o,--output", gen_out, "Output path (default: stdout)");

    // solve
    auto* solve = app.add_subcommand("solve", "Select an information set and attack it");
    std::string solve_instance;
    int solve_k = 0, solve_a = 0;
    double solve_beta = 1.5;
    bool solve_beta_set = false;
    std::string solve_objective = "maxpen";
    std::string solve_algorithm = "alg1";
    bool solve_with_optimal = false;
    std::optional<std::string> solve_out;
    solve->add_option("instance", solve_instance, "Instance JSON file")->required();
    solve->add_option("-K,--selection-budget", solve_k, "Selection budget")->required();
    solve->add_option("-A,--attack-budget", solve_a, "Attack budget")->required();
    solve->add_option("--beta", solve_beta, "Oblivious-phase multiplier (alg1)")
        ->each([&](const std::string&) { solve_beta_set = true; });
    solve->add_option("--objective", solve_objective, "maxpen or totalpen")
        ->check(CLI::IsMember({"maxpen", "totalpen"}));
    solve->add_option("--algorithm", solve_algorithm, "alg1, alg2, greedy, oblivious, or optimal")
        ->check(CLI::IsMember({"alg1", "alg2", "greedy", "oblivious", "optimal"}));
    solve->add_flag("--with-optimal", solve_with_optimal, "Also compute the brute-force optimum");
    solve->add_option("-o,--output", solve_out, "Output path (default: stdout)");

    // attack
    auto* attack_cmd = app.add_subcommand("attack", "Worst-case removal from a given set");
    std::string attack_instance, attack_set_text;
    int attack_a = 0;
    std::string attack_objective = "maxpen";
    attack_cmd->add_option("instance", attack_instance, "Instance JSON file")->required();
    attack_cmd->add_option("--set", attack_set_text, "Selected set: hex mask (0x2d) or indices (0,2,3,5)")
        ->required();
    attack_cmd->add_option("-A,--attack-budget", attack_a, "Attack budget")->required();
    attack_cmd->add_option("--objective", attack_objective, "maxpen or totalpen")
        ->check(CLI::IsMember({"maxpen", "totalpen"}));

    // ratios
    auto* ratios_cmd = app.add_subcommand("ratios", "Curvature/submodularity figures of an instance");
    std::string ratios_instance;
    bool ratios_exact = false;
    ratios_cmd->add_option("instance", ratios_instance, "Instance JSON file")->required();
    ratios_cmd->add_flag("--exact", ratios_exact, "Also compute exact ratios by enumeration (small n)");

    // bound
    auto* bound_cmd = app.add_subcommand("bound", "Evaluate a guarantee factor from parameters");
    int bound_theorem = 2;
    double b_gamma = 0, b_kappa = 0, b_alpha = 0, b_nu = 0, b_beta = 0, b_c = 0, b_cgamma = 1.0;
    int b_k = 0, b_a = 0;
    bound_cmd->add_option("--theorem", bound_theorem, "2 (max-penalty) or 3 (total-penalty)")
        ->check(CLI::IsMember({2, 3}));
    bound_cmd->add_option("--gamma", b_gamma, "Submodularity ratio");
    bound_cmd->add_option("--kappa", b_kappa, "Bipartite subadditivity ratio");
    bound_cmd->add_option("--alpha-check", b_alpha, "Inverse generalized curvature");
    bound_cmd->add_option("--nu-check", b_nu, "Superadditivity ratio");
    bound_cmd->add_option("--beta", b_beta, "Oblivious-phase multiplier");
    bound_cmd->add_option("--c", b_c, "Attack fraction A/K");
    bound_cmd->add_option("--c-gamma", b_cgamma, "Curvature of the total-penalty objective");
    bound_cmd->add_option("-K,--selection-budget", b_k, "Selection budget");
    bound_cmd->add_option("-A,--attack-budget", b_a, "Attack budget");

    // bayes-sim
    auto* bayes_cmd = app.add_subcommand("bayes-sim", "Belief-convergence simulation, trace as CSV");
    std::string bayes_instance, bayes_set_text;
    int bayes_true_state = 0, bayes_horizon = 2000;
    std::uint64_t bayes_seed = 0;
    double bayes_epsilon = 0.2;
    std::optional<std::string> bayes_out;
    bayes_cmd->add_option("instance", bayes_instance, "Instance JSON file")->required();
    bayes_cmd->add_option("--set", bayes_set_text, "Selected set: hex mask or indices")->required();
    bayes_cmd->add_option("--true-state", bayes_true_state, "Index of the true hypothesis")->required();
    bayes_cmd->add_option("-T,--horizon", bayes_horizon, "Number of belief updates");
    bayes_cmd->add_option("--seed", bayes_seed, "Observation sampling seed")->required();
    bayes_cmd->add_option("--epsilon", bayes_epsilon, "Likelihood smoothing in (0, 0.5)");
    bayes_cmd->add_option("-o,--output", bayes_out, "Trace CSV path (default: stdout)");

    // experiment
    auto* experiment_cmd = app.add_subcommand("experiment", "Run an experiment config, results as CSV");
    std::string experiment_config;
    std::optional<std::string> experiment_out;
    experiment_cmd->add_option("config", experiment_config, "Experiment config JSON file")->required();
    experiment_cmd->add_option("-o,--output", experiment_out, "Results CSV path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_invalid_input;
    }

    if (generate->parsed()) {
        robsel::BlockProfile profile = gen_fixed_blocks ? robsel::BlockProfile::fixed(*gen_fixed_blocks)
                                                        : robsel::BlockProfile::uniform();
        const auto instance = robsel::random_instance(gen_m, gen_n, gen_seed, gen_unique, profile);
        write_output(robsel::to_json_string(instance) + "\n", gen_out);
        return exit_ok;
    }

    if (solve->parsed()) {
        const auto instance = robsel::load(solve_instance);
        const robsel::ObjectiveEvaluator evaluator(instance);
        const auto objective = robsel::objective_from_string(solve_objective);
        robsel::SelectionOutcome outcome;
        if (solve_algorithm == "alg1") {
            if (!solve_beta_set) {
                solve_beta = solve_a > 0 ? std::floor(static_cast<double>(solve_k) / solve_a) : 1.0;
            }
            outcome = robsel::robust_greedy_max_penalty(evaluator, solve_k, solve_a, solve_beta);
            if (objective != robsel::Objective::MaxPenalty) {
                throw robsel::InvalidInputError("alg1 optimizes the maxpen objective");
            }
        } else if (solve_algorithm == "alg2") {
            outcome = robsel::robust_greedy_total_penalty(evaluator, solve_k, solve_a);
            if (objective != robsel::Objective::TotalPenalty) {
                throw robsel::InvalidInputError("alg2 optimizes the totalpen objective");
            }
        } else if (solve_algorithm == "optimal") {
            const auto optimum =
                robsel::optimal_robust_selection(evaluator, solve_k, solve_a, objective);
            outcome.selected = optimum.selected;
            outcome.method = "optimal";
            outcome.objective = objective;
            outcome.selection_budget = solve_k;
            outcome.attack_budget = solve_a;
            outcome.attack = optimum.attack;
            outcome.surviving_value = optimum.attack.surviving_value;
            outcome.eval_count = optimum.evaluations;
        } else {
            outcome = robsel::run_baseline(evaluator, solve_algorithm, solve_k, solve_a, objective);
        }
        if (solve_with_optimal && solve_algorithm != "optimal") {
            const auto optimum =
                robsel::optimal_robust_selection(evaluator, solve_k, solve_a, objective);
            outcome.optimal_value = optimum.attack.surviving_value;
            outcome.ratio = optimum.attack.surviving_value > 0.0
                                ? outcome.surviving_value / optimum.attack.surviving_value
                                : 1.0;
        }
        write_output(outcome_to_json(outcome).dump(2) + "\n", solve_out);
        return exit_ok;
    }

    if (attack_cmd->parsed()) {
        const auto instance = robsel::load(attack_instance);
        const robsel::ObjectiveEvaluator evaluator(instance);
        const auto objective = robsel::objective_from_string(attack_objective);
        const auto selected = parse_set(attack_set_text, instance.num_sources());
        const auto result = robsel::worst_case_attack(evaluator, selected, attack_a, objective);
        nlohmann::ordered_json j;
        j["selected_set"] = robsel::format_mask(selected);
        j["attack_set"] = robsel::format_mask(result.removed);
        j["removed_indices"] = result.removed.indices();
        j["surviving_value"] = result.surviving_value;
        j["evaluations"] = result.evaluations;
        std::cout << j.dump(2) << '\n';
        return exit_ok;
    }

    if (ratios_cmd->parsed()) {
        const auto instance = robsel::load(ratios_instance);
        nlohmann::ordered_json j;
        try {
            const auto bundle = robsel::aggregate_ratios(instance);
            j["gamma"] = bundle.gamma;
            j["alpha_check"] = bundle.alpha_check;
            j["nu_check"] = bundle.nu_check;
            j["kappa"] = bundle.kappa;
            j["kappa_valid_for_guarantee"] = bundle.kappa_valid_for_guarantee;
            j["c_Gamma"] = bundle.c_Gamma;
            j["per_row"] = {{"gamma", bundle.gamma_p},
                            {"alpha_check", bundle.alpha_check_p},
                            {"nu_check", bundle.nu_check_p},
                            {"kappa", bundle.kappa_p},
                            {"c_gp", bundle.c_gp}};
        } catch (const robsel::DegenerateRatioError& e) {
            j["degenerate_row"] = e.row();
            j["error"] = e.what();
        }
        if (ratios_exact) {
            const robsel::ObjectiveEvaluator evaluator(instance);
            const auto lambda_fn =
                robsel::make_set_function(evaluator, robsel::Objective::MaxPenalty);
            const auto gamma_fn =
                robsel::make_set_function(evaluator, robsel::Objective::TotalPenalty);
            const int n = instance.num_sources();
            j["exact"] = {
                {"submodularity_ratio_maxpen", robsel::exact_submodularity_ratio(lambda_fn, n)},
                {"submodularity_ratio_totalpen", robsel::exact_submodularity_ratio(gamma_fn, n)},
                {"inverse_curvature_maxpen", robsel::exact_inverse_curvature(lambda_fn, n)},
                {"superadditivity_maxpen", robsel::exact_superadditivity(lambda_fn, n)},
                {"bipartite_maxpen", robsel::exact_bipartite_subadditivity(lambda_fn, n)},
                {"curvature_totalpen", robsel::exact_curvature(gamma_fn, n)},
            };
        }
        std::cout << j.dump(2) << '\n';
        return exit_ok;
    }

    if (bound_cmd->parsed()) {
        nlohmann::ordered_json j;
        if (bound_theorem == 2) {
            const auto report = robsel::theorem2_factor(b_gamma, b_kappa, b_alpha, b_nu, b_beta, b_c);
            j["factor"] = report.factor;
            j["valid"] = report.valid;
            j["beta_above_one"] = report.beta_above_one;
            j["beta_c_below_one"] = report.beta_c_below_one;
            j["kappa_in_unit"] = report.kappa_in_unit;
            j["gamma_in_unit"] = report.gamma_in_unit;
        } else {
            const auto report = robsel::theorem3_factor(b_cgamma, b_k, b_a);
            j["factor"] = report.factor;
            j["valid"] = report.valid;
            j["limit_case"] = report.limit_case;
            j["h"] = robsel::h_func(b_k, b_a);
        }
        std::cout << j.dump(2) << '\n';
        return exit_ok;
    }

    if (bayes_cmd->parsed()) {
        const auto instance = robsel::load(bayes_instance);
        const auto selected = parse_set(bayes_set_text, instance.num_sources());
        const auto model = robsel::synthesize_likelihoods(instance, bayes_epsilon);
        std::ostringstream trace;
        const auto report = robsel::simulate_convergence(instance, model, selected, bayes_true_state,
                                                         bayes_horizon, bayes_seed, 1e-12, 1e-3, &trace);
        write_output(trace.str(), bayes_out);
        nlohmann::ordered_json j;
        j["equivalent_set_size"] = report.equivalent_set.count();
        j["max_within_deviation"] = report.max_within_deviation;
        j["final_outside_mass"] = report.final_outside_mass;
        j["within_ok"] = report.within_ok;
        j["outside_ok"] = report.outside_ok;
        std::cerr << j.dump(2) << '\n';
        return exit_ok;
    }

    if (experiment_cmd->parsed()) {
        const auto config = robsel::ExperimentConfig::from_file(experiment_config);
        const auto table = robsel::run_experiment(config);
        write_output(table.to_csv(), experiment_out);
        return exit_ok;
    }

    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const robsel::EnumerationRefusedError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_infeasible;
    } catch (const robsel::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_invalid_input;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_invalid_input;
    }
}
