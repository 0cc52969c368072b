#include "robsel/harness.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include "robsel/algorithms.hpp"
#include "robsel/bayes.hpp"
#include "robsel/bounds.hpp"
#include "robsel/errors.hpp"
#include "robsel/ratios.hpp"
#include "robsel/rng.hpp"

#include "json.hpp"

namespace robsel {

std::string to_string(ExperimentMode mode) {
    switch (mode) {
        case ExperimentMode::Rmpis: return "rmpis";
        case ExperimentMode::Mrmpis: return "mrmpis";
        case ExperimentMode::SurrogateCross: return "surrogate-cross";
        case ExperimentMode::Bayes: return "bayes";
        case ExperimentMode::Baselines: return "baselines";
    }
    return "?";
}

ExperimentMode experiment_mode_from_string(const std::string& name) {
    if (name == "rmpis") return ExperimentMode::Rmpis;
    if (name == "mrmpis") return ExperimentMode::Mrmpis;
    if (name == "surrogate-cross") return ExperimentMode::SurrogateCross;
    if (name == "bayes") return ExperimentMode::Bayes;
    if (name == "baselines") return ExperimentMode::Baselines;
    throw InvalidInputError("unknown experiment mode: " + name);
}

std::string format_double(double value) {
    char buffer[64];
    const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, result.ptr);
}

std::string format_mask(SourceSet set) {
    std::ostringstream os;
    os << "0x" << std::hex << set.mask();
    return os.str();
}

namespace {

std::pair<int, int> parse_range(const nlohmann::json& j, const char* what) {
    if (!j.is_array() || j.size() != 2) {
        throw InvalidInputError(std::string(what) + ": uniform spec must be [lo, hi]");
    }
    return {j[0].get<int>(), j[1].get<int>()};
}

SelectionBudgetSpec parse_selection_spec(const nlohmann::json& j) {
    SelectionBudgetSpec spec;
    if (j.contains("values")) spec.values = j.at("values").get<std::vector<int>>();
    if (j.contains("uniform")) spec.uniform = parse_range(j.at("uniform"), "K");
    if (spec.values.empty() && !spec.uniform) {
        throw InvalidInputError("K spec needs either values or uniform");
    }
    return spec;
}

AttackBudgetSpec parse_attack_spec(const nlohmann::json& j) {
    AttackBudgetSpec spec;
    if (j.contains("values")) spec.values = j.at("values").get<std::vector<int>>();
    if (j.contains("uniform")) spec.uniform = parse_range(j.at("uniform"), "A");
    spec.half_of_selection = j.value("half_of_k", false);
    if (spec.values.empty() && !spec.uniform && !spec.half_of_selection) {
        throw InvalidInputError("A spec needs values, uniform, or half_of_k");
    }
    return spec;
}

BetaSpec parse_beta_spec(const nlohmann::json& j) {
    BetaSpec spec;
    if (j.contains("values")) spec.values = j.at("values").get<std::vector<double>>();
    spec.floor_selection_over_attack = j.value("floor_k_over_a", false);
    spec.midpoint = j.value("midpoint", false);
    return spec;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json_string(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid config JSON: ") + e.what());
    }
    ExperimentConfig config;
    try {
        config.mode = experiment_mode_from_string(j.at("mode").get<std::string>());
        config.trials = j.at("trials").get<int>();
        config.master_seed = j.at("master_seed").get<std::uint64_t>();
        if (j.contains("instance_file") && !j.at("instance_file").is_null()) {
            config.instance_file = j.at("instance_file").get<std::string>();
        }
        if (j.contains("generator")) {
            const auto& g = j.at("generator");
            config.generator.m = g.value("m", 10);
            config.generator.n = g.value("n", 10);
            config.generator.enforce_unique = g.value("enforce_unique", false);
            if (g.contains("fixed_blocks") && !g.at("fixed_blocks").is_null()) {
                config.generator.fixed_blocks = g.at("fixed_blocks").get<int>();
            }
        }
        if (config.mode != ExperimentMode::Bayes) {
            config.selection = parse_selection_spec(j.at("K"));
            config.attack = parse_attack_spec(j.at("A"));
            if (j.contains("beta")) config.beta = parse_beta_spec(j.at("beta"));
        }
        if (j.contains("objective")) {
            config.objective = objective_from_string(j.at("objective").get<std::string>());
        }
        config.compute_optimal = j.value("compute_optimal", config.mode != ExperimentMode::Baselines);
        config.evaluation_cap = j.value("evaluation_cap", default_evaluation_cap);
        if (j.contains("bayes")) {
            const auto& b = j.at("bayes");
            config.bayes.horizon = b.value("horizon", 2000);
            config.bayes.epsilon = b.value("epsilon", 0.2);
            config.bayes.set_size = b.value("set_size", 3);
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed config: ") + e.what());
    }
    if (config.trials < 0) {
        throw InvalidInputError("trial count must be non-negative");
    }
    return config;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidInputError("cannot open config: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return from_json_string(buffer.str());
}

namespace {

constexpr const char* result_header =
    "trial,seed,n,m,K,A,beta,algorithm,objective,selected_set,attack_set,surviving_value,"
    "optimal_value,ratio,bound_factor,bound_valid,eval_count,note";
constexpr const char* bayes_header =
    "trial,seed,n,m,selected_set,true_state,horizon,epsilon,max_within_deviation,"
    "final_outside_mass,within_ok,outside_ok";

std::string cell(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }
std::string cell(const std::optional<SourceSet>& v) { return v ? format_mask(*v) : std::string(); }
std::string cell(const std::optional<bool>& v) {
    return v ? std::string(*v ? "true" : "false") : std::string();
}

void append_result_row(std::ostringstream& os, const ResultRow& row, bool with_timing) {
    os << row.trial << ',' << row.seed << ',' << row.n << ',' << row.m << ',' << row.selection_budget
       << ',' << row.attack_budget << ',' << cell(row.beta) << ',' << row.algorithm << ','
       << row.objective << ',' << cell(row.selected) << ',' << cell(row.attack_set) << ','
       << cell(row.surviving_value) << ',' << cell(row.optimal_value) << ',' << cell(row.ratio) << ','
       << cell(row.bound_factor) << ',' << cell(row.bound_valid) << ',' << row.eval_count << ','
       << row.note;
    if (with_timing) os << ',' << row.elapsed_us;
    os << '\n';
}

void append_bayes_row(std::ostringstream& os, const BayesRow& row, bool with_timing) {
    os << row.trial << ',' << row.seed << ',' << row.n << ',' << row.m << ','
       << format_mask(row.selected) << ',' << row.true_state << ',' << row.horizon << ','
       << format_double(row.epsilon) << ',' << format_double(row.max_within_deviation) << ','
       << format_double(row.final_outside_mass) << ',' << (row.within_ok ? "true" : "false") << ','
       << (row.outside_ok ? "true" : "false");
    if (with_timing) os << ',' << row.elapsed_us;
    os << '\n';
}

}  // namespace

std::string ExperimentTable::to_csv(bool with_timing) const {
    std::ostringstream os;
    if (mode == ExperimentMode::Bayes) {
        os << bayes_header;
        if (with_timing) os << ",elapsed_us";
        os << '\n';
        for (const auto& row : bayes_rows) append_bayes_row(os, row, with_timing);
    } else {
        os << result_header;
        if (with_timing) os << ",elapsed_us";
        os << '\n';
        for (const auto& row : rows) append_result_row(os, row, with_timing);
    }
    return os.str();
}

namespace {

ProblemInstance make_trial_instance(const ExperimentConfig& config, std::uint64_t trial_seed) {
    if (config.instance_file) {
        return load(*config.instance_file);
    }
    BlockProfile profile = config.generator.fixed_blocks
                               ? BlockProfile::fixed(*config.generator.fixed_blocks)
                               : BlockProfile::uniform();
    return random_instance(config.generator.m, config.generator.n, trial_seed,
                           config.generator.enforce_unique, profile);
}

struct BudgetDraw {
    int selection = 0;
    int attack = 0;
    std::optional<double> beta;
};

int resolve_attack(const AttackBudgetSpec& spec, int grid_index, int selection, Rng& rng) {
    if (spec.half_of_selection) {
        return (selection + 1) / 2;  // ceil(K/2)
    }
    if (spec.uniform) {
        const int lo = spec.uniform->first;
        const int hi = spec.uniform->second < 0 ? selection - 1 : spec.uniform->second;
        return rng.next_int(lo, hi);
    }
    return spec.values[static_cast<std::size_t>(grid_index)];
}

std::optional<double> resolve_beta(const BetaSpec& spec, int grid_index, int selection, int attack) {
    if (spec.floor_selection_over_attack) {
        if (attack == 0) return std::nullopt;
        return std::floor(static_cast<double>(selection) / attack);
    }
    if (spec.midpoint) {
        if (attack == 0) return std::nullopt;
        return (1.0 + static_cast<double>(selection) / attack) / 2.0;
    }
    if (!spec.values.empty()) return spec.values[static_cast<std::size_t>(grid_index)];
    return std::nullopt;
}

// Expands the grid dimensions (random specs contribute one point drawn per
// trial) and resolves the concrete budgets for one trial in a fixed order.
std::vector<BudgetDraw> resolve_budgets(const ExperimentConfig& config, Rng& rng) {
    std::vector<BudgetDraw> out;
    const std::size_t k_points = config.selection.uniform ? 1 : config.selection.values.size();
    const std::size_t a_points =
        (config.attack.uniform || config.attack.half_of_selection) ? 1 : config.attack.values.size();
    const std::size_t b_points = config.beta.values.empty() ? 1 : config.beta.values.size();
    for (std::size_t ki = 0; ki < k_points; ++ki) {
        for (std::size_t ai = 0; ai < a_points; ++ai) {
            for (std::size_t bi = 0; bi < b_points; ++bi) {
                BudgetDraw draw;
                draw.selection = config.selection.uniform
                                     ? rng.next_int(config.selection.uniform->first,
                                                    config.selection.uniform->second)
                                     : config.selection.values[ki];
                draw.attack =
                    resolve_attack(config.attack, static_cast<int>(ai), draw.selection, rng);
                draw.beta = resolve_beta(config.beta, static_cast<int>(bi), draw.selection, draw.attack);
                out.push_back(draw);
            }
        }
    }
    return out;
}

std::optional<double> safe_ratio(double surviving, double optimal) {
    if (optimal > 0.0) return surviving / optimal;
    return 1.0;  // 0/0: both selections are worthless, call it parity
}

void attach_bound_rmpis(ResultRow& row, const ProblemInstance& instance, int selection, int attack,
                        std::optional<double> beta) {
    if (!beta || attack == 0) return;
    const double c = static_cast<double>(attack) / selection;
    try {
        const RatioBundle bundle = aggregate_ratios(instance);
        const BoundReport report =
            theorem2_factor(bundle.gamma, bundle.kappa, bundle.alpha_check, bundle.nu_check, *beta, c);
        row.bound_factor = report.factor;
        row.bound_valid = report.valid;
    } catch (const DegenerateRatioError&) {
        row.bound_factor = 0.0;
        row.bound_valid = false;  // vacuous: the row-ratio formulas degenerate
    }
}

void attach_bound_mrmpis(ResultRow& row, const ProblemInstance& instance, int selection, int attack) {
    double c_gamma = 0.0;
    for (int p = 0; p < instance.num_hypotheses(); ++p) {
        c_gamma = std::max(c_gamma, c_gp_value(instance, p));
    }
    const BoundReport report = theorem3_factor(c_gamma, selection, attack);
    row.bound_factor = report.factor;
    row.bound_valid = report.valid;
}

ResultRow run_selection_trial(const ExperimentConfig& config, const ProblemInstance& instance,
                              const ObjectiveEvaluator& evaluator, int trial, std::uint64_t seed,
                              const BudgetDraw& draw) {
    ResultRow row;
    row.trial = trial;
    row.seed = seed;
    row.n = instance.num_sources();
    row.m = instance.num_hypotheses();
    row.selection_budget = draw.selection;
    row.attack_budget = draw.attack;

    const auto started = std::chrono::steady_clock::now();
    const std::uint64_t evals_before = evaluator.eval_count();
    try {
        SelectionOutcome outcome;
        Objective evaluation_objective;
        if (config.mode == ExperimentMode::Rmpis) {
            const double beta = draw.beta.value_or(1.0);
            outcome = robust_greedy_max_penalty(evaluator, draw.selection, draw.attack, beta);
            row.beta = beta;
            evaluation_objective = Objective::MaxPenalty;
        } else if (config.mode == ExperimentMode::Mrmpis) {
            outcome = robust_greedy_total_penalty(evaluator, draw.selection, draw.attack);
            evaluation_objective = Objective::TotalPenalty;
        } else {  // surrogate-cross: select on the surrogate, score on max-penalty
            outcome = robust_greedy_total_penalty(evaluator, draw.selection, draw.attack);
            evaluation_objective = Objective::MaxPenalty;
            outcome.attack =
                worst_case_attack(evaluator, outcome.selected, draw.attack, evaluation_objective);
            outcome.surviving_value = outcome.attack.surviving_value;
        }
        row.algorithm = outcome.method;
        row.objective = to_string(evaluation_objective);
        row.selected = outcome.selected;
        row.attack_set = outcome.attack.removed;
        row.surviving_value = outcome.surviving_value;

        if (config.compute_optimal) {
            const OptimalSelection optimum =
                optimal_robust_selection(evaluator, draw.selection, draw.attack, evaluation_objective,
                                         /*full_size_only=*/false, config.evaluation_cap);
            row.optimal_value = optimum.attack.surviving_value;
            row.ratio = safe_ratio(outcome.surviving_value, *row.optimal_value);
        }
        if (config.mode == ExperimentMode::Rmpis) {
            attach_bound_rmpis(row, instance, draw.selection, draw.attack, row.beta);
        } else if (config.mode == ExperimentMode::Mrmpis) {
            attach_bound_mrmpis(row, instance, draw.selection, draw.attack);
        }
    } catch (const EnumerationRefusedError& e) {
        row.note = std::string("skipped: ") + e.what();
    }
    row.eval_count = evaluator.eval_count() - evals_before;
    row.elapsed_us = std::chrono::duration_cast<std::chrono::microseconds>(
                         std::chrono::steady_clock::now() - started)
                         .count();
    return row;
}

BayesRow run_bayes_trial(const ExperimentConfig& config, const ProblemInstance& instance, int trial,
                         std::uint64_t seed, Rng& param_rng) {
    BayesRow row;
    row.trial = trial;
    row.seed = seed;
    row.n = instance.num_sources();
    row.m = instance.num_hypotheses();
    row.horizon = config.bayes.horizon;
    row.epsilon = config.bayes.epsilon;

    const int n = instance.num_sources();
    const int set_size = std::min(config.bayes.set_size, n);
    // Random subset of the requested size: shuffle prefix.
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    for (int i = n - 1; i > 0; --i) {
        std::swap(order[static_cast<std::size_t>(i)],
                  order[static_cast<std::size_t>(param_rng.next_int(0, i))]);
    }
    SourceSet selected;
    for (int k = 0; k < set_size; ++k) selected = selected.with(order[static_cast<std::size_t>(k)]);
    row.selected = selected;
    row.true_state = param_rng.next_int(0, instance.num_hypotheses() - 1);

    const auto started = std::chrono::steady_clock::now();
    const LikelihoodModel model = synthesize_likelihoods(instance, config.bayes.epsilon);
    const ConvergenceReport report =
        simulate_convergence(instance, model, selected, row.true_state, config.bayes.horizon,
                             derive_seed(seed, 4));
    row.max_within_deviation = report.max_within_deviation;
    row.final_outside_mass = report.final_outside_mass;
    row.within_ok = report.within_ok;
    row.outside_ok = report.outside_ok;
    row.elapsed_us = std::chrono::duration_cast<std::chrono::microseconds>(
                         std::chrono::steady_clock::now() - started)
                         .count();
    return row;
}

}  // namespace

ExperimentTable run_experiment(const ExperimentConfig& config) {
    if (config.mode == ExperimentMode::Baselines) {
        return compare_baselines(config);
    }
    ExperimentTable table;
    table.mode = config.mode;
    for (int trial = 0; trial < config.trials; ++trial) {
        const std::uint64_t trial_seed = derive_seed(config.master_seed, static_cast<std::uint64_t>(trial));
        const ProblemInstance instance = make_trial_instance(config, trial_seed);
        Rng param_rng(derive_seed(trial_seed, 3));
        if (config.mode == ExperimentMode::Bayes) {
            table.bayes_rows.push_back(run_bayes_trial(config, instance, trial, trial_seed, param_rng));
            continue;
        }
        const ObjectiveEvaluator evaluator(instance);
        for (const BudgetDraw& draw : resolve_budgets(config, param_rng)) {
            table.rows.push_back(
                run_selection_trial(config, instance, evaluator, trial, trial_seed, draw));
        }
    }
    return table;
}

ExperimentTable compare_baselines(const ExperimentConfig& config) {
    ExperimentTable table;
    table.mode = ExperimentMode::Baselines;
    const bool max_penalty = config.objective == Objective::MaxPenalty;
    for (int trial = 0; trial < config.trials; ++trial) {
        const std::uint64_t trial_seed = derive_seed(config.master_seed, static_cast<std::uint64_t>(trial));
        const ProblemInstance instance = make_trial_instance(config, trial_seed);
        const ObjectiveEvaluator evaluator(instance);
        Rng param_rng(derive_seed(trial_seed, 3));
        for (const BudgetDraw& draw : resolve_budgets(config, param_rng)) {
            for (const char* method : {max_penalty ? "alg1" : "alg2", "greedy", "oblivious"}) {
                ResultRow row;
                row.trial = trial;
                row.seed = trial_seed;
                row.n = instance.num_sources();
                row.m = instance.num_hypotheses();
                row.selection_budget = draw.selection;
                row.attack_budget = draw.attack;
                row.algorithm = method;
                row.objective = to_string(config.objective);

                const auto started = std::chrono::steady_clock::now();
                const std::uint64_t evals_before = evaluator.eval_count();
                SelectionOutcome outcome;
                if (std::string(method) == "alg1") {
                    const double beta = draw.beta.value_or(1.0);
                    outcome = robust_greedy_max_penalty(evaluator, draw.selection, draw.attack, beta);
                    row.beta = beta;
                } else if (std::string(method) == "alg2") {
                    outcome = robust_greedy_total_penalty(evaluator, draw.selection, draw.attack);
                } else {
                    outcome = run_baseline(evaluator, method, draw.selection, draw.attack,
                                           config.objective);
                }
                row.selected = outcome.selected;
                row.attack_set = outcome.attack.removed;
                row.surviving_value = outcome.surviving_value;
                if (config.compute_optimal) {
                    try {
                        const OptimalSelection optimum = optimal_robust_selection(
                            evaluator, draw.selection, draw.attack, config.objective,
                            /*full_size_only=*/false, config.evaluation_cap);
                        row.optimal_value = optimum.attack.surviving_value;
                        row.ratio = safe_ratio(outcome.surviving_value, *row.optimal_value);
                    } catch (const EnumerationRefusedError& e) {
                        row.note = std::string("skipped optimum: ") + e.what();
                    }
                }
                row.eval_count = evaluator.eval_count() - evals_before;
                row.elapsed_us = std::chrono::duration_cast<std::chrono::microseconds>(
                                     std::chrono::steady_clock::now() - started)
                                     .count();
                table.rows.push_back(row);
            }
        }
    }
    return table;
}

}  // namespace robsel
