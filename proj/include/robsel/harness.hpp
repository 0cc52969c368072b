#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "robsel/attack.hpp"
#include "robsel/instance.hpp"
#include "robsel/objectives.hpp"

namespace robsel {

// rmpis:           two-phase selection + exact attack + exact optimum on the
//                  max-penalty objective, with the two-phase guarantee factor
// mrmpis:          same for the total-penalty objective and its guarantee
// surrogate-cross: select with the total-penalty algorithm, evaluate the
//                  result under the max-penalty objective
// bayes:           belief-convergence simulations (own CSV schema)
// baselines:       algorithm-vs-baseline utilities on shared instances, one
//                  row per (trial, K, algorithm), no optimum by default
enum class ExperimentMode { Rmpis, Mrmpis, SurrogateCross, Bayes, Baselines };

std::string to_string(ExperimentMode mode);
ExperimentMode experiment_mode_from_string(const std::string& name);

struct GeneratorConfig {
    int m = 10;
    int n = 10;
    bool enforce_unique = false;
    std::optional<int> fixed_blocks;
};

// K per row: a value grid or a per-trial uniform draw (inclusive bounds).
struct SelectionBudgetSpec {
    std::vector<int> values;
    std::optional<std::pair<int, int>> uniform;
};

// A per row: grid, uniform draw (hi = -1 means K-1), or ceil(K/2).
struct AttackBudgetSpec {
    std::vector<int> values;
    std::optional<std::pair<int, int>> uniform;
    bool half_of_selection = false;
};

// beta per row: grid, floor(K/A), or the midpoint of (1, K/A).
struct BetaSpec {
    std::vector<double> values;
    bool floor_selection_over_attack = false;
    bool midpoint = false;
};

struct BayesConfig {
    int horizon = 2000;
    double epsilon = 0.2;
    int set_size = 3;
};

struct ExperimentConfig {
    ExperimentMode mode = ExperimentMode::Rmpis;
    int trials = 0;
    std::uint64_t master_seed = 0;

    std::optional<std::string> instance_file;
    GeneratorConfig generator;

    SelectionBudgetSpec selection;  // K
    AttackBudgetSpec attack;        // A
    BetaSpec beta;

    Objective objective = Objective::MaxPenalty;  // baselines mode only
    bool compute_optimal = true;
    std::uint64_t evaluation_cap = default_evaluation_cap;
    BayesConfig bayes;

    static ExperimentConfig from_json_string(const std::string& text);
    static ExperimentConfig from_file(const std::string& path);
};

// One selection-experiment row; optionals render as empty CSV cells.
struct ResultRow {
    int trial = 0;
    std::uint64_t seed = 0;
    int n = 0;
    int m = 0;
    int selection_budget = 0;
    int attack_budget = 0;
    std::optional<double> beta;
    std::string algorithm;
    std::string objective;
    std::optional<SourceSet> selected;
    std::optional<SourceSet> attack_set;
    std::optional<double> surviving_value;
    std::optional<double> optimal_value;
    std::optional<double> ratio;
    std::optional<double> bound_factor;
    std::optional<bool> bound_valid;
    std::uint64_t eval_count = 0;
    std::string note;  // skip reason for infeasible rows
    std::int64_t elapsed_us = 0;
};

struct BayesRow {
    int trial = 0;
    std::uint64_t seed = 0;
    int n = 0;
    int m = 0;
    SourceSet selected;
    int true_state = 0;
    int horizon = 0;
    double epsilon = 0.0;
    double max_within_deviation = 0.0;
    double final_outside_mass = 0.0;
    bool within_ok = false;
    bool outside_ok = false;
    std::int64_t elapsed_us = 0;
};

// Deterministic given the config: identical runs produce identical tables
// (timing aside). to_csv(false) drops the elapsed_us column, which is the
// form reproducibility checks compare.
struct ExperimentTable {
    ExperimentMode mode = ExperimentMode::Rmpis;
    std::vector<ResultRow> rows;
    std::vector<BayesRow> bayes_rows;

    std::string to_csv(bool with_timing = true) const;
};

// Runs the configured experiment (rmpis / mrmpis / surrogate-cross / bayes
// modes). Baselines configs are routed to compare_baselines.
ExperimentTable run_experiment(const ExperimentConfig& config);

// Evaluates the two-phase algorithm against the greedy and oblivious
// baselines on the same per-trial instances, one row per
// (trial, K, algorithm).
ExperimentTable compare_baselines(const ExperimentConfig& config);

// Shortest round-trip decimal rendering used for all CSV numerics.
std::string format_double(double value);
std::string format_mask(SourceSet set);

}  // namespace robsel
