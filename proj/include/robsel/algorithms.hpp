#pragma once

#include <optional>
#include <string>

#include "robsel/attack.hpp"
#include "robsel/objectives.hpp"

namespace robsel {

// Result of one selection run: the chosen set, the exact worst-case attack on
// it, and (when computed by the caller) the optimal comparison and guarantee
// factor.
struct SelectionOutcome {
    SourceSet selected;
    std::string method;
    Objective objective = Objective::MaxPenalty;
    int selection_budget = 0;  // K
    int attack_budget = 0;     // A
    std::optional<double> beta;

    AttackResult attack;
    double surviving_value = 0.0;

    std::optional<double> optimal_value;
    std::optional<double> ratio;
    std::optional<double> bound_factor;
    std::optional<bool> bound_valid;

    std::uint64_t eval_count = 0;
};

// Standard greedy: repeatedly add the element of `ground` with the largest
// objective value together with the current pick, until `budget` elements are
// chosen or `ground` is exhausted. Zero-gain elements still fill the budget;
// ties go to the smallest source index.
SourceSet vanilla_greedy(const ObjectiveEvaluator& evaluator, int budget, SourceSet ground,
                         Objective objective);

// The `count` elements of `ground` with the highest singleton values, ties to
// the smallest index.
SourceSet oblivious_select(const ObjectiveEvaluator& evaluator, int count, SourceSet ground,
                           Objective objective);

// ceil(beta * A), guarded against floating-point noise on exact-integer
// products.
int oblivious_phase_size(double beta, int attack_budget);

// Two-phase robust selection for the max-penalty objective: ceil(beta*A)
// oblivious picks, then standard greedy on the rest of the ground set up to
// K. The returned outcome carries the exact worst-case attack.
SelectionOutcome robust_greedy_max_penalty(const ObjectiveEvaluator& evaluator, int selection_budget,
                                           int attack_budget, double beta);

// Two-phase robust selection for the total-penalty objective: A oblivious
// picks approximate the removal, then greedy completes the set to K scoring
// candidates without the first phase.
SelectionOutcome robust_greedy_total_penalty(const ObjectiveEvaluator& evaluator, int selection_budget,
                                             int attack_budget);

// Plain greedy / oblivious baselines wrapped with the exact attack, for
// side-by-side comparisons.
SelectionOutcome run_baseline(const ObjectiveEvaluator& evaluator, const std::string& method,
                              int selection_budget, int attack_budget, Objective objective);

}  // namespace robsel
