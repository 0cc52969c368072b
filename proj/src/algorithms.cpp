#include "robsel/algorithms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "robsel/errors.hpp"

namespace robsel {

SourceSet vanilla_greedy(const ObjectiveEvaluator& evaluator, int budget, SourceSet ground,
                         Objective objective) {
    if (budget < 0) {
        throw InvalidInputError("greedy budget must be non-negative");
    }
    SourceSet picked;
    while (picked.count() < budget) {
        int best = -1;
        double best_value = -std::numeric_limits<double>::infinity();
        for (int v : ground - picked) {
            const double value = evaluator.value(objective, picked.with(v));
            if (value > best_value) {  // strict: ties keep the smallest index
                best_value = value;
                best = v;
            }
        }
        if (best < 0) break;  // ground exhausted
        picked = picked.with(best);
    }
    return picked;
}

SourceSet oblivious_select(const ObjectiveEvaluator& evaluator, int count, SourceSet ground,
                           Objective objective) {
    if (count < 0) {
        throw InvalidInputError("selection count must be non-negative");
    }
    if (count > ground.count()) {
        throw InvalidInputError("cannot select " + std::to_string(count) + " of " +
                                std::to_string(ground.count()) + " ground elements");
    }
    std::vector<std::pair<double, int>> scored;
    scored.reserve(static_cast<std::size_t>(ground.count()));
    for (int v : ground) {
        scored.emplace_back(evaluator.value(objective, SourceSet::single(v)), v);
    }
    // Stable sort on descending value keeps index order within ties.
    std::stable_sort(scored.begin(), scored.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    SourceSet picked;
    for (int k = 0; k < count; ++k) {
        picked = picked.with(scored[static_cast<std::size_t>(k)].second);
    }
    return picked;
}

int oblivious_phase_size(double beta, int attack_budget) {
    if (attack_budget == 0) return 0;
    // Exact-integer products like 2.1 * 10 can land a few ulp high; nudge
    // below before taking the ceiling.
    return static_cast<int>(std::ceil(beta * attack_budget - 1e-9));
}

namespace {

void check_budgets(const ObjectiveEvaluator& evaluator, int selection_budget, int attack_budget) {
    const int n = evaluator.instance().num_sources();
    if (selection_budget < 1 || selection_budget > n) {
        throw InvalidInputError("selection budget must be in [1, n]");
    }
    if (attack_budget < 0 || attack_budget >= selection_budget) {
        throw InvalidInputError("attack budget must satisfy 0 <= A < K");
    }
}

SelectionOutcome finish(const ObjectiveEvaluator& evaluator, SourceSet selected, std::string method,
                        Objective objective, int selection_budget, int attack_budget,
                        std::optional<double> beta, std::uint64_t evals_before) {
    SelectionOutcome outcome;
    outcome.selected = selected;
    outcome.method = std::move(method);
    outcome.objective = objective;
    outcome.selection_budget = selection_budget;
    outcome.attack_budget = attack_budget;
    outcome.beta = beta;
    outcome.attack = worst_case_attack(evaluator, selected, attack_budget, objective);
    outcome.surviving_value = outcome.attack.surviving_value;
    outcome.eval_count = evaluator.eval_count() - evals_before;
    return outcome;
}

}  // namespace

SelectionOutcome robust_greedy_max_penalty(const ObjectiveEvaluator& evaluator, int selection_budget,
                                           int attack_budget, double beta) {
    check_budgets(evaluator, selection_budget, attack_budget);
    const std::uint64_t evals_before = evaluator.eval_count();
    const int oblivious_size = oblivious_phase_size(beta, attack_budget);
    if (oblivious_size > selection_budget) {
        throw InvalidInputError("ceil(beta*A) = " + std::to_string(oblivious_size) +
                                " exceeds the selection budget " + std::to_string(selection_budget));
    }
    const SourceSet ground = evaluator.instance().all_sources();
    const SourceSet first = oblivious_select(evaluator, oblivious_size, ground, Objective::MaxPenalty);
    const SourceSet second =
        vanilla_greedy(evaluator, selection_budget - oblivious_size, ground - first, Objective::MaxPenalty);
    return finish(evaluator, first | second, "alg1", Objective::MaxPenalty, selection_budget,
                  attack_budget, beta, evals_before);
}

SelectionOutcome robust_greedy_total_penalty(const ObjectiveEvaluator& evaluator, int selection_budget,
                                             int attack_budget) {
    check_budgets(evaluator, selection_budget, attack_budget);
    const std::uint64_t evals_before = evaluator.eval_count();
    const SourceSet ground = evaluator.instance().all_sources();
    // First phase approximates the removal: the A individually-best elements.
    const SourceSet first = oblivious_select(evaluator, attack_budget, ground, Objective::TotalPenalty);
    // Second phase scores candidates without the first phase, as if it were
    // already removed.
    const SourceSet second =
        vanilla_greedy(evaluator, selection_budget - attack_budget, ground - first, Objective::TotalPenalty);
    return finish(evaluator, first | second, "alg2", Objective::TotalPenalty, selection_budget,
                  attack_budget, std::nullopt, evals_before);
}

SelectionOutcome run_baseline(const ObjectiveEvaluator& evaluator, const std::string& method,
                              int selection_budget, int attack_budget, Objective objective) {
    check_budgets(evaluator, selection_budget, attack_budget);
    const std::uint64_t evals_before = evaluator.eval_count();
    const SourceSet ground = evaluator.instance().all_sources();
    SourceSet selected;
    if (method == "greedy") {
        selected = vanilla_greedy(evaluator, selection_budget, ground, objective);
    } else if (method == "oblivious") {
        selected = oblivious_select(evaluator, std::min(selection_budget, ground.count()), ground, objective);
    } else {
        throw InvalidInputError("unknown baseline: " + method);
    }
    return finish(evaluator, selected, method, objective, selection_budget, attack_budget, std::nullopt,
                  evals_before);
}

}  // namespace robsel
