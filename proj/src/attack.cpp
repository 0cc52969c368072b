#include "robsel/attack.hpp"

#include <cmath>
#include <limits>

#include "robsel/errors.hpp"

namespace robsel {

AttackResult worst_case_attack(const ObjectiveEvaluator& evaluator, SourceSet selected,
                               int attack_budget, Objective objective) {
    if (attack_budget < 0) {
        throw InvalidInputError("attack budget must be non-negative");
    }
    AttackResult best;
    best.surviving_value = std::numeric_limits<double>::infinity();
    const std::uint64_t base = selected.mask();
    std::uint64_t sub = base;
    while (true) {
        const SourceSet removed = SourceSet::from_mask(sub);
        if (removed.count() <= attack_budget) {
            const double value = evaluator.value(objective, selected - removed);
            ++best.evaluations;
            if (attacker_prefers(value, removed, best.surviving_value, best.removed)) {
                best.surviving_value = value;
                best.removed = removed;
            }
        }
        if (sub == 0) break;
        sub = (sub - 1) & base;
    }
    return best;
}

double optimal_selection_cost(int n, int selection_budget, int attack_budget, bool full_size_only) {
    double total = 0.0;
    // count[k] = C(n, k), built iteratively.
    double choose_nk = 1.0;
    for (int k = 0; k <= selection_budget && k <= n; ++k) {
        if (k > 0) choose_nk *= static_cast<double>(n - k + 1) / k;
        if (full_size_only && k != selection_budget) continue;
        double attacks = 0.0;
        double choose_ka = 1.0;
        for (int a = 0; a <= attack_budget && a <= k; ++a) {
            if (a > 0) choose_ka *= static_cast<double>(k - a + 1) / a;
            attacks += choose_ka;
        }
        total += choose_nk * attacks;
        if (!std::isfinite(total)) return std::numeric_limits<double>::infinity();
    }
    return total;
}

OptimalSelection optimal_robust_selection(const ObjectiveEvaluator& evaluator, int selection_budget,
                                          int attack_budget, Objective objective, bool full_size_only,
                                          std::uint64_t evaluation_cap) {
    const int n = evaluator.instance().num_sources();
    if (selection_budget < 0 || selection_budget > n) {
        throw InvalidInputError("selection budget must be in [0, n]");
    }
    if (attack_budget < 0) {
        throw InvalidInputError("attack budget must be non-negative");
    }
    if (n > 30) {
        throw EnumerationRefusedError("exact selection enumerates 2^n subsets; n = " + std::to_string(n) +
                                      " is past the point of feasibility");
    }
    const double cost = optimal_selection_cost(n, selection_budget, attack_budget, full_size_only);
    if (cost > static_cast<double>(evaluation_cap)) {
        throw EnumerationRefusedError("exact selection needs ~" + std::to_string(cost) +
                                      " evaluations, above the cap of " + std::to_string(evaluation_cap));
    }

    OptimalSelection best;
    bool have_best = false;
    double best_value = -std::numeric_limits<double>::infinity();
    const std::uint64_t size = std::uint64_t{1} << n;
    for (std::uint64_t mask = 0; mask < size; ++mask) {
        const SourceSet candidate = SourceSet::from_mask(mask);
        const int k = candidate.count();
        if (k > selection_budget) continue;
        if (full_size_only && k != selection_budget) continue;
        AttackResult attack = worst_case_attack(evaluator, candidate, attack_budget, objective);
        best.evaluations += attack.evaluations;
        if (!have_best ||
            selector_prefers(attack.surviving_value, candidate, best_value, best.selected)) {
            have_best = true;
            best_value = attack.surviving_value;
            best.selected = candidate;
            best.attack = attack;
        }
    }
    return best;
}

}  // namespace robsel
