#pragma once

#include <cstdint>

#include "robsel/objectives.hpp"
#include "robsel/subset.hpp"

namespace robsel {

// Outcome of the exact adversary: the removed subset, the objective value of
// what survives, and how many candidate evaluations the enumeration made.
struct AttackResult {
    SourceSet removed;
    double surviving_value = 0.0;
    std::uint64_t evaluations = 0;
};

// Exact robust optimum for one (K, A) budget pair.
struct OptimalSelection {
    SourceSet selected;
    AttackResult attack;
    std::uint64_t evaluations = 0;
};

// Deterministic preference order shared by the attacker (minimizing) and the
// selector (maximizing): among value ties, fewer elements win, then the
// smaller bitmask. Returns true when `a` beats `b` for the attacker.
inline bool attacker_prefers(double value_a, SourceSet a, double value_b, SourceSet b) {
    if (value_a != value_b) return value_a < value_b;
    if (a.count() != b.count()) return a.count() < b.count();
    return a.mask() < b.mask();
}
inline bool selector_prefers(double value_a, SourceSet a, double value_b, SourceSet b) {
    if (value_a != value_b) return value_a > value_b;
    if (a.count() != b.count()) return a.count() < b.count();
    return a.mask() < b.mask();
}

// Enumerates every removal subset of `selected` with at most `attack_budget`
// elements and returns the one minimizing the surviving objective value.
AttackResult worst_case_attack(const ObjectiveEvaluator& evaluator, SourceSet selected,
                               int attack_budget, Objective objective);

inline constexpr std::uint64_t default_evaluation_cap = 100'000'000;

// Estimated number of objective evaluations a full (K, A) enumeration needs;
// saturates at the cap sentinel.
double optimal_selection_cost(int n, int selection_budget, int attack_budget, bool full_size_only);

// Solves the max-min selection problem exactly: maximizes the worst-case
// surviving value over subsets of size <= K (or exactly K with
// full_size_only, a value-equivalent fast path for monotone objectives).
// Throws EnumerationRefusedError when the estimated work exceeds the cap.
OptimalSelection optimal_robust_selection(const ObjectiveEvaluator& evaluator, int selection_budget,
                                          int attack_budget, Objective objective,
                                          bool full_size_only = false,
                                          std::uint64_t evaluation_cap = default_evaluation_cap);

}  // namespace robsel
