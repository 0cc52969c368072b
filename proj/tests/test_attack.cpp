#include "doctest.h"
#include "oracles.hpp"
#include "test_util.hpp"

#include "robsel/attack.hpp"

using namespace robsel;

TEST_CASE("zero attack budget removes nothing") {
    const auto instance = testing::worked_instance();
    const ObjectiveEvaluator eval(instance);
    const auto full = instance.all_sources();
    const auto result = worst_case_attack(eval, full, 0, Objective::MaxPenalty);
    CHECK(result.removed.empty());
    CHECK(result.surviving_value == eval.lambda_value(full));
    CHECK(result.evaluations == 1);
}

TEST_CASE("a budget covering the whole set drops to the empty-set value") {
    const auto instance = random_instance(5, 5, 2);
    const ObjectiveEvaluator eval(instance);
    const auto selected = SourceSet::from_mask(0b10110);
    for (const auto objective : {Objective::MaxPenalty, Objective::TotalPenalty}) {
        const auto result = worst_case_attack(eval, selected, selected.count(), objective);
        CHECK(result.surviving_value == doctest::Approx(eval.value(objective, {})));
    }
}

TEST_CASE("attack agrees with the straight-loop oracle") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto instance = random_instance(5, 7, seed);
        const ObjectiveEvaluator eval(instance);
        const auto selected = SourceSet::from_mask(0b1011011);  // |I| = 5
        for (int budget : {1, 2, 3}) {
            for (const auto objective : {Objective::MaxPenalty, Objective::TotalPenalty}) {
                const auto fast = worst_case_attack(eval, selected, budget, objective);
                const auto slow = testing::oracle_worst_case_attack(instance, selected.indices(),
                                                                    budget, objective);
                CHECK(fast.surviving_value == slow.surviving_value);
                CHECK(fast.removed.mask() == testing::to_mask(slow.removed));
            }
        }
    }
}

TEST_CASE("attack value never exceeds the unattacked value") {
    for (std::uint64_t seed = 30; seed < 40; ++seed) {
        const auto instance = random_instance(6, 6, seed);
        const ObjectiveEvaluator eval(instance);
        for (std::uint64_t mask = 0; mask < 64; ++mask) {
            const auto set = SourceSet::from_mask(mask);
            const auto result = worst_case_attack(eval, set, 2, Objective::MaxPenalty);
            CHECK(result.surviving_value <= eval.lambda_value(set) + 1e-12);
            CHECK(result.removed.subset_of(set));
            CHECK(result.removed.count() <= 2);
        }
    }
}

TEST_CASE("optimal selection agrees with the straight-loop oracle") {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        const auto instance = random_instance(5, 6, seed);
        const ObjectiveEvaluator eval(instance);
        for (const auto objective : {Objective::MaxPenalty, Objective::TotalPenalty}) {
            const auto fast = optimal_robust_selection(eval, 4, 2, objective);
            const auto slow = testing::oracle_optimal_selection(instance, 4, 2, objective);
            CHECK(fast.attack.surviving_value == slow.value);
            CHECK(fast.selected.mask() == testing::to_mask(slow.selected));
        }
    }
}

TEST_CASE("trivial optima") {
    const auto instance = random_instance(6, 6, 5);
    const ObjectiveEvaluator eval(instance);
    // No attack, full budget: everything is selected (value of the ground set,
    // tie-break may drop redundant sources from the reported set).
    const auto all_in = optimal_robust_selection(eval, 6, 0, Objective::MaxPenalty);
    CHECK(all_in.attack.surviving_value ==
          doctest::Approx(eval.lambda_value(instance.all_sources())));

    // Uninformative sources: any selection has the empty-set value and the
    // tie-break picks the empty set.
    const auto flat = testing::make_instance({{0.0, 0.4, 0.6}, {0.3, 0.0, 0.7}, {0.1, 0.9, 0.0}},
                                             {{{0, 1, 2}}, {{0, 1, 2}}, {{0, 1, 2}}});
    const ObjectiveEvaluator flat_eval(flat);
    const auto outcome = optimal_robust_selection(flat_eval, 2, 1, Objective::MaxPenalty);
    CHECK(outcome.attack.surviving_value == doctest::Approx(flat_eval.lambda_value({})));
    CHECK(outcome.selected.empty());
}

TEST_CASE("optimal value is monotone in the budgets") {
    for (std::uint64_t seed = 50; seed < 56; ++seed) {
        const auto instance = random_instance(5, 6, seed);
        const ObjectiveEvaluator eval(instance);
        for (const auto objective : {Objective::MaxPenalty, Objective::TotalPenalty}) {
            double previous = -1.0;
            for (int k = 1; k <= 6; ++k) {
                const double value =
                    optimal_robust_selection(eval, k, 1, objective).attack.surviving_value;
                CHECK(value >= previous - 1e-12);  // non-decreasing in K
                previous = value;
            }
            previous = 1e9;
            for (int a = 0; a < 4; ++a) {
                const double value =
                    optimal_robust_selection(eval, 4, a, objective).attack.surviving_value;
                CHECK(value <= previous + 1e-12);  // non-increasing in A
                previous = value;
            }
        }
    }
}

TEST_CASE("full-size fast path matches on value") {
    for (std::uint64_t seed = 60; seed < 68; ++seed) {
        const auto instance = random_instance(5, 6, seed);
        const ObjectiveEvaluator eval(instance);
        const auto general = optimal_robust_selection(eval, 4, 2, Objective::MaxPenalty, false);
        const auto fast = optimal_robust_selection(eval, 4, 2, Objective::MaxPenalty, true);
        CHECK(general.attack.surviving_value == doctest::Approx(fast.attack.surviving_value));
        CHECK(fast.selected.count() == 4);
    }
}

TEST_CASE("oversize enumerations are refused") {
    const auto instance = random_instance(10, 20, 9);
    const ObjectiveEvaluator eval(instance);
    CHECK_THROWS_AS(optimal_robust_selection(eval, 10, 5, Objective::MaxPenalty, false, 1000),
                    EnumerationRefusedError);
}

TEST_CASE("the evaluation-cost estimate counts pairs") {
    // n=3, K=2, A=1: I in {0,1,2} sizes; attacks per I of size k: 1 + k.
    // sizes: C(3,0)*1 + C(3,1)*2 + C(3,2)*3 = 1 + 6 + 9 = 16.
    CHECK(optimal_selection_cost(3, 2, 1, false) == doctest::Approx(16.0));
    CHECK(optimal_selection_cost(3, 2, 1, true) == doctest::Approx(9.0));
}
