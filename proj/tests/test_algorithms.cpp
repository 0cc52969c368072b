#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "test_util.hpp"

#include "robsel/algorithms.hpp"
#include "robsel/bounds.hpp"
#include "robsel/ratios.hpp"

using namespace robsel;

TEST_CASE("greedy respects the budget and the ground set") {
    const auto instance = random_instance(6, 8, 1);
    const ObjectiveEvaluator eval(instance);
    const auto ground = instance.all_sources();
    CHECK(vanilla_greedy(eval, 0, ground, Objective::MaxPenalty).empty());
    CHECK(vanilla_greedy(eval, 8, ground, Objective::MaxPenalty) == ground);
    CHECK(vanilla_greedy(eval, 12, ground, Objective::MaxPenalty) == ground);
    const auto some = SourceSet::from_mask(0b1010101);
    const auto picked = vanilla_greedy(eval, 3, some, Objective::TotalPenalty);
    CHECK(picked.count() == 3);
    CHECK(picked.subset_of(some));
}

TEST_CASE("greedy on a submodular objective reaches the classical factor") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto instance = random_instance(6, 8, seed);
        const ObjectiveEvaluator eval(instance);
        const auto picked = vanilla_greedy(eval, 4, instance.all_sources(), Objective::TotalPenalty);
        // Best size-4 value by straight enumeration.
        double best = 0.0;
        for (std::uint64_t mask = 0; mask < 256; ++mask) {
            const auto set = SourceSet::from_mask(mask);
            if (set.count() != 4) continue;
            best = std::max(best, eval.gamma_obj_value(set));
        }
        CHECK(eval.gamma_obj_value(picked) >= (1.0 - std::exp(-1.0)) * best - 1e-12);
    }
}

TEST_CASE("oblivious selection matches a sort by singleton value") {
    for (std::uint64_t seed = 10; seed < 16; ++seed) {
        const auto instance = random_instance(6, 7, seed);
        const ObjectiveEvaluator eval(instance);
        const auto ground = instance.all_sources();
        const auto picked = oblivious_select(eval, 3, ground, Objective::MaxPenalty);
        // Count how many ground elements strictly beat each picked one.
        for (int chosen : picked) {
            int strictly_better = 0;
            const double chosen_value = eval.lambda_value(SourceSet::single(chosen));
            for (int other : ground) {
                if (eval.lambda_value(SourceSet::single(other)) > chosen_value) ++strictly_better;
            }
            CHECK(strictly_better < 3);
        }
        CHECK(oblivious_select(eval, 7, ground, Objective::MaxPenalty) == ground);
        CHECK(oblivious_select(eval, 1, ground, Objective::MaxPenalty).count() == 1);
        CHECK_THROWS_AS(oblivious_select(eval, 8, ground, Objective::MaxPenalty), InvalidInputError);
    }
}

TEST_CASE("oblivious phase size handles float noise") {
    CHECK(oblivious_phase_size(1.7, 4) == 7);   // ceil(6.8)
    CHECK(oblivious_phase_size(2.0, 3) == 6);   // exact product
    CHECK(oblivious_phase_size(2.1, 10) == 21); // 2.1*10 = 21.000000000000004
    CHECK(oblivious_phase_size(1.5, 0) == 0);
    CHECK(oblivious_phase_size(1.1, 3) == 4);   // ceil(3.3)
}

TEST_CASE("two-phase max-penalty selection composes oblivious and greedy") {
    const auto instance = random_instance(10, 10, 77);
    const ObjectiveEvaluator eval(instance);
    const auto outcome = robust_greedy_max_penalty(eval, 9, 4, 1.7);
    CHECK(outcome.selected.count() == 9);
    CHECK(outcome.method == "alg1");
    // ceil(1.7*4) = 7 oblivious picks, 2 greedy picks.
    const auto oblivious = oblivious_select(eval, 7, instance.all_sources(), Objective::MaxPenalty);
    CHECK(oblivious.subset_of(outcome.selected));
    CHECK((outcome.selected - oblivious).count() == 2);
    CHECK(outcome.attack.removed.count() <= 4);
    CHECK(outcome.surviving_value == outcome.attack.surviving_value);
}

TEST_CASE("zero attack budget reduces both algorithms to pure greedy") {
    const auto instance = random_instance(6, 8, 21);
    const ObjectiveEvaluator eval(instance);
    const auto alg1 = robust_greedy_max_penalty(eval, 4, 0, 1.5);
    CHECK(alg1.selected == vanilla_greedy(eval, 4, instance.all_sources(), Objective::MaxPenalty));
    const auto alg2 = robust_greedy_total_penalty(eval, 4, 0);
    CHECK(alg2.selected == vanilla_greedy(eval, 4, instance.all_sources(), Objective::TotalPenalty));
}

TEST_CASE("a full budget selects everything") {
    const auto instance = random_instance(5, 6, 31);
    const ObjectiveEvaluator eval(instance);
    CHECK(robust_greedy_max_penalty(eval, 6, 2, 1.5).selected == instance.all_sources());
    CHECK(robust_greedy_total_penalty(eval, 6, 2).selected == instance.all_sources());
}

TEST_CASE("invalid parameters are rejected") {
    const auto instance = random_instance(5, 6, 41);
    const ObjectiveEvaluator eval(instance);
    CHECK_THROWS_AS(robust_greedy_max_penalty(eval, 4, 4, 1.5), InvalidInputError);
    CHECK_THROWS_AS(robust_greedy_max_penalty(eval, 4, 2, 3.0), InvalidInputError);  // ceil(6) > 4
    CHECK_THROWS_AS(robust_greedy_total_penalty(eval, 7, 2), InvalidInputError);     // K > n
    CHECK_THROWS_AS(run_baseline(eval, "pro", 4, 2, Objective::MaxPenalty), InvalidInputError);
}

TEST_CASE("selection is deterministic") {
    const auto instance = random_instance(8, 9, 51);
    const ObjectiveEvaluator eval_a(instance);
    const ObjectiveEvaluator eval_b(instance, /*enable_cache=*/false);
    const auto a = robust_greedy_max_penalty(eval_a, 6, 2, 1.4);
    const auto b = robust_greedy_max_penalty(eval_b, 6, 2, 1.4);
    CHECK(a.selected == b.selected);
    CHECK(a.attack.removed == b.attack.removed);
    const auto c = robust_greedy_total_penalty(eval_a, 6, 2);
    const auto d = robust_greedy_total_penalty(eval_b, 6, 2);
    CHECK(c.selected == d.selected);
}

TEST_CASE("heuristics never beat the exact optimum") {
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        const auto instance = random_instance(6, 7, seed);
        const ObjectiveEvaluator eval(instance);
        const int k = 4, a = 2;
        const double lambda_opt =
            optimal_robust_selection(eval, k, a, Objective::MaxPenalty).attack.surviving_value;
        const double gamma_opt =
            optimal_robust_selection(eval, k, a, Objective::TotalPenalty).attack.surviving_value;
        CHECK(robust_greedy_max_penalty(eval, k, a, 1.5).surviving_value <= lambda_opt + 1e-12);
        CHECK(robust_greedy_total_penalty(eval, k, a).surviving_value <= gamma_opt + 1e-12);
        for (const char* baseline : {"greedy", "oblivious"}) {
            CHECK(run_baseline(eval, baseline, k, a, Objective::MaxPenalty).surviving_value <=
                  lambda_opt + 1e-12);
        }
    }
}

TEST_CASE("guarantee factors hold on small seeded instances") {
    int checked_thm2 = 0;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const auto instance = random_instance(3, 6, seed, /*enforce_unique=*/true);
        const ObjectiveEvaluator eval(instance);
        const int k = 4, a = 1;
        const double beta = (1.0 + static_cast<double>(k) / a) / 2.0;

        // Total-penalty guarantee holds unconditionally.
        const auto alg2 = robust_greedy_total_penalty(eval, k, a);
        double c_gamma = 0.0;
        for (int p = 0; p < instance.num_hypotheses(); ++p) {
            c_gamma = std::max(c_gamma, c_gp_value(instance, p));
        }
        const auto thm3 = theorem3_factor(c_gamma, k, a);
        const double gamma_opt =
            optimal_robust_selection(eval, k, a, Objective::TotalPenalty).attack.surviving_value;
        CHECK(alg2.surviving_value >= thm3.factor * gamma_opt - 1e-9);

        // Max-penalty guarantee where the parameter conditions hold.
        const auto bundle = aggregate_ratios(instance);
        const auto thm2 = theorem2_factor(bundle.gamma, bundle.kappa, bundle.alpha_check,
                                          bundle.nu_check, beta, static_cast<double>(a) / k);
        if (thm2.valid) {
            ++checked_thm2;
            const auto alg1 = robust_greedy_max_penalty(eval, k, a, beta);
            const double lambda_opt =
                optimal_robust_selection(eval, k, a, Objective::MaxPenalty).attack.surviving_value;
            CHECK(alg1.surviving_value >= thm2.factor * lambda_opt - 1e-9);
        }
    }
    CHECK(checked_thm2 > 0);  // the sweep must exercise valid rows
}
