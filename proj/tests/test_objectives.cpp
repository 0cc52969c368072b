#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "test_util.hpp"

#include "robsel/objectives.hpp"

using namespace robsel;
using robsel::testing::make_instance;
using robsel::testing::worked_instance;

namespace {
constexpr double value_tolerance = 1e-12;
const SourceSet kA = SourceSet::single(0);
const SourceSet kB = SourceSet::single(1);
}  // namespace

TEST_CASE("equivalent sets on the worked instance") {
    const auto instance = worked_instance();
    const ObjectiveEvaluator eval(instance);

    CHECK(eval.equiv_set({}, 0) == instance.all_hypotheses());
    CHECK(eval.equiv_set(kA, 0) == HypothesisSet::from_indices({0, 1}));
    CHECK(eval.equiv_set(kB, 0) == HypothesisSet::from_indices({0, 2}));
    // Hand intersection {0,1} & {0,2}.
    CHECK(eval.equiv_set(kA | kB, 0) == HypothesisSet::single(0));
    CHECK(eval.equiv_set(kA | kB, 1) == HypothesisSet::single(1));
}

TEST_CASE("fully discriminating sources give singleton sets") {
    const auto instance = make_instance({{0.0, 0.3, 0.7}, {0.5, 0.0, 0.5}, {0.2, 0.8, 0.0}},
                                        {{{0}, {1}, {2}}, {{0}, {1}, {2}}});
    const ObjectiveEvaluator eval(instance);
    for (int p = 0; p < 3; ++p) {
        CHECK(eval.equiv_set(kA, p) == HypothesisSet::single(p));
        CHECK(eval.f_value(kA, p) == 1.0);
        CHECK(eval.rho_value(kA, p) == 0.0);
    }
    CHECK(eval.lambda_value(kA) == doctest::Approx(3.0));
    CHECK(eval.gamma_obj_value(kA) == doctest::Approx(3.0));
}

TEST_CASE("objective values on the worked instance") {
    const auto instance = worked_instance();
    const ObjectiveEvaluator eval(instance);

    // Row [0, .3, .7] with equivalent set {0,1}: worst penalty .3, total .3.
    CHECK(eval.f_value(kA, 0) == doctest::Approx(0.7).epsilon(value_tolerance));
    CHECK(eval.rho_value(kA, 0) == doctest::Approx(0.3).epsilon(value_tolerance));

    // Empty set: f = 1 - max of the row, rho = 1 by row-stochasticity.
    CHECK(eval.f_value({}, 0) == doctest::Approx(0.3));
    CHECK(eval.rho_value({}, 0) == doctest::Approx(1.0));
    CHECK(eval.gamma_obj_value({}) == doctest::Approx(0.0));

    // Hand-summed objective values, cross-checked against the oracle.
    CHECK(eval.lambda_value(kA) == doctest::Approx(2.2).epsilon(value_tolerance));
    CHECK(eval.lambda_value(kB) == doctest::Approx(2.1).epsilon(value_tolerance));
    CHECK(eval.lambda_value(kA) ==
          doctest::Approx(testing::oracle_objective(instance, Objective::MaxPenalty, {0})));
    CHECK(eval.gamma_obj_value(kA) ==
          doctest::Approx(testing::oracle_objective(instance, Objective::TotalPenalty, {0})));
}

TEST_CASE("objective values match the oracle on random instances") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto instance = random_instance(6, 6, seed);
        const ObjectiveEvaluator eval(instance);
        for (std::uint64_t mask = 0; mask < 64; ++mask) {
            const auto set = SourceSet::from_mask(mask);
            const auto indices = set.indices();
            CHECK(eval.lambda_value(set) ==
                  doctest::Approx(testing::oracle_objective(instance, Objective::MaxPenalty, indices))
                      .epsilon(value_tolerance));
            CHECK(eval.gamma_obj_value(set) ==
                  doctest::Approx(testing::oracle_objective(instance, Objective::TotalPenalty, indices))
                      .epsilon(value_tolerance));
        }
    }
}

TEST_CASE("per-hypothesis values stay within bounds") {
    for (std::uint64_t seed = 20; seed < 26; ++seed) {
        const auto instance = random_instance(5, 6, seed);
        const ObjectiveEvaluator eval(instance);
        for (std::uint64_t mask = 0; mask < 64; ++mask) {
            const auto set = SourceSet::from_mask(mask);
            for (int p = 0; p < 5; ++p) {
                const double f = eval.f_value(set, p);
                const double g = 1.0 - eval.rho_value(set, p);
                CHECK(f >= 0.0);
                CHECK(f <= 1.0);
                CHECK(g >= -value_tolerance);
                CHECK(g <= 1.0);
                CHECK(eval.equiv_set(set, p).contains(p));
            }
            CHECK(eval.lambda_value(set) <= 5.0 + value_tolerance);
            CHECK(eval.gamma_obj_value(set) <= 5.0 + value_tolerance);
            CHECK(eval.gamma_obj_value(set) >= -value_tolerance);
        }
    }
}

TEST_CASE("monotonicity and the intersection law, exhaustive at n=6") {
    for (std::uint64_t seed = 40; seed < 45; ++seed) {
        const auto instance = random_instance(5, 6, seed);
        const ObjectiveEvaluator eval(instance);
        for (std::uint64_t s = 0; s < 64; ++s) {
            const auto small = SourceSet::from_mask(s);
            for (std::uint64_t t = 0; t < 64; ++t) {
                const auto large = SourceSet::from_mask(t);
                if (small.subset_of(large)) {
                    CHECK(eval.lambda_value(small) <= eval.lambda_value(large) + value_tolerance);
                    CHECK(eval.gamma_obj_value(small) <= eval.gamma_obj_value(large) + value_tolerance);
                }
                for (int p = 0; p < 5; ++p) {
                    CHECK(eval.equiv_set(small | large, p) ==
                          (eval.equiv_set(small, p) & eval.equiv_set(large, p)));
                }
            }
        }
    }
}

TEST_CASE("total-penalty objective has diminishing returns, exhaustive at n=6") {
    for (std::uint64_t seed = 50; seed < 53; ++seed) {
        const auto instance = random_instance(5, 6, seed);
        const ObjectiveEvaluator eval(instance);
        for (std::uint64_t inner = 0; inner < 64; ++inner) {
            for (std::uint64_t outer = inner; outer < 64; ++outer) {
                if ((inner & ~outer) != 0) continue;  // need inner subset of outer
                for (int j = 0; j < 6; ++j) {
                    if ((outer >> j) & 1) continue;
                    const auto small = SourceSet::from_mask(inner);
                    const auto large = SourceSet::from_mask(outer);
                    const double gain_small =
                        eval.gamma_obj_value(small.with(j)) - eval.gamma_obj_value(small);
                    const double gain_large =
                        eval.gamma_obj_value(large.with(j)) - eval.gamma_obj_value(large);
                    CHECK(gain_small >= gain_large - value_tolerance);
                }
            }
        }
    }
}

TEST_CASE("cache is transparent") {
    const auto instance = random_instance(6, 8, 77);
    const ObjectiveEvaluator cached(instance, /*enable_cache=*/true);
    const ObjectiveEvaluator plain(instance, /*enable_cache=*/false);
    for (std::uint64_t mask = 0; mask < 256; ++mask) {
        const auto set = SourceSet::from_mask(mask);
        CHECK(cached.lambda_value(set) == plain.lambda_value(set));
        CHECK(cached.gamma_obj_value(set) == plain.gamma_obj_value(set));
        // Repeat lookups return the identical double.
        CHECK(cached.lambda_value(set) == cached.lambda_value(set));
    }
}

TEST_CASE("equiv_set rejects bad indices") {
    const auto instance = worked_instance();
    const ObjectiveEvaluator eval(instance);
    CHECK_THROWS_AS(eval.equiv_set(kA, 3), InvalidInputError);
    CHECK_THROWS_AS(eval.equiv_set(SourceSet::from_mask(0b100), 0), InvalidInputError);
}
