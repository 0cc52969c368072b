#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "robsel/instance.hpp"
#include "robsel/subset.hpp"

namespace robsel {

// The two objective families. MaxPenalty is f / the sum objective over
// 1 - (worst surviving penalty); TotalPenalty is g / the sum objective over
// 1 - (total penalty over the equivalent set). TotalPenalty is submodular,
// MaxPenalty in general is not.
enum class Objective { MaxPenalty, TotalPenalty };

std::string to_string(Objective objective);
Objective objective_from_string(const std::string& name);

// Evaluates equivalent sets and objective values against one instance.
// Pure functions of (instance, subset); the optional cache is transparent
// (identical results with the cache on or off) and is per-evaluator, so use
// one evaluator per thread.
class ObjectiveEvaluator {
public:
    // Caches whole-objective values per source-subset mask when n <= 20.
    explicit ObjectiveEvaluator(const ProblemInstance& instance, bool enable_cache = true);

    const ProblemInstance& instance() const { return *instance_; }

    // Hypotheses indistinguishable from p through the sources in I: the
    // intersection of p's blocks over I, or all hypotheses when I is empty.
    HypothesisSet equiv_set(SourceSet sources, int p) const;

    // 1 - max penalty over the equivalent set of p. In [0, 1]; 1 exactly when
    // p is fully discriminated.
    double f_value(SourceSet sources, int p) const;

    // Total penalty over the equivalent set of p. 1 at the empty set
    // (row-stochasticity), 0 when p is fully discriminated.
    double rho_value(SourceSet sources, int p) const;

    // Sum of f_value over all hypotheses. Monotone non-decreasing, in [0, m].
    double lambda_value(SourceSet sources) const;

    // Sum of 1 - rho_value over all hypotheses. Monotone non-decreasing,
    // submodular, in [0, m].
    double gamma_obj_value(SourceSet sources) const;

    double value(Objective objective, SourceSet sources) const;

    // Number of value() calls made so far (cache hits included).
    std::uint64_t eval_count() const { return eval_count_; }

private:
    double compute(Objective objective, SourceSet sources) const;

    const ProblemInstance* instance_;
    int m_ = 0;
    int n_ = 0;
    bool cache_enabled_ = false;
    mutable std::vector<double> cache_[2];  // per objective, indexed by mask; NaN = unset
    mutable std::uint64_t eval_count_ = 0;
};

}  // namespace robsel
