#include "robsel/objectives.hpp"

#include <cmath>
#include <limits>

#include "robsel/errors.hpp"

namespace robsel {

namespace {
constexpr int max_cache_bits = 20;
}

std::string to_string(Objective objective) {
    return objective == Objective::MaxPenalty ? "maxpen" : "totalpen";
}

Objective objective_from_string(const std::string& name) {
    if (name == "maxpen") return Objective::MaxPenalty;
    if (name == "totalpen") return Objective::TotalPenalty;
    throw InvalidInputError("unknown objective: " + name + " (expected maxpen or totalpen)");
}

ObjectiveEvaluator::ObjectiveEvaluator(const ProblemInstance& instance, bool enable_cache)
    : instance_(&instance),
      m_(instance.num_hypotheses()),
      n_(instance.num_sources()),
      cache_enabled_(enable_cache && instance.num_sources() <= max_cache_bits) {
    if (cache_enabled_) {
        const std::size_t size = std::size_t{1} << n_;
        cache_[0].assign(size, std::numeric_limits<double>::quiet_NaN());
        cache_[1].assign(size, std::numeric_limits<double>::quiet_NaN());
    }
}

HypothesisSet ObjectiveEvaluator::equiv_set(SourceSet sources, int p) const {
    if (p < 0 || p >= m_) {
        throw InvalidInputError("hypothesis index out of range: " + std::to_string(p));
    }
    HypothesisSet equiv = instance_->all_hypotheses();
    for (int i : sources) {
        if (i >= n_) {
            throw InvalidInputError("source index out of range: " + std::to_string(i));
        }
        const HypothesisSet block = instance_->block_of(i, p);
        if (block.empty()) {
            throw InvalidInputError("partition " + std::to_string(i) + " does not cover hypothesis " +
                                    std::to_string(p) + "; validate the instance");
        }
        equiv = equiv & block;
    }
    return equiv;
}

double ObjectiveEvaluator::f_value(SourceSet sources, int p) const {
    double worst = 0.0;
    for (int j : equiv_set(sources, p)) {
        worst = std::max(worst, instance_->penalty(p, j));
    }
    return 1.0 - worst;
}

double ObjectiveEvaluator::rho_value(SourceSet sources, int p) const {
    double total = 0.0;
    for (int j : equiv_set(sources, p)) {
        total += instance_->penalty(p, j);
    }
    return total;
}

double ObjectiveEvaluator::compute(Objective objective, SourceSet sources) const {
    double sum = 0.0;
    if (objective == Objective::MaxPenalty) {
        for (int p = 0; p < m_; ++p) sum += f_value(sources, p);
    } else {
        for (int p = 0; p < m_; ++p) sum += 1.0 - rho_value(sources, p);
    }
    return sum;
}

double ObjectiveEvaluator::value(Objective objective, SourceSet sources) const {
    ++eval_count_;
    if (!cache_enabled_ || (sources.mask() >> n_) != 0) {
        return compute(objective, sources);
    }
    auto& slot = cache_[objective == Objective::MaxPenalty ? 0 : 1][sources.mask()];
    if (std::isnan(slot)) {
        slot = compute(objective, sources);
    }
    return slot;
}

double ObjectiveEvaluator::lambda_value(SourceSet sources) const {
    return value(Objective::MaxPenalty, sources);
}

double ObjectiveEvaluator::gamma_obj_value(SourceSet sources) const {
    return value(Objective::TotalPenalty, sources);
}

}  // namespace robsel
