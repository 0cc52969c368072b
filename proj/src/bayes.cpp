#include "robsel/bayes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "robsel/errors.hpp"
#include "robsel/objectives.hpp"
#include "robsel/rng.hpp"

namespace robsel {

LikelihoodModel synthesize_likelihoods(const ProblemInstance& instance, double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 0.5)) {
        throw InvalidInputError("epsilon must lie in (0, 0.5)");
    }
    const int m = instance.num_hypotheses();
    const int n = instance.num_sources();
    LikelihoodModel model;
    model.probs.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const auto& blocks = instance.partitions()[static_cast<std::size_t>(i)].blocks;
        const int r = static_cast<int>(blocks.size());
        std::vector<double> block_vector(static_cast<std::size_t>(r));
        auto& per_hypothesis = model.probs[static_cast<std::size_t>(i)];
        per_hypothesis.assign(static_cast<std::size_t>(m), {});
        for (int b = 0; b < r; ++b) {
            std::vector<double> v(static_cast<std::size_t>(r), r == 1 ? 1.0 : epsilon / (r - 1));
            if (r > 1) v[static_cast<std::size_t>(b)] = 1.0 - epsilon;
            for (int h : blocks[static_cast<std::size_t>(b)]) {
                per_hypothesis[static_cast<std::size_t>(h)] = v;
            }
        }
        for (int h = 0; h < m; ++h) {
            if (per_hypothesis[static_cast<std::size_t>(h)].empty()) {
                throw InvalidInputError("partition " + std::to_string(i) + " does not cover hypothesis " +
                                        std::to_string(h) + "; validate the instance");
            }
        }
    }
    return model;
}

BeliefState BeliefState::uniform(int m) {
    if (m < 1) {
        throw InvalidInputError("belief needs at least one hypothesis");
    }
    BeliefState state;
    state.log_mu.assign(static_cast<std::size_t>(m), -std::log(static_cast<double>(m)));
    return state;
}

std::vector<double> BeliefState::probabilities() const {
    // log_mu is kept normalized up to rounding; renormalize on the way out.
    double max_log = -std::numeric_limits<double>::infinity();
    for (double lw : log_mu) max_log = std::max(max_log, lw);
    std::vector<double> out(log_mu.size());
    double sum = 0.0;
    for (std::size_t q = 0; q < log_mu.size(); ++q) {
        out[q] = std::exp(log_mu[q] - max_log);
        sum += out[q];
    }
    for (double& v : out) v /= sum;
    return out;
}

BeliefState belief_step(const LikelihoodModel& model, SourceSet selected, const BeliefState& prior,
                        const std::vector<int>& observation) {
    BeliefState next = prior;
    ++next.t;
    if (selected.empty()) {
        return next;  // empty product likelihood: belief unchanged, bit for bit
    }
    const int m = static_cast<int>(prior.log_mu.size());
    for (int i : selected) {
        if (i >= static_cast<int>(model.probs.size())) {
            throw InvalidInputError("source index out of range: " + std::to_string(i));
        }
        if (i >= static_cast<int>(observation.size())) {
            throw InvalidInputError("observation vector too short for source " + std::to_string(i));
        }
        const int symbol = observation[static_cast<std::size_t>(i)];
        if (symbol < 0 || symbol >= model.alphabet_size(i)) {
            throw InvalidInputError("symbol out of range for source " + std::to_string(i));
        }
        for (int q = 0; q < m; ++q) {
            next.log_mu[static_cast<std::size_t>(q)] +=
                std::log(model.probs[static_cast<std::size_t>(i)][static_cast<std::size_t>(q)]
                                    [static_cast<std::size_t>(symbol)]);
        }
    }
    // One normalization per step keeps the recursion stable for long runs.
    double max_log = -std::numeric_limits<double>::infinity();
    for (double lw : next.log_mu) max_log = std::max(max_log, lw);
    double sum = 0.0;
    for (double lw : next.log_mu) sum += std::exp(lw - max_log);
    const double log_norm = max_log + std::log(sum);
    for (double& lw : next.log_mu) lw -= log_norm;
    return next;
}

ConvergenceReport simulate_convergence(const ProblemInstance& instance, const LikelihoodModel& model,
                                       SourceSet selected, int true_state, int horizon,
                                       std::uint64_t seed, double within_tolerance,
                                       double outside_tolerance, std::ostream* trace) {
    const int m = instance.num_hypotheses();
    if (true_state < 0 || true_state >= m) {
        throw InvalidInputError("true state out of range");
    }
    if (horizon < 0) {
        throw InvalidInputError("horizon must be non-negative");
    }
    ObjectiveEvaluator evaluator(instance, /*enable_cache=*/false);
    ConvergenceReport report;
    report.equivalent_set = evaluator.equiv_set(selected, true_state);

    Rng rng(seed);
    BeliefState state = BeliefState::uniform(m);
    std::vector<int> observation(model.probs.size(), 0);

    const auto emit = [&](const BeliefState& s) {
        if (trace == nullptr) return;
        const auto mu = s.probabilities();
        *trace << s.t;
        for (double v : mu) *trace << ',' << v;
        *trace << '\n';
    };
    if (trace != nullptr) {
        *trace << "t";
        for (int q = 0; q < m; ++q) *trace << ",mu_" << q;
        *trace << '\n';
    }
    emit(state);

    std::vector<double> mu = state.probabilities();
    for (int step = 0; step < horizon; ++step) {
        for (int i : selected) {
            // Inverse-CDF sample from the true state's distribution.
            const auto& dist =
                model.probs[static_cast<std::size_t>(i)][static_cast<std::size_t>(true_state)];
            const double u = rng.next_unit();
            double cumulative = 0.0;
            int symbol = static_cast<int>(dist.size()) - 1;
            for (std::size_t s = 0; s < dist.size(); ++s) {
                cumulative += dist[s];
                if (u < cumulative) {
                    symbol = static_cast<int>(s);
                    break;
                }
            }
            observation[static_cast<std::size_t>(i)] = symbol;
        }
        state = belief_step(model, selected, state, observation);
        mu = state.probabilities();
        for (int q : report.equivalent_set) {
            report.max_within_deviation =
                std::max(report.max_within_deviation,
                         std::abs(mu[static_cast<std::size_t>(q)] -
                                  mu[static_cast<std::size_t>(true_state)]));
        }
        emit(state);
    }
    for (int q = 0; q < m; ++q) {
        if (report.equivalent_set.contains(q)) continue;
        report.final_outside_mass += mu[static_cast<std::size_t>(q)];
        report.max_outside_belief = std::max(report.max_outside_belief, mu[static_cast<std::size_t>(q)]);
    }
    report.within_ok = report.max_within_deviation <= within_tolerance;
    report.outside_ok = report.final_outside_mass <= outside_tolerance;
    return report;
}

}  // namespace robsel
