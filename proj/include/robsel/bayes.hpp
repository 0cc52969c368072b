#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "robsel/instance.hpp"
#include "robsel/subset.hpp"

namespace robsel {

// Finite observation model realizing an instance's equivalence structure:
// source i emits one of r_i symbols, where r_i is the number of blocks in
// its partition, and hypotheses share a probability vector exactly when they
// share a block.
struct LikelihoodModel {
    // probs[source][hypothesis][symbol]; every vector is strictly positive
    // and sums to 1.
    std::vector<std::vector<std::vector<double>>> probs;

    int alphabet_size(int source) const {
        return static_cast<int>(probs[static_cast<std::size_t>(source)].front().size());
    }
};

// Block b of source i gets mass 1-epsilon on symbol b and epsilon/(r-1)
// elsewhere; single-block sources emit one sure symbol. epsilon in (0, 0.5).
LikelihoodModel synthesize_likelihoods(const ProblemInstance& instance, double epsilon);

// Belief over hypotheses, kept in log space so thousands of updates cannot
// underflow. probabilities() materializes the normalized vector.
struct BeliefState {
    std::vector<double> log_mu;
    std::int64_t t = 0;

    static BeliefState uniform(int m);
    std::vector<double> probabilities() const;
};

// One Bayes update with the product likelihood of the sources in `selected`.
// observation[i] is the symbol emitted by source i (entries outside
// `selected` are ignored). An empty selection returns the belief unchanged.
BeliefState belief_step(const LikelihoodModel& model, SourceSet selected, const BeliefState& prior,
                        const std::vector<int>& observation);

struct ConvergenceReport {
    HypothesisSet equivalent_set;
    // max over all steps and all q in the equivalent set of |mu(q) - mu(p)|.
    double max_within_deviation = 0.0;
    // total belief outside the equivalent set after the last step
    double final_outside_mass = 0.0;
    double max_outside_belief = 0.0;
    bool within_ok = false;
    bool outside_ok = false;

    bool ok() const { return within_ok && outside_ok; }
};

// Runs `horizon` belief updates on observations sampled i.i.d. from the true
// state's likelihoods, starting from the uniform prior, and checks that
// beliefs inside the equivalent set stay mutually equal while mass outside
// dies out. When `trace` is given, writes one CSV row per step:
// t, mu_t(0), ..., mu_t(m-1).
ConvergenceReport simulate_convergence(const ProblemInstance& instance, const LikelihoodModel& model,
                                       SourceSet selected, int true_state, int horizon,
                                       std::uint64_t seed, double within_tolerance = 1e-12,
                                       double outside_tolerance = 1e-3, std::ostream* trace = nullptr);

}  // namespace robsel
