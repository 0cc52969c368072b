#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "robsel/instance.hpp"
#include "robsel/objectives.hpp"

namespace robsel {

// Closed-form curvature/submodularity figures per hypothesis row, with the
// min/max aggregates that apply to the summed objectives. The closed forms
// are one-sided guarantees, not exact values: gamma, nu_check and kappa are
// lower bounds on the exact ratios, alpha_check and c_Gamma upper bounds.
// kappa values are reported unclamped; they only certify Theorem-2-style
// guarantees when < 1.
struct RatioBundle {
    std::vector<double> gamma_p;
    std::vector<double> alpha_check_p;
    std::vector<double> nu_check_p;
    std::vector<double> kappa_p;
    std::vector<double> c_gp;

    double gamma = 0.0;        // min over rows
    double alpha_check = 0.0;  // max over rows
    double nu_check = 0.0;     // min over rows
    double kappa = 0.0;        // min over rows
    double c_Gamma = 0.0;      // max over rows

    bool kappa_valid_for_guarantee = false;  // kappa in (0, 1)
};

// Smallest and largest |xi_pi - xi_pj| over distinct index pairs of row p.
// Pairs range over the whole row, diagonal included, so differences against
// the zero diagonal count.
struct RowSpread {
    double floor = 0.0;  // min pairwise difference
    double span = 0.0;   // max pairwise difference
};
RowSpread penalty_spread(const ProblemInstance& instance, int p);

// Submodularity-ratio lower bound for row p: floor/span. Throws
// DegenerateRatioError when the floor is zero (two equal penalties in the
// row).
double gamma_bound(const ProblemInstance& instance, int p);

struct CurvatureBounds {
    double alpha_check = 0.0;  // inverse generalized curvature, upper bound
    double nu_check = 0.0;     // superadditivity ratio, lower bound
    double kappa = 0.0;        // bipartite subadditivity ratio, lower bound (unclamped)
};
CurvatureBounds curvature_bounds(const ProblemInstance& instance, int p);

// Curvature figure for the total-penalty row objective: 1 when some source is
// redundant for p at the full source set, otherwise
// 1 - (min pairwise difference) / (max row entry).
double c_gp_value(const ProblemInstance& instance, int p);

// Fills a RatioBundle for every row and aggregates. Row-level degeneracies
// propagate as DegenerateRatioError carrying the row index.
RatioBundle aggregate_ratios(const ProblemInstance& instance);

// ---------------------------------------------------------------------------
// Exact ratios by exhaustive enumeration, for small ground sets. These are
// the independent side of every bound test: they evaluate the definitions
// directly on a tabulated set function and never reuse the closed forms.

using SetFunction = std::function<double(SourceSet)>;

inline constexpr int max_submodularity_ground = 12;
inline constexpr int max_curvature_ground = 10;

// Largest ratio satisfied by all (A, B) pairs; pairs where the denominator
// f(A|B) - f(B) is zero count as 1. Clamped to <= 1.
double exact_submodularity_ratio(const SetFunction& f, int n);

// Smallest alpha such that every (S, V, i in S\V) marginal-gain ratio with
// both marginals positive is at least 1 - alpha. Triples where either
// marginal vanishes are skipped: the max-penalty objective admits
// zero-gain-then-positive-gain triples, and only the positive-marginal
// ratios are comparable to the closed form. In [0, 1].
double exact_inverse_curvature(const SetFunction& f, int n);

// Smallest f(S) / sum of singleton values over nonempty S with a nonzero
// denominator. Clamped to <= 1.
double exact_superadditivity(const SetFunction& f, int n);

// Smallest (f(A) + f(B)) / f(S) over two-part splits of every S with
// f(S) > 0. Clamped to <= 1.
double exact_bipartite_subadditivity(const SetFunction& f, int n);

// Curvature of a non-decreasing submodular function:
// 1 - min_e (f(ground) - f(ground \ e)) / f({e}), elements with zero
// singleton value skipped.
double exact_curvature(const SetFunction& f, int n);

// The set function of one row or of the summed objective.
SetFunction make_set_function(const ObjectiveEvaluator& evaluator, Objective objective,
                              std::optional<int> hypothesis = std::nullopt);

}  // namespace robsel
