#include "robsel/ratios.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "robsel/errors.hpp"

namespace robsel {

RowSpread penalty_spread(const ProblemInstance& instance, int p) {
    const int m = instance.num_hypotheses();
    if (p < 0 || p >= m) {
        throw InvalidInputError("hypothesis index out of range: " + std::to_string(p));
    }
    RowSpread spread{std::numeric_limits<double>::infinity(), 0.0};
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            const double diff = std::abs(instance.penalty(p, i) - instance.penalty(p, j));
            spread.floor = std::min(spread.floor, diff);
            spread.span = std::max(spread.span, diff);
        }
    }
    if (m < 2) {
        spread.floor = 0.0;
    }
    return spread;
}

double gamma_bound(const ProblemInstance& instance, int p) {
    const RowSpread spread = penalty_spread(instance, p);
    if (spread.floor == 0.0) {
        throw DegenerateRatioError(p, 0.0);
    }
    return spread.floor / spread.span;
}

CurvatureBounds curvature_bounds(const ProblemInstance& instance, int p) {
    const RowSpread spread = penalty_spread(instance, p);
    if (spread.floor == 0.0) {
        throw DegenerateRatioError(p, 0.0);
    }
    const int m = instance.num_hypotheses();
    const int n = instance.num_sources();
    double max_entry = 0.0;
    double min_entry = std::numeric_limits<double>::infinity();
    for (int j = 0; j < m; ++j) {
        max_entry = std::max(max_entry, instance.penalty(p, j));
        min_entry = std::min(min_entry, instance.penalty(p, j));
    }
    CurvatureBounds out;
    out.alpha_check = 1.0 - spread.floor / spread.span;
    out.nu_check = (1.0 - max_entry) / (static_cast<double>(n) * (1.0 - min_entry));
    out.kappa = 2.0 * (1.0 - max_entry) / (1.0 - min_entry);
    return out;
}

double c_gp_value(const ProblemInstance& instance, int p) {
    const int m = instance.num_hypotheses();
    const int n = instance.num_sources();
    if (p < 0 || p >= m) {
        throw InvalidInputError("hypothesis index out of range: " + std::to_string(p));
    }
    ObjectiveEvaluator evaluator(instance, /*enable_cache=*/false);
    const SourceSet ground = instance.all_sources();
    const double rho_full = evaluator.rho_value(ground, p);
    for (int i = 0; i < n; ++i) {
        // Sums over identical equivalent sets are identical doubles, so exact
        // comparison detects redundancy.
        if (evaluator.rho_value(ground.without(i), p) == rho_full) {
            return 1.0;
        }
    }
    const RowSpread spread = penalty_spread(instance, p);
    double max_entry = 0.0;
    for (int j = 0; j < m; ++j) {
        max_entry = std::max(max_entry, instance.penalty(p, j));
    }
    if (max_entry == 0.0) {
        throw InvalidInputError("row " + std::to_string(p) + " has no positive penalty");
    }
    return 1.0 - spread.floor / max_entry;
}

RatioBundle aggregate_ratios(const ProblemInstance& instance) {
    const int m = instance.num_hypotheses();
    RatioBundle bundle;
    bundle.gamma = std::numeric_limits<double>::infinity();
    bundle.alpha_check = -std::numeric_limits<double>::infinity();
    bundle.nu_check = std::numeric_limits<double>::infinity();
    bundle.kappa = std::numeric_limits<double>::infinity();
    bundle.c_Gamma = -std::numeric_limits<double>::infinity();
    for (int p = 0; p < m; ++p) {
        const double gamma = gamma_bound(instance, p);
        const CurvatureBounds curv = curvature_bounds(instance, p);
        const double c_gp = c_gp_value(instance, p);
        bundle.gamma_p.push_back(gamma);
        bundle.alpha_check_p.push_back(curv.alpha_check);
        bundle.nu_check_p.push_back(curv.nu_check);
        bundle.kappa_p.push_back(curv.kappa);
        bundle.c_gp.push_back(c_gp);
        bundle.gamma = std::min(bundle.gamma, gamma);
        bundle.alpha_check = std::max(bundle.alpha_check, curv.alpha_check);
        bundle.nu_check = std::min(bundle.nu_check, curv.nu_check);
        bundle.kappa = std::min(bundle.kappa, curv.kappa);
        bundle.c_Gamma = std::max(bundle.c_Gamma, c_gp);
    }
    bundle.kappa_valid_for_guarantee = bundle.kappa > 0.0 && bundle.kappa < 1.0;
    return bundle;
}

namespace {

std::vector<double> tabulate(const SetFunction& f, int n, int cap, const char* what) {
    if (n < 0 || n > cap) {
        throw EnumerationRefusedError(std::string(what) + ": ground set of size " + std::to_string(n) +
                                      " exceeds enumeration cap " + std::to_string(cap));
    }
    const std::uint64_t size = std::uint64_t{1} << n;
    std::vector<double> values(size);
    for (std::uint64_t mask = 0; mask < size; ++mask) {
        values[mask] = f(SourceSet::from_mask(mask));
    }
    return values;
}

}  // namespace

double exact_submodularity_ratio(const SetFunction& f, int n) {
    const auto values = tabulate(f, n, max_submodularity_ground, "submodularity ratio");
    const std::uint64_t size = std::uint64_t{1} << n;
    double worst = 1.0;  // zero-denominator pairs count as 1
    for (std::uint64_t a = 0; a < size; ++a) {
        for (std::uint64_t b = 0; b < size; ++b) {
            const double denom = values[a | b] - values[b];
            if (denom <= 0.0) continue;
            double num = 0.0;
            std::uint64_t rest = a & ~b;
            while (rest != 0) {
                const std::uint64_t bit = rest & (~rest + 1);
                num += values[b | bit] - values[b];
                rest &= rest - 1;
            }
            worst = std::min(worst, num / denom);
        }
    }
    return std::min(worst, 1.0);
}

double exact_inverse_curvature(const SetFunction& f, int n) {
    const auto values = tabulate(f, n, max_curvature_ground, "inverse curvature");
    const std::uint64_t size = std::uint64_t{1} << n;
    double least_ratio = std::numeric_limits<double>::infinity();
    for (std::uint64_t s = 1; s < size; ++s) {
        for (int i = 0; i < n; ++i) {
            const std::uint64_t bit = std::uint64_t{1} << i;
            if ((s & bit) == 0) continue;
            const double num = values[s] - values[s & ~bit];
            if (num <= 0.0) continue;
            for (std::uint64_t v = 0; v < size; ++v) {
                if ((v & bit) != 0) continue;
                const double denom = values[s | v] - values[(s & ~bit) | v];
                if (denom <= 0.0) continue;
                least_ratio = std::min(least_ratio, num / denom);
            }
        }
    }
    if (!std::isfinite(least_ratio)) return 0.0;  // no binding triple
    return std::clamp(1.0 - least_ratio, 0.0, 1.0);
}

double exact_superadditivity(const SetFunction& f, int n) {
    const auto values = tabulate(f, n, max_curvature_ground, "superadditivity");
    const std::uint64_t size = std::uint64_t{1} << n;
    double worst = 1.0;
    for (std::uint64_t s = 1; s < size; ++s) {
        double singleton_sum = 0.0;
        std::uint64_t rest = s;
        while (rest != 0) {
            singleton_sum += values[rest & (~rest + 1)];
            rest &= rest - 1;
        }
        if (singleton_sum == 0.0) continue;
        worst = std::min(worst, values[s] / singleton_sum);
    }
    return std::min(worst, 1.0);
}

double exact_bipartite_subadditivity(const SetFunction& f, int n) {
    const auto values = tabulate(f, n, max_curvature_ground, "bipartite subadditivity");
    const std::uint64_t size = std::uint64_t{1} << n;
    double worst = 1.0;
    for (std::uint64_t s = 0; s < size; ++s) {
        if (values[s] == 0.0) continue;
        std::uint64_t a = s;
        while (true) {
            worst = std::min(worst, (values[a] + values[s & ~a]) / values[s]);
            if (a == 0) break;
            a = (a - 1) & s;
        }
    }
    return std::min(worst, 1.0);
}

double exact_curvature(const SetFunction& f, int n) {
    const auto values = tabulate(f, n, max_curvature_ground, "curvature");
    const std::uint64_t full = (std::uint64_t{1} << n) - 1;
    double least_ratio = std::numeric_limits<double>::infinity();
    for (int e = 0; e < n; ++e) {
        const std::uint64_t bit = std::uint64_t{1} << e;
        const double singleton = values[bit];
        if (singleton == 0.0) continue;
        least_ratio = std::min(least_ratio, (values[full] - values[full & ~bit]) / singleton);
    }
    if (!std::isfinite(least_ratio)) return 0.0;
    return std::clamp(1.0 - least_ratio, 0.0, 1.0);
}

SetFunction make_set_function(const ObjectiveEvaluator& evaluator, Objective objective,
                              std::optional<int> hypothesis) {
    if (hypothesis) {
        const int p = *hypothesis;
        if (objective == Objective::MaxPenalty) {
            return [&evaluator, p](SourceSet s) { return evaluator.f_value(s, p); };
        }
        return [&evaluator, p](SourceSet s) { return 1.0 - evaluator.rho_value(s, p); };
    }
    return [&evaluator, objective](SourceSet s) { return evaluator.value(objective, s); };
}

}  // namespace robsel
