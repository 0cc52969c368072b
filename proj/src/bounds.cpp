#include "robsel/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "robsel/errors.hpp"

namespace robsel {

BoundReport theorem2_factor(double gamma, double kappa, double alpha_check, double nu_check,
                            double beta, double c) {
    if (!(c > 0.0 && c < 1.0)) {
        throw InvalidInputError("attack fraction c must lie in (0, 1)");
    }
    BoundReport report;
    report.beta_above_one = beta > 1.0;
    report.beta_c_below_one = beta * c < 1.0;
    report.kappa_in_unit = kappa > 0.0 && kappa < 1.0;
    report.gamma_in_unit = gamma > 0.0 && gamma < 1.0;
    report.valid =
        report.beta_above_one && report.beta_c_below_one && report.kappa_in_unit && report.gamma_in_unit;
    if (!report.valid) {
        report.factor = 0.0;
        return report;
    }
    const double p_core = (beta - 1.0) * nu_check * (1.0 - alpha_check);
    const double p = p_core / (1.0 + p_core);
    const double shrink = 1.0 - std::exp(-gamma * (1.0 - beta * c) / (1.0 - c));
    report.factor = kappa * p * shrink / (1.0 + p * shrink);
    return report;
}

double h_func(int selection_budget, int attack_budget) {
    if (attack_budget < 0 || attack_budget >= selection_budget) {
        throw InvalidInputError("budgets must satisfy 0 <= A < K");
    }
    return std::max(1.0 / (1.0 + attack_budget), 1.0 / (selection_budget - attack_budget));
}

BoundReport theorem3_factor(double c_Gamma, int selection_budget, int attack_budget) {
    if (!(c_Gamma >= 0.0 && c_Gamma <= 1.0)) {
        throw InvalidInputError("curvature must lie in [0, 1]");
    }
    const double h = h_func(selection_budget, attack_budget);
    BoundReport report;
    report.valid = true;
    if (c_Gamma == 0.0) {
        // lim_{c->0} max(1-c, h)/c * (1 - e^{-c}) = max(1, h) = 1
        report.limit_case = true;
        report.factor = 1.0;
        return report;
    }
    report.factor = std::max(1.0 - c_Gamma, h) / c_Gamma * (1.0 - std::exp(-c_Gamma));
    return report;
}

}  // namespace robsel
