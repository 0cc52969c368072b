#pragma once

namespace robsel {

// A performance-guarantee factor together with the parameter conditions it
// needs. When any condition fails the factor is reported as 0 with
// valid == false, so sweeps can record vacuous rows instead of raising.
struct BoundReport {
    double factor = 0.0;
    bool valid = false;

    // Individual conditions (two-phase guarantee).
    bool beta_above_one = false;
    bool beta_c_below_one = false;
    bool kappa_in_unit = false;
    bool gamma_in_unit = false;

    // Set when the curvature hit the c -> 0 limit (total-penalty guarantee).
    bool limit_case = false;
};

// Guarantee factor of the two-phase algorithm on the max-penalty objective:
//   P = (beta-1) nu (1-alpha) / (1 + (beta-1) nu (1-alpha))
//   factor = kappa P (1 - e^{-gamma (1-beta c)/(1-c)})
//            / (1 + P (1 - e^{-gamma (1-beta c)/(1-c)}))
// with c the attack fraction (A = ceil(cK)). Requires c in (0,1); flags
// invalid when beta <= 1, beta*c >= 1, kappa outside (0,1) or gamma outside
// (0,1).
BoundReport theorem2_factor(double gamma, double kappa, double alpha_check, double nu_check,
                            double beta, double c);

// max(1/(1+A), 1/(K-A)); requires 0 <= A < K.
double h_func(int selection_budget, int attack_budget);

// Guarantee factor of the two-phase algorithm on the total-penalty objective:
//   factor = max(1 - c_Gamma, h(K,A)) / c_Gamma * (1 - e^{-c_Gamma})
// for c_Gamma in (0,1]. c_Gamma = 0 returns the limit value 1 with the
// limit_case flag set.
BoundReport theorem3_factor(double c_Gamma, int selection_budget, int attack_budget);

}  // namespace robsel
