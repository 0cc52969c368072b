#pragma once

// Independent reference implementations used only by tests. Everything here
// works on plain index vectors and recursive combination enumeration, not on
// the library's bitmask paths, so agreement is meaningful.

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

#include "robsel/instance.hpp"
#include "robsel/objectives.hpp"
#include "robsel/subset.hpp"

namespace robsel::testing {

inline std::set<int> oracle_equiv_set(const ProblemInstance& instance, const std::vector<int>& sources,
                                      int p) {
    std::set<int> equiv;
    for (int h = 0; h < instance.num_hypotheses(); ++h) equiv.insert(h);
    for (int i : sources) {
        // Find the block of p by scanning the raw partition data.
        const auto& blocks = instance.partitions()[static_cast<std::size_t>(i)].blocks;
        std::vector<int> block_of_p;
        for (const auto& block : blocks) {
            if (std::find(block.begin(), block.end(), p) != block.end()) {
                block_of_p = block;
                break;
            }
        }
        std::set<int> next;
        for (int h : block_of_p) {
            if (equiv.count(h) != 0) next.insert(h);
        }
        equiv = std::move(next);
    }
    return equiv;
}

inline double oracle_objective(const ProblemInstance& instance, Objective objective,
                               const std::vector<int>& sources) {
    double sum = 0.0;
    for (int p = 0; p < instance.num_hypotheses(); ++p) {
        const auto equiv = oracle_equiv_set(instance, sources, p);
        if (objective == Objective::MaxPenalty) {
            double worst = 0.0;
            for (int j : equiv) worst = std::max(worst, instance.penalty(p, j));
            sum += 1.0 - worst;
        } else {
            double total = 0.0;
            for (int j : equiv) total += instance.penalty(p, j);
            sum += 1.0 - total;
        }
    }
    return sum;
}

inline std::uint64_t to_mask(const std::vector<int>& indices) {
    std::uint64_t mask = 0;
    for (int i : indices) mask |= std::uint64_t{1} << i;
    return mask;
}

struct OracleAttack {
    std::vector<int> removed;
    double surviving_value = 0.0;
};

// All removal subsets of `selected` with size <= budget, by recursive
// combination enumeration; minimal value, then fewer elements, then the
// smaller bitmask.
inline OracleAttack oracle_worst_case_attack(const ProblemInstance& instance,
                                             const std::vector<int>& selected, int budget,
                                             Objective objective) {
    OracleAttack best;
    bool have = false;
    std::vector<int> removal;
    const auto consider = [&] {
        std::vector<int> survivors;
        for (int i : selected) {
            if (std::find(removal.begin(), removal.end(), i) == removal.end()) survivors.push_back(i);
        }
        const double value = oracle_objective(instance, objective, survivors);
        const bool better = !have || value < best.surviving_value ||
                            (value == best.surviving_value &&
                             (removal.size() < best.removed.size() ||
                              (removal.size() == best.removed.size() &&
                               to_mask(removal) < to_mask(best.removed))));
        if (better) {
            have = true;
            best.removed = removal;
            best.surviving_value = value;
        }
    };
    const auto recurse = [&](auto&& self, std::size_t start) -> void {
        consider();
        if (static_cast<int>(removal.size()) == budget) return;
        for (std::size_t idx = start; idx < selected.size(); ++idx) {
            removal.push_back(selected[idx]);
            self(self, idx + 1);
            removal.pop_back();
        }
    };
    recurse(recurse, 0);
    return best;
}

struct OracleSelection {
    std::vector<int> selected;
    double value = 0.0;
};

// All selections of size <= K from {0..n-1}; maximal worst-case surviving
// value, then fewer elements, then the smaller bitmask.
inline OracleSelection oracle_optimal_selection(const ProblemInstance& instance, int selection_budget,
                                                int attack_budget, Objective objective) {
    OracleSelection best;
    bool have = false;
    std::vector<int> chosen;
    const auto consider = [&] {
        const double value =
            oracle_worst_case_attack(instance, chosen, attack_budget, objective).surviving_value;
        const bool better = !have || value > best.value ||
                            (value == best.value &&
                             (chosen.size() < best.selected.size() ||
                              (chosen.size() == best.selected.size() &&
                               to_mask(chosen) < to_mask(best.selected))));
        if (better) {
            have = true;
            best.selected = chosen;
            best.value = value;
        }
    };
    const auto recurse = [&](auto&& self, int start) -> void {
        consider();
        if (static_cast<int>(chosen.size()) == selection_budget) return;
        for (int i = start; i < instance.num_sources(); ++i) {
            chosen.push_back(i);
            self(self, i + 1);
            chosen.pop_back();
        }
    };
    recurse(recurse, 0);
    return best;
}

}  // namespace robsel::testing
