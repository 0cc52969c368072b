#pragma once

#include <vector>

#include "robsel/instance.hpp"

namespace robsel::testing {

inline ProblemInstance make_instance(std::vector<std::vector<double>> rows,
                                     std::vector<std::vector<std::vector<int>>> partition_blocks,
                                     bool unique_rows = false) {
    PenaltyMatrix penalties;
    penalties.m = static_cast<int>(rows.size());
    penalties.entries = std::move(rows);
    penalties.unique_rows_assumption = unique_rows;
    std::vector<SourcePartition> partitions;
    for (std::size_t i = 0; i < partition_blocks.size(); ++i) {
        SourcePartition part;
        part.source_id = static_cast<int>(i);
        part.blocks = partition_blocks[i];
        partitions.push_back(std::move(part));
    }
    return ProblemInstance(std::move(penalties), std::move(partitions));
}

// Three hypotheses, two complementary sources; appears across the module
// tests because every value is easy to recompute by hand.
inline ProblemInstance worked_instance() {
    return make_instance({{0.0, 0.3, 0.7}, {0.5, 0.0, 0.5}, {0.2, 0.8, 0.0}},
                         {{{0, 1}, {2}}, {{0, 2}, {1}}});
}

}  // namespace robsel::testing
