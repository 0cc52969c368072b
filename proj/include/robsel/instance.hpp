#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "robsel/subset.hpp"

namespace robsel {

// Row-stochastic misclassification penalty matrix with a zero diagonal.
// entries[p][j] is the cost of predicting hypothesis j when p is true.
struct PenaltyMatrix {
    int m = 0;
    std::vector<std::vector<double>> entries;
    // When set, every row must have pairwise-distinct off-diagonal entries,
    // all nonzero. validate() enforces consistency.
    bool unique_rows_assumption = false;
};

// Partition of the hypothesis set induced by one source's likelihoods:
// hypotheses in the same block are indistinguishable through this source.
struct SourcePartition {
    int source_id = 0;
    std::vector<std::vector<int>> blocks;
};

struct InstanceLabels {
    std::vector<std::string> hypotheses;
    std::vector<std::string> sources;
};

// Selection budget K, attack budget A, and the oblivious-phase multiplier.
struct Budgets {
    int selection = 0;   // K
    int attack = 0;      // A
    double beta = 1.0;
};

// Immutable problem data: m hypotheses, n sources, penalties, and the
// per-source equivalence partitions. Construction only enforces what the
// representation needs (index ranges, matching sizes); semantic invariants
// are checked by validate().
class ProblemInstance {
public:
    ProblemInstance(PenaltyMatrix penalties, std::vector<SourcePartition> partitions,
                    std::optional<InstanceLabels> labels = std::nullopt);

    int num_hypotheses() const { return m_; }
    int num_sources() const { return n_; }

    const PenaltyMatrix& penalties() const { return penalties_; }
    const std::vector<SourcePartition>& partitions() const { return partitions_; }
    const std::optional<InstanceLabels>& labels() const { return labels_; }

    double penalty(int p, int j) const { return penalties_.entries[p][j]; }

    SourceSet all_sources() const { return SourceSet::full(n_); }
    HypothesisSet all_hypotheses() const { return HypothesisSet::full(m_); }

    // Block of hypothesis p in source i's partition; empty when p appears in
    // no block (malformed partition, reported by validate()).
    HypothesisSet block_of(int source, int p) const;

private:
    int m_ = 0;
    int n_ = 0;
    PenaltyMatrix penalties_;
    std::vector<SourcePartition> partitions_;
    std::optional<InstanceLabels> labels_;
    std::vector<std::vector<HypothesisSet>> block_lookup_;  // [source][hypothesis]
};

// Returns the list of violated invariants; empty means valid. Checks
// row-stochasticity (1e-9), exact-zero diagonal, entry ranges, partition
// well-formedness, and the uniqueness flag when set.
std::vector<std::string> validate(const ProblemInstance& instance);

// Escalates a nonempty validation report to a ValidationError.
void require_valid(const ProblemInstance& instance);

inline constexpr double row_sum_tolerance = 1e-9;

// Zero diagonal, off-diagonal entries i.i.d. uniform on (0,1), each row
// normalized to sum 1. With enforce_unique, rows are resampled until all
// off-diagonal entries are pairwise distinct at full precision.
PenaltyMatrix random_penalty_matrix(int m, std::uint64_t seed, bool enforce_unique = false);

// How random partitions are drawn.
struct BlockProfile {
    // Label count r drawn uniformly from {2..m} per source; each hypothesis
    // assigned an i.i.d. uniform label; empty labels dropped.
    static BlockProfile uniform() { return BlockProfile{}; }
    // Exactly r nonempty blocks via a random surjection: a shuffled prefix
    // pins one hypothesis per block, the rest are assigned i.i.d.
    static BlockProfile fixed(int r) { return BlockProfile{r}; }

    std::optional<int> fixed_blocks;
};

std::vector<SourcePartition> random_equivalence_structure(int m, int n, std::uint64_t seed,
                                                          BlockProfile profile = BlockProfile::uniform());

// Generator used by the CLI and experiment harness: penalties from stream 1
// of `seed`, partitions from stream 2.
ProblemInstance random_instance(int m, int n, std::uint64_t seed, bool enforce_unique = false,
                                BlockProfile profile = BlockProfile::uniform());

// JSON persistence. save() writes every double with round-trip precision;
// load() parses, constructs, and validates (throwing ParseError or
// ValidationError).
void save(const ProblemInstance& instance, const std::filesystem::path& path);
ProblemInstance load(const std::filesystem::path& path);

std::string to_json_string(const ProblemInstance& instance);
ProblemInstance from_json_string(const std::string& text);

}  // namespace robsel
