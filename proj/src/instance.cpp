#include "robsel/instance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "robsel/errors.hpp"
#include "robsel/rng.hpp"

#include "json.hpp"

namespace robsel {

namespace {

void check_dimensions(const PenaltyMatrix& penalties, const std::vector<SourcePartition>& partitions) {
    const int m = penalties.m;
    if (m < 1 || m > HypothesisSet::max_width) {
        throw InvalidInputError("hypothesis count out of range: " + std::to_string(m));
    }
    if (static_cast<int>(partitions.size()) > SourceSet::max_width) {
        throw InvalidInputError("source count out of range: " + std::to_string(partitions.size()));
    }
    if (static_cast<int>(penalties.entries.size()) != m) {
        throw InvalidInputError("penalty matrix has wrong row count");
    }
    for (const auto& row : penalties.entries) {
        if (static_cast<int>(row.size()) != m) {
            throw InvalidInputError("penalty matrix is not square");
        }
    }
    for (const auto& part : partitions) {
        for (const auto& block : part.blocks) {
            for (int h : block) {
                if (h < 0 || h >= m) {
                    throw InvalidInputError("partition references hypothesis " + std::to_string(h) +
                                            " outside [0, " + std::to_string(m) + ")");
                }
            }
        }
    }
}

}  // namespace

ProblemInstance::ProblemInstance(PenaltyMatrix penalties, std::vector<SourcePartition> partitions,
                                 std::optional<InstanceLabels> labels)
    : m_(penalties.m),
      n_(static_cast<int>(partitions.size())),
      penalties_(std::move(penalties)),
      partitions_(std::move(partitions)),
      labels_(std::move(labels)) {
    check_dimensions(penalties_, partitions_);
    block_lookup_.assign(static_cast<std::size_t>(n_), std::vector<HypothesisSet>(static_cast<std::size_t>(m_)));
    for (int i = 0; i < n_; ++i) {
        for (const auto& block : partitions_[static_cast<std::size_t>(i)].blocks) {
            const HypothesisSet block_set = HypothesisSet::from_indices(block);
            for (int h : block) {
                // First block containing h wins; duplicates are a validation issue.
                if (block_lookup_[static_cast<std::size_t>(i)][static_cast<std::size_t>(h)].empty()) {
                    block_lookup_[static_cast<std::size_t>(i)][static_cast<std::size_t>(h)] = block_set;
                }
            }
        }
    }
}

HypothesisSet ProblemInstance::block_of(int source, int p) const {
    if (source < 0 || source >= n_) {
        throw InvalidInputError("source index out of range: " + std::to_string(source));
    }
    if (p < 0 || p >= m_) {
        throw InvalidInputError("hypothesis index out of range: " + std::to_string(p));
    }
    return block_lookup_[static_cast<std::size_t>(source)][static_cast<std::size_t>(p)];
}

std::vector<std::string> validate(const ProblemInstance& instance) {
    std::vector<std::string> report;
    const int m = instance.num_hypotheses();
    const int n = instance.num_sources();
    const auto& penalties = instance.penalties();

    for (int p = 0; p < m; ++p) {
        const auto& row = penalties.entries[static_cast<std::size_t>(p)];
        double sum = 0.0;
        for (int j = 0; j < m; ++j) {
            const double v = row[static_cast<std::size_t>(j)];
            sum += v;
            if (!(v >= 0.0 && v <= 1.0)) {
                report.push_back("entry out of [0,1] at (" + std::to_string(p) + "," + std::to_string(j) + ")");
            }
        }
        if (std::abs(sum - 1.0) > row_sum_tolerance) {
            std::ostringstream os;
            os << "row " << p << " sum " << sum << " is not 1 within tolerance";
            report.push_back(os.str());
        }
        if (row[static_cast<std::size_t>(p)] != 0.0) {
            report.push_back("nonzero diagonal at row " + std::to_string(p));
        }
        if (penalties.unique_rows_assumption) {
            for (int j = 0; j < m; ++j) {
                if (j != p && row[static_cast<std::size_t>(j)] == 0.0) {
                    report.push_back("Assumption 2 violated in row " + std::to_string(p) +
                                     ": zero off-diagonal penalty at column " + std::to_string(j));
                }
            }
            for (int i = 0; i < m; ++i) {
                for (int j = i + 1; j < m; ++j) {
                    if (i == p || j == p) continue;
                    if (row[static_cast<std::size_t>(i)] == row[static_cast<std::size_t>(j)]) {
                        report.push_back("Assumption 2 violated in row " + std::to_string(p) +
                                         ": duplicate penalty at columns " + std::to_string(i) + "," +
                                         std::to_string(j));
                    }
                }
            }
        }
    }

    if (static_cast<int>(instance.partitions().size()) != n) {
        report.push_back("partition count does not match source count");
    }
    for (int i = 0; i < n; ++i) {
        const auto& part = instance.partitions()[static_cast<std::size_t>(i)];
        if (part.source_id != i) {
            report.push_back("partition " + std::to_string(i) + " has source_id " +
                             std::to_string(part.source_id));
        }
        std::vector<int> seen(static_cast<std::size_t>(m), 0);
        for (const auto& block : part.blocks) {
            if (block.empty()) {
                report.push_back("partition " + std::to_string(i) + " has an empty block");
            }
            for (int h : block) ++seen[static_cast<std::size_t>(h)];
        }
        for (int h = 0; h < m; ++h) {
            if (seen[static_cast<std::size_t>(h)] == 0) {
                report.push_back("partition " + std::to_string(i) + " does not cover hypothesis " +
                                 std::to_string(h));
            } else if (seen[static_cast<std::size_t>(h)] > 1) {
                report.push_back("partition " + std::to_string(i) + " repeats hypothesis " + std::to_string(h));
            }
        }
    }
    return report;
}

void require_valid(const ProblemInstance& instance) {
    auto report = validate(instance);
    if (!report.empty()) {
        throw ValidationError(std::move(report));
    }
}

PenaltyMatrix random_penalty_matrix(int m, std::uint64_t seed, bool enforce_unique) {
    if (m < 2) {
        throw InvalidInputError("penalty matrix needs at least 2 hypotheses, got " + std::to_string(m));
    }
    if (m > HypothesisSet::max_width) {
        throw InvalidInputError("hypothesis count out of range: " + std::to_string(m));
    }
    Rng rng(seed);
    PenaltyMatrix out;
    out.m = m;
    out.unique_rows_assumption = enforce_unique;
    out.entries.assign(static_cast<std::size_t>(m), std::vector<double>(static_cast<std::size_t>(m), 0.0));
    for (int p = 0; p < m; ++p) {
        auto& row = out.entries[static_cast<std::size_t>(p)];
        while (true) {
            double sum = 0.0;
            for (int j = 0; j < m; ++j) {
                if (j == p) continue;
                const double u = rng.next_open_unit();
                row[static_cast<std::size_t>(j)] = u;
                sum += u;
            }
            for (int j = 0; j < m; ++j) {
                if (j == p) continue;
                row[static_cast<std::size_t>(j)] /= sum;
            }
            row[static_cast<std::size_t>(p)] = 0.0;
            if (!enforce_unique) break;
            std::unordered_set<double> values;
            bool distinct = true;
            for (int j = 0; j < m && distinct; ++j) {
                if (j == p) continue;
                distinct = values.insert(row[static_cast<std::size_t>(j)]).second;
            }
            if (distinct) break;
        }
    }
    return out;
}

std::vector<SourcePartition> random_equivalence_structure(int m, int n, std::uint64_t seed,
                                                          BlockProfile profile) {
    if (m < 1 || n < 1) {
        throw InvalidInputError("need m >= 1 and n >= 1");
    }
    if (m > HypothesisSet::max_width || n > SourceSet::max_width) {
        throw InvalidInputError("instance dimensions out of range");
    }
    if (profile.fixed_blocks && (*profile.fixed_blocks < 1 || *profile.fixed_blocks > m)) {
        throw InvalidInputError("fixed block count must be in [1, m]");
    }
    Rng rng(seed);
    std::vector<SourcePartition> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        std::vector<int> label_of(static_cast<std::size_t>(m), 0);
        if (profile.fixed_blocks) {
            const int r = *profile.fixed_blocks;
            std::vector<int> order(static_cast<std::size_t>(m));
            for (int h = 0; h < m; ++h) order[static_cast<std::size_t>(h)] = h;
            for (int h = m - 1; h > 0; --h) {
                std::swap(order[static_cast<std::size_t>(h)],
                          order[static_cast<std::size_t>(rng.next_int(0, h))]);
            }
            for (int k = 0; k < m; ++k) {
                label_of[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])] =
                    k < r ? k : rng.next_int(0, r - 1);
            }
        } else if (m == 1) {
            label_of[0] = 0;
        } else {
            const int r = rng.next_int(2, m);
            for (int h = 0; h < m; ++h) {
                label_of[static_cast<std::size_t>(h)] = rng.next_int(0, r - 1);
            }
        }
        // Canonical block order: by smallest member, members ascending.
        std::vector<std::vector<int>> by_label(static_cast<std::size_t>(m));
        for (int h = 0; h < m; ++h) {
            by_label[static_cast<std::size_t>(label_of[static_cast<std::size_t>(h)])].push_back(h);
        }
        SourcePartition part;
        part.source_id = i;
        for (auto& block : by_label) {
            if (!block.empty()) part.blocks.push_back(std::move(block));
        }
        std::sort(part.blocks.begin(), part.blocks.end(),
                  [](const auto& a, const auto& b) { return a.front() < b.front(); });
        out.push_back(std::move(part));
    }
    return out;
}

ProblemInstance random_instance(int m, int n, std::uint64_t seed, bool enforce_unique, BlockProfile profile) {
    auto penalties = random_penalty_matrix(m, derive_seed(seed, 1), enforce_unique);
    auto partitions = random_equivalence_structure(m, n, derive_seed(seed, 2), profile);
    return ProblemInstance(std::move(penalties), std::move(partitions));
}

namespace {

nlohmann::ordered_json instance_to_json(const ProblemInstance& instance) {
    nlohmann::ordered_json j;
    j["m"] = instance.num_hypotheses();
    j["n"] = instance.num_sources();
    j["penalties"] = instance.penalties().entries;
    auto parts = nlohmann::ordered_json::array();
    for (const auto& part : instance.partitions()) {
        parts.push_back({{"source", part.source_id}, {"blocks", part.blocks}});
    }
    j["partitions"] = std::move(parts);
    if (instance.labels()) {
        j["labels"] = {{"hypotheses", instance.labels()->hypotheses},
                       {"sources", instance.labels()->sources}};
    }
    j["unique_rows_assumption"] = instance.penalties().unique_rows_assumption;
    return j;
}

ProblemInstance instance_from_json(const nlohmann::json& j) {
    if (!j.contains("m") || !j.contains("n") || !j.contains("penalties") || !j.contains("partitions")) {
        throw ParseError("instance file missing one of: m, n, penalties, partitions");
    }
    PenaltyMatrix penalties;
    penalties.m = j.at("m").get<int>();
    penalties.entries = j.at("penalties").get<std::vector<std::vector<double>>>();
    penalties.unique_rows_assumption = j.value("unique_rows_assumption", false);

    std::vector<SourcePartition> partitions;
    for (const auto& pj : j.at("partitions")) {
        SourcePartition part;
        part.source_id = pj.at("source").get<int>();
        part.blocks = pj.at("blocks").get<std::vector<std::vector<int>>>();
        partitions.push_back(std::move(part));
    }
    const int n = j.at("n").get<int>();
    if (n != static_cast<int>(partitions.size())) {
        throw ParseError("declared n does not match partition count");
    }
    std::optional<InstanceLabels> labels;
    if (j.contains("labels")) {
        InstanceLabels lab;
        lab.hypotheses = j.at("labels").value("hypotheses", std::vector<std::string>{});
        lab.sources = j.at("labels").value("sources", std::vector<std::string>{});
        labels = std::move(lab);
    }
    ProblemInstance instance(std::move(penalties), std::move(partitions), std::move(labels));
    require_valid(instance);
    return instance;
}

}  // namespace

std::string to_json_string(const ProblemInstance& instance) {
    return instance_to_json(instance).dump(2);
}

ProblemInstance from_json_string(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    try {
        return instance_from_json(j);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed instance: ") + e.what());
    }
}

void save(const ProblemInstance& instance, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw InvalidInputError("cannot open for writing: " + path.string());
    }
    out << to_json_string(instance) << '\n';
}

ProblemInstance load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidInputError("cannot open: " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return from_json_string(buffer.str());
}

}  // namespace robsel
