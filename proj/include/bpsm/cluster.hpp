#pragma once

// Seed-threshold soft clustering over a similarity matrix, plus the
// per-issue within/between statistics.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bpsm/similarity.hpp"

namespace bpsm {

struct Issue {
    int id = 0;
    std::string name;
    std::vector<std::int64_t> seeds;  // non-empty
};

struct IssueConfig {
    std::vector<Issue> issues;
    double threshold = 0.5;  // in [0, 1]
};

/// JSON shape: {"threshold": 0.5, "issues": [{"id": 0, "name": "...",
/// "seeds": [4586, ...]}, ...]}. Throws ConfigError on structural problems.
IssueConfig load_issue_config(const std::string& path);

struct Assignment {
    std::map<std::int64_t, std::set<int>> post_issues;
};

enum class SeedAggregate { Mean, Max };

/// A post joins an issue when the aggregate of its matrix entries against
/// the issue's seeds reaches the threshold; seeds always belong to their
/// own issue. Throws ConfigError on seed ids absent from the matrix.
Assignment soft_cluster(const SimilarityMatrix& matrix, const IssueConfig& config,
                        SeedAggregate aggregate = SeedAggregate::Mean);

/// Mean similarity over unordered pairs of distinct posts per issue;
/// nullopt (undefined) for issues with fewer than two posts.
std::map<int, std::optional<double>> within_issue_average(
    const SimilarityMatrix& matrix, const Assignment& assignment);

struct IssueReportRow {
    int issue_id = 0;
    std::optional<double> within;
    std::optional<double> between;
};

/// One row per issue id appearing in the assignment: within-issue mean and
/// the mean similarity between members and non-members.
std::vector<IssueReportRow> issue_report(const SimilarityMatrix& matrix,
                                         const Assignment& assignment);

/// Copies the assignment into the posts' issue_labels (posts without an
/// entry are cleared).
void apply_assignment(Corpus& corpus, const Assignment& assignment);

/// CSV: header "post_id,issue_ids", one row per matrix post in matrix
/// order, issue ids semicolon-joined (empty when unassigned).
void save_assignment_csv(const Assignment& assignment,
                         const std::vector<std::int64_t>& post_order,
                         const std::string& path);
Assignment load_assignment_csv(const std::string& path);

}  // namespace bpsm
