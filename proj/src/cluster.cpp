#include "bpsm/cluster.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "bpsm/errors.hpp"

namespace bpsm {

namespace {

using json = nlohmann::json;

// Members per issue id, in matrix index order.
std::map<int, std::vector<std::size_t>> members_by_issue(
    const SimilarityMatrix& matrix, const Assignment& assignment) {
    std::map<int, std::vector<std::size_t>> members;
    for (std::size_t i = 0; i < matrix.ids.size(); ++i) {
        auto it = assignment.post_issues.find(matrix.ids[i]);
        if (it == assignment.post_issues.end()) continue;
        for (int issue : it->second) members[issue].push_back(i);
    }
    // Issues mentioned in the assignment but with no post in the matrix
    // still get a (member-less) row.
    for (const auto& entry : assignment.post_issues) {
        for (int issue : entry.second) members.try_emplace(issue);
    }
    return members;
}

}  // namespace

IssueConfig load_issue_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open issue config: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError(path + ": malformed JSON: " + e.what());
    }
    IssueConfig config;
    try {
        if (j.contains("threshold")) config.threshold = j.at("threshold").get<double>();
        for (const auto& issue_json : j.at("issues")) {
            Issue issue;
            issue.id = issue_json.at("id").get<int>();
            issue.name = issue_json.value("name", std::string());
            for (const auto& seed : issue_json.at("seeds")) {
                issue.seeds.push_back(seed.get<std::int64_t>());
            }
            config.issues.push_back(std::move(issue));
        }
    } catch (const json::exception& e) {
        throw ConfigError(path + ": " + e.what());
    }
    if (config.threshold < 0.0 || config.threshold > 1.0) {
        throw ConfigError(path + ": threshold must be in [0, 1]");
    }
    std::set<int> ids;
    for (const Issue& issue : config.issues) {
        if (!ids.insert(issue.id).second) {
            throw ConfigError(path + ": duplicate issue id " + std::to_string(issue.id));
        }
        if (issue.seeds.empty()) {
            throw ConfigError(path + ": issue " + std::to_string(issue.id) +
                              " has no seeds");
        }
    }
    return config;
}

Assignment soft_cluster(const SimilarityMatrix& matrix, const IssueConfig& config,
                        SeedAggregate aggregate) {
    // Resolve seed indices up front so unknown seeds fail fast.
    std::vector<std::vector<std::size_t>> seed_indices(config.issues.size());
    for (std::size_t c = 0; c < config.issues.size(); ++c) {
        for (std::int64_t seed : config.issues[c].seeds) {
            auto idx = matrix.index_of(seed);
            if (!idx) {
                throw ConfigError("seed post " + std::to_string(seed) +
                                  " (issue " + std::to_string(config.issues[c].id) +
                                  ") is not in the matrix");
            }
            seed_indices[c].push_back(*idx);
        }
    }
    Assignment assignment;
    for (std::size_t p = 0; p < matrix.ids.size(); ++p) {
        std::set<int>& issues = assignment.post_issues[matrix.ids[p]];
        for (std::size_t c = 0; c < config.issues.size(); ++c) {
            double agg = 0.0;
            if (aggregate == SeedAggregate::Mean) {
                for (std::size_t s : seed_indices[c]) agg += matrix.values[p][s];
                agg /= static_cast<double>(seed_indices[c].size());
            } else {
                for (std::size_t s : seed_indices[c]) {
                    agg = std::max(agg, matrix.values[p][s]);
                }
            }
            if (agg >= config.threshold) issues.insert(config.issues[c].id);
        }
    }
    for (const Issue& issue : config.issues) {
        for (std::int64_t seed : issue.seeds) {
            assignment.post_issues[seed].insert(issue.id);
        }
    }
    return assignment;
}

std::map<int, std::optional<double>> within_issue_average(
    const SimilarityMatrix& matrix, const Assignment& assignment) {
    std::map<int, std::optional<double>> out;
    for (const auto& [issue, members] : members_by_issue(matrix, assignment)) {
        if (members.size() < 2) {
            out[issue] = std::nullopt;
            continue;
        }
        double sum = 0.0;
        std::size_t pairs = 0;
        for (std::size_t i = 0; i < members.size(); ++i) {
            for (std::size_t j = i + 1; j < members.size(); ++j) {
                sum += matrix.values[members[i]][members[j]];
                ++pairs;
            }
        }
        out[issue] = sum / static_cast<double>(pairs);
    }
    return out;
}

std::vector<IssueReportRow> issue_report(const SimilarityMatrix& matrix,
                                         const Assignment& assignment) {
    std::map<int, std::optional<double>> within =
        within_issue_average(matrix, assignment);
    std::vector<IssueReportRow> rows;
    for (const auto& [issue, members] : members_by_issue(matrix, assignment)) {
        IssueReportRow row;
        row.issue_id = issue;
        row.within = within[issue];
        std::vector<bool> is_member(matrix.ids.size(), false);
        for (std::size_t m : members) is_member[m] = true;
        double sum = 0.0;
        std::size_t pairs = 0;
        for (std::size_t m : members) {
            for (std::size_t q = 0; q < matrix.ids.size(); ++q) {
                if (is_member[q]) continue;
                sum += matrix.values[m][q];
                ++pairs;
            }
        }
        if (pairs > 0) row.between = sum / static_cast<double>(pairs);
        rows.push_back(std::move(row));
    }
    return rows;
}

void apply_assignment(Corpus& corpus, const Assignment& assignment) {
    for (BlogPost& post : corpus.posts) {
        post.issue_labels.clear();
        auto it = assignment.post_issues.find(post.feed_id);
        if (it != assignment.post_issues.end()) post.issue_labels = it->second;
    }
}

void save_assignment_csv(const Assignment& assignment,
                         const std::vector<std::int64_t>& post_order,
                         const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw StoreError("cannot write assignment file: " + path);
    out << "post_id,issue_ids\n";
    for (std::int64_t post : post_order) {
        out << post << ',';
        auto it = assignment.post_issues.find(post);
        if (it != assignment.post_issues.end()) {
            bool first = true;
            for (int issue : it->second) {
                if (!first) out << ';';
                out << issue;
                first = false;
            }
        }
        out << '\n';
    }
    if (!out) throw StoreError("write failed: " + path);
}

Assignment load_assignment_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw StoreError("cannot read assignment file: " + path);
    Assignment assignment;
    std::string line;
    int lineno = 0;
    if (!std::getline(in, line)) {
        throw StoreError(path + ": empty assignment file");
    }
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "post_id,issue_ids") {
        throw StoreError(path + ":1: expected 'post_id,issue_ids' header");
    }
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::size_t comma = line.find(',');
        if (comma == std::string::npos) {
            throw StoreError(path + ":" + std::to_string(lineno) + ": missing comma");
        }
        std::int64_t post = 0;
        auto [p, ec] = std::from_chars(line.data(), line.data() + comma, post);
        if (ec != std::errc() || p != line.data() + comma) {
            throw StoreError(path + ":" + std::to_string(lineno) + ": bad post id");
        }
        std::set<int>& issues = assignment.post_issues[post];
        std::stringstream rest(line.substr(comma + 1));
        std::string cell;
        while (std::getline(rest, cell, ';')) {
            if (cell.empty()) continue;
            int issue = 0;
            auto [q, qec] = std::from_chars(cell.data(), cell.data() + cell.size(), issue);
            if (qec != std::errc() || q != cell.data() + cell.size()) {
                throw StoreError(path + ":" + std::to_string(lineno) +
                                 ": bad issue id '" + cell + "'");
            }
            issues.insert(issue);
        }
    }
    return assignment;
}

}  // namespace bpsm
