#pragma once

// The pair similarity score: cross-post match counts, the noun/verb/common
// weights, the combined measure, pairwise matrices and the tf-idf cosine
// baseline.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "bpsm/annotate.hpp"
#include "bpsm/wordlists.hpp"

namespace bpsm {

enum class WeightMode {
    Verbatim,    // default: weights as defined, score clamped to 1
    Normalized,  // weights rescaled to sum to 1 (a true convex combination)
};

std::string_view to_string(WeightMode mode);
bool weight_mode_from_string(std::string_view text, WeightMode* out);

struct Weights {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
};

/// alpha = sim_noun / (sim_verb + sim_common), and cyclically for beta and
/// gamma; a zero denominator is clamped to 1 so the weights stay finite.
Weights weights(std::int64_t sim_noun, std::int64_t sim_verb,
                std::int64_t sim_common);

struct SimilarityBreakdown {
    std::int64_t post_a = 0;
    std::int64_t post_b = 0;
    std::int64_t sim_noun = 0;
    std::int64_t sim_verb = 0;
    std::int64_t sim_common = 0;
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    std::int64_t total_word_list = 0;  // sim_noun + sim_verb + sim_common
    double raw_score = 0.0;            // before clamping
    double score = 0.0;                // min(1, raw_score); 0 when total is 0
};

/// Number of ordered pairs (a_i, b_j) with words_match(a_i, b_j); one
/// increment per matching pair, exactly as the nested loops run.
std::int64_t count_similar(const std::vector<TaggedWord>& list_a,
                           const std::vector<TaggedWord>& list_b,
                           MatchMode mode);

SimilarityBreakdown bpsm_score(std::int64_t sim_noun, std::int64_t sim_verb,
                               std::int64_t sim_common,
                               WeightMode weight_mode = WeightMode::Verbatim);

SimilarityBreakdown pair_similarity(const WordLists& a, const WordLists& b,
                                    MatchMode mode,
                                    WeightMode weight_mode = WeightMode::Verbatim);

struct SimilarityMatrix {
    std::vector<std::int64_t> ids;  // post ids, row/column order
    std::vector<std::vector<double>> values;
    MatchMode mode = MatchMode::Symmetric;

    std::optional<std::size_t> index_of(std::int64_t id) const;
    double at(std::int64_t a, std::int64_t b) const;  // throws on unknown id
};

/// All off-diagonal entries; diagonal fixed at 1.0. In Symmetric mode each
/// unordered pair is computed once and mirrored.
SimilarityMatrix similarity_matrix(const std::vector<PostAnnotation>& annotations,
                                   MatchMode mode,
                                   WeightMode weight_mode = WeightMode::Verbatim,
                                   const WordListOptions& options = {});

/// Standard tf-idf cosine over lemmas (punctuation excluded): tf is the raw
/// count, idf = ln(N / df). Returns 0 when either vector is all zero.
double tfidf_cosine(const PostAnnotation& a, const PostAnnotation& b,
                    const std::vector<PostAnnotation>& corpus);

/// CSV with a header row and column of post ids; values at 6 decimals.
void save_matrix_csv(const SimilarityMatrix& matrix, const std::string& path);
SimilarityMatrix load_matrix_csv(const std::string& path);

nlohmann::json to_json(const SimilarityBreakdown& breakdown);

}  // namespace bpsm
