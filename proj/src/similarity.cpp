#include "bpsm/similarity.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "bpsm/errors.hpp"

namespace bpsm {

namespace {

std::string fixed6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::map<std::string, double> lemma_counts(const PostAnnotation& ann) {
    std::map<std::string, double> tf;
    for (const Sentence& s : ann.sentences) {
        for (const TaggedWord& w : s.words) {
            if (w.pos_tag == PosTag::PUNCT) continue;
            tf[w.lemma] += 1.0;
        }
    }
    return tf;
}

}  // namespace

std::string_view to_string(WeightMode mode) {
    return mode == WeightMode::Verbatim ? "verbatim" : "normalized";
}

bool weight_mode_from_string(std::string_view text, WeightMode* out) {
    if (text == "verbatim") *out = WeightMode::Verbatim;
    else if (text == "normalized") *out = WeightMode::Normalized;
    else return false;
    return true;
}

Weights weights(std::int64_t sim_noun, std::int64_t sim_verb,
                std::int64_t sim_common) {
    auto ratio = [](std::int64_t num, std::int64_t den) {
        return static_cast<double>(num) / static_cast<double>(std::max<std::int64_t>(1, den));
    };
    Weights w;
    w.alpha = ratio(sim_noun, sim_verb + sim_common);
    w.beta = ratio(sim_verb, sim_noun + sim_common);
    w.gamma = ratio(sim_common, sim_verb + sim_noun);
    return w;
}

std::int64_t count_similar(const std::vector<TaggedWord>& list_a,
                           const std::vector<TaggedWord>& list_b,
                           MatchMode mode) {
    std::int64_t count = 0;
    for (const TaggedWord& a : list_a) {
        for (const TaggedWord& b : list_b) {
            if (words_match(a, b, mode)) ++count;
        }
    }
    return count;
}

SimilarityBreakdown bpsm_score(std::int64_t sim_noun, std::int64_t sim_verb,
                               std::int64_t sim_common, WeightMode weight_mode) {
    SimilarityBreakdown r;
    r.sim_noun = sim_noun;
    r.sim_verb = sim_verb;
    r.sim_common = sim_common;
    Weights w = weights(sim_noun, sim_verb, sim_common);
    if (weight_mode == WeightMode::Normalized) {
        double sum = w.alpha + w.beta + w.gamma;
        if (sum > 0.0) {
            w.alpha /= sum;
            w.beta /= sum;
            w.gamma /= sum;
        }
    }
    r.alpha = w.alpha;
    r.beta = w.beta;
    r.gamma = w.gamma;
    r.total_word_list = sim_noun + sim_verb + sim_common;
    if (r.total_word_list > 0) {
        r.raw_score = (w.alpha * static_cast<double>(sim_noun) +
                       w.beta * static_cast<double>(sim_verb) +
                       w.gamma * static_cast<double>(sim_common)) /
                      static_cast<double>(r.total_word_list);
    }
    r.score = std::min(1.0, r.raw_score);
    return r;
}

SimilarityBreakdown pair_similarity(const WordLists& a, const WordLists& b,
                                    MatchMode mode, WeightMode weight_mode) {
    SimilarityBreakdown r =
        bpsm_score(count_similar(a.nounlist, b.nounlist, mode),
                   count_similar(a.verblist, b.verblist, mode),
                   count_similar(a.commonlist, b.commonlist, mode), weight_mode);
    r.post_a = a.post_id;
    r.post_b = b.post_id;
    return r;
}

std::optional<std::size_t> SimilarityMatrix::index_of(std::int64_t id) const {
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (ids[i] == id) return i;
    }
    return std::nullopt;
}

double SimilarityMatrix::at(std::int64_t a, std::int64_t b) const {
    auto ia = index_of(a);
    auto ib = index_of(b);
    if (!ia || !ib) {
        throw Error("unknown post id in matrix lookup: " +
                    std::to_string(!ia ? a : b));
    }
    return values[*ia][*ib];
}

SimilarityMatrix similarity_matrix(const std::vector<PostAnnotation>& annotations,
                                   MatchMode mode, WeightMode weight_mode,
                                   const WordListOptions& options) {
    SimilarityMatrix m;
    m.mode = mode;
    const std::size_t n = annotations.size();
    m.ids.reserve(n);
    std::vector<WordLists> lists;
    lists.reserve(n);
    for (const PostAnnotation& ann : annotations) {
        m.ids.push_back(ann.post_id);
        lists.push_back(build_word_lists(ann, mode, options));
    }
    m.values.assign(n, std::vector<double>(n, 0.0));
    for (std::size_t k = 0; k < n; ++k) m.values[k][k] = 1.0;
    if (mode == MatchMode::Symmetric) {
        for (std::size_t k = 0; k < n; ++k) {
            for (std::size_t l = k + 1; l < n; ++l) {
                double s = pair_similarity(lists[k], lists[l], mode, weight_mode).score;
                m.values[k][l] = s;
                m.values[l][k] = s;
            }
        }
    } else {
        for (std::size_t k = 0; k < n; ++k) {
            for (std::size_t l = 0; l < n; ++l) {
                if (k == l) continue;
                m.values[k][l] =
                    pair_similarity(lists[k], lists[l], mode, weight_mode).score;
            }
        }
    }
    return m;
}

double tfidf_cosine(const PostAnnotation& a, const PostAnnotation& b,
                    const std::vector<PostAnnotation>& corpus) {
    std::map<std::string, int> df;
    for (const PostAnnotation& ann : corpus) {
        std::set<std::string> seen;
        for (const Sentence& s : ann.sentences) {
            for (const TaggedWord& w : s.words) {
                if (w.pos_tag == PosTag::PUNCT) continue;
                seen.insert(w.lemma);
            }
        }
        for (const std::string& lemma : seen) df[lemma] += 1;
    }
    const double n = static_cast<double>(corpus.size());
    auto idf = [&](const std::string& term) {
        auto it = df.find(term);
        int d = it == df.end() ? 1 : it->second;
        return std::log(n / static_cast<double>(d));
    };

    std::map<std::string, double> tf_a = lemma_counts(a);
    std::map<std::string, double> tf_b = lemma_counts(b);
    double dot = 0.0;
    double norm_a = 0.0;
    double norm_b = 0.0;
    for (const auto& [term, tf] : tf_a) {
        double wa = tf * idf(term);
        norm_a += wa * wa;
        auto it = tf_b.find(term);
        if (it != tf_b.end()) dot += wa * (it->second * idf(term));
    }
    for (const auto& [term, tf] : tf_b) {
        double wb = tf * idf(term);
        norm_b += wb * wb;
    }
    if (norm_a <= 0.0 || norm_b <= 0.0) return 0.0;
    return dot / (std::sqrt(norm_a) * std::sqrt(norm_b));
}

void save_matrix_csv(const SimilarityMatrix& matrix, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw StoreError("cannot write matrix file: " + path);
    out << "post_id";
    for (std::int64_t id : matrix.ids) out << ',' << id;
    out << '\n';
    for (std::size_t i = 0; i < matrix.ids.size(); ++i) {
        out << matrix.ids[i];
        for (double v : matrix.values[i]) out << ',' << fixed6(v);
        out << '\n';
    }
    if (!out) throw StoreError("write failed: " + path);
}

SimilarityMatrix load_matrix_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw StoreError("cannot read matrix file: " + path);
    SimilarityMatrix m;
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& msg) -> StoreError {
        return StoreError(path + ":" + std::to_string(lineno) + ": " + msg);
    };
    auto split = [](const std::string& s) {
        std::vector<std::string> cells;
        std::stringstream ss(s);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        return cells;
    };
    if (!std::getline(in, line)) throw fail("empty matrix file");
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> header = split(line);
    if (header.empty() || header[0] != "post_id") {
        throw fail("expected 'post_id' header");
    }
    for (std::size_t i = 1; i < header.size(); ++i) {
        std::int64_t id = 0;
        const std::string& cell = header[i];
        auto [p, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), id);
        if (ec != std::errc() || p != cell.data() + cell.size()) {
            throw fail("bad post id '" + cell + "'");
        }
        m.ids.push_back(id);
    }
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cells = split(line);
        if (cells.size() != m.ids.size() + 1) {
            throw fail("expected " + std::to_string(m.ids.size() + 1) + " cells, got " +
                       std::to_string(cells.size()));
        }
        std::vector<double> row;
        row.reserve(m.ids.size());
        for (std::size_t i = 1; i < cells.size(); ++i) {
            try {
                row.push_back(std::stod(cells[i]));
            } catch (const std::exception&) {
                throw fail("bad value '" + cells[i] + "'");
            }
        }
        m.values.push_back(std::move(row));
    }
    if (m.values.size() != m.ids.size()) {
        throw StoreError(path + ": matrix is not square: " +
                         std::to_string(m.values.size()) + " rows, " +
                         std::to_string(m.ids.size()) + " columns");
    }
    return m;
}

nlohmann::json to_json(const SimilarityBreakdown& b) {
    return nlohmann::json{
        {"post_a", b.post_a},
        {"post_b", b.post_b},
        {"sim_noun", b.sim_noun},
        {"sim_verb", b.sim_verb},
        {"sim_common", b.sim_common},
        {"alpha", b.alpha},
        {"beta", b.beta},
        {"gamma", b.gamma},
        {"total_word_list", b.total_word_list},
        {"raw_score", b.raw_score},
        {"score", b.score},
    };
}

}  // namespace bpsm
