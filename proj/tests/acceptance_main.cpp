// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion carries a wall-clock budget that is enforced.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bpsm/annotate.hpp"
#include "bpsm/cluster.hpp"
#include "bpsm/feed.hpp"
#include "bpsm/lexicon.hpp"
#include "bpsm/similarity.hpp"
#include "bpsm/wordlists.hpp"

#include "naive_bpsm.hpp"
#include "test_support.hpp"

using namespace bpsm;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

struct Check {
    std::string name;
    double budget_seconds;
    std::function<Outcome()> run;
};

std::string data_file(const std::string& name) {
    return std::string(BPSM_DATA_DIR) + "/" + name;
}

void expect(Outcome& out, bool ok, const std::string& what) {
    if (!ok) {
        out.pass = false;
        if (!out.detail.empty()) out.detail += "; ";
        out.detail += what;
    }
}

naive::Post to_naive(const PostAnnotation& ann) {
    naive::Post post;
    post.id = ann.post_id;
    for (const Sentence& s : ann.sentences) {
        std::vector<naive::Word> words;
        for (const TaggedWord& w : s.words) {
            naive::Word nw;
            nw.lemma = w.lemma;
            nw.pos_tag = std::string(to_string(w.pos_tag));
            nw.synonyms = w.synonyms;
            nw.categories = w.categories;
            words.push_back(std::move(nw));
        }
        post.sentences.push_back(std::move(words));
    }
    return post;
}

// ---------------------------------------------------------------------------
// 1. Weight and score spot checks against hand-derived values.
// ---------------------------------------------------------------------------
Outcome eq_fidelity() {
    Outcome out;
    const double tol = 1e-9;
    {
        SimilarityBreakdown r = bpsm_score(2, 1, 1);
        expect(out, std::abs(r.alpha - 1.0) <= tol, "(2,1,1) alpha");
        expect(out, std::abs(r.beta - 1.0 / 3.0) <= tol, "(2,1,1) beta");
        expect(out, std::abs(r.gamma - 1.0 / 3.0) <= tol, "(2,1,1) gamma");
        expect(out, std::abs(r.raw_score - 2.0 / 3.0) <= tol, "(2,1,1) raw");
        expect(out, std::abs(r.score - 2.0 / 3.0) <= tol, "(2,1,1) score");
    }
    {
        SimilarityBreakdown r = bpsm_score(3, 3, 3);
        expect(out, std::abs(r.alpha - 0.5) <= tol, "(3,3,3) alpha");
        expect(out, std::abs(r.beta - 0.5) <= tol, "(3,3,3) beta");
        expect(out, std::abs(r.gamma - 0.5) <= tol, "(3,3,3) gamma");
        expect(out, std::abs(r.score - 0.5) <= tol, "(3,3,3) score");
    }
    {
        SimilarityBreakdown r = bpsm_score(10, 1, 1);
        expect(out, std::abs(r.alpha - 5.0) <= tol, "(10,1,1) alpha");
        expect(out, std::abs(r.beta - 1.0 / 11.0) <= tol, "(10,1,1) beta");
        expect(out, std::abs(r.gamma - 1.0 / 11.0) <= tol, "(10,1,1) gamma");
        expect(out, std::abs(r.raw_score - 46.0 / 11.0) <= tol, "(10,1,1) raw");
        expect(out, r.score == 1.0, "(10,1,1) clamped score");
    }
    return out;
}

// ---------------------------------------------------------------------------
// 2. Score range over random count triples.
// ---------------------------------------------------------------------------
Outcome range_property() {
    Outcome out;
    std::mt19937 rng(90210);
    std::uniform_int_distribution<int> dist(0, 100);
    int checked = 0;
    for (int i = 0; i < 10000; ++i) {
        std::int64_t sn = dist(rng);
        std::int64_t sv = dist(rng);
        std::int64_t sc = dist(rng);
        SimilarityBreakdown r = bpsm_score(sn, sv, sc);
        if (!(r.score >= 0.0 && r.score <= 1.0)) {
            expect(out, false, "score out of range at (" + std::to_string(sn) + "," +
                                   std::to_string(sv) + "," + std::to_string(sc) + ")");
            break;
        }
        if ((r.score == 0.0) != (r.total_word_list == 0)) {
            expect(out, false, "zero-score rule violated at (" + std::to_string(sn) +
                                   "," + std::to_string(sv) + "," +
                                   std::to_string(sc) + ")");
            break;
        }
        ++checked;
    }
    out.detail = std::to_string(checked) + " triples";
    return out;
}

// ---------------------------------------------------------------------------
// 3. Within-issue vs between-issue separation on the bundled mini-corpus.
// ---------------------------------------------------------------------------
Outcome within_between() {
    Outcome out;
    std::vector<BlogPost> posts = parse_feed_file(data_file("mini_feed.xml"));
    expect(out, posts.size() == 12, "mini corpus has 12 posts");
    Lexicon lexicon = load_lexicon(data_file("mini_lexicon.tsv"));
    std::vector<PostAnnotation> annotations;
    for (const BlogPost& p : posts) annotations.push_back(annotate_post(p, lexicon));
    SimilarityMatrix matrix = similarity_matrix(annotations, MatchMode::Symmetric);

    // Ground-truth membership of the fixture: 3 issues x 4 posts.
    Assignment truth;
    for (std::int64_t id = 3801; id <= 3804; ++id) truth.post_issues[id] = {0};
    for (std::int64_t id = 3805; id <= 3808; ++id) truth.post_issues[id] = {1};
    for (std::int64_t id = 3809; id <= 3812; ++id) truth.post_issues[id] = {2};

    std::ostringstream detail;
    for (const IssueReportRow& row : issue_report(matrix, truth)) {
        expect(out, row.within.has_value(), "within mean defined");
        expect(out, row.between.has_value(), "between mean defined");
        if (!row.within || !row.between) continue;
        char buf[96];
        std::snprintf(buf, sizeof buf, "issue %d: within %.4f between %.4f  ",
                      row.issue_id, *row.within, *row.between);
        detail << buf;
        expect(out, *row.within >= 0.5 && *row.within <= 1.0,
               "issue " + std::to_string(row.issue_id) + " within mean in [0.5, 1]");
        expect(out, *row.within - *row.between >= 0.10,
               "issue " + std::to_string(row.issue_id) + " separation >= 0.10");
    }
    if (out.pass) out.detail = detail.str();
    return out;
}

// ---------------------------------------------------------------------------
// 4. Paraphrase pairs: the pair score beats the tf-idf cosine.
// ---------------------------------------------------------------------------
std::string ed_form(const std::string& lemma) {
    if (!lemma.empty() && lemma.back() == 'e') return lemma + "d";
    return lemma + "ed";
}

Outcome tfidf_comparison() {
    Outcome out;
    Lexicon lexicon = load_lexicon(data_file("mini_lexicon.tsv"));

    std::vector<std::pair<std::string, std::vector<std::string>>> noun_pool;
    std::vector<std::pair<std::string, std::vector<std::string>>> verb_pool;
    for (const auto& [key, entry] : lexicon.entries()) {
        if (entry.synonyms.empty()) continue;
        std::vector<std::string> syns(entry.synonyms.begin(), entry.synonyms.end());
        if (key.second == PosClass::Noun) noun_pool.emplace_back(key.first, syns);
        if (key.second == PosClass::Verb) verb_pool.emplace_back(key.first, syns);
    }
    expect(out, noun_pool.size() >= 8, "noun pool large enough");
    expect(out, verb_pool.size() >= 4, "verb pool large enough");
    if (!out.pass) return out;

    std::mt19937 rng(60 * 60);
    auto pick = [&](std::size_t n) {
        return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
    };

    const int n_pairs = 50;
    std::vector<BlogPost> posts;
    for (int i = 0; i < n_pairs; ++i) {
        // Base post: 4 distinct nouns, 2 verbs, in two short sentences.
        std::vector<std::size_t> noun_idx;
        while (noun_idx.size() < 4) {
            std::size_t idx = pick(noun_pool.size());
            bool dup = false;
            for (std::size_t seen : noun_idx) dup = dup || seen == idx;
            if (!dup) noun_idx.push_back(idx);
        }
        std::vector<std::size_t> verb_idx = {pick(verb_pool.size()),
                                             pick(verb_pool.size())};

        // Six content slots; replace four of them in the paraphrase (two
        // thirds, past the 60% bar).
        std::vector<int> slots = {0, 1, 2, 3, 4, 5};
        std::shuffle(slots.begin(), slots.end(), rng);
        std::set<int> replaced(slots.begin(), slots.begin() + 4);

        auto noun_at = [&](int slot, bool paraphrase) {
            const auto& [lemma, syns] = noun_pool[noun_idx[static_cast<std::size_t>(slot)]];
            if (paraphrase && replaced.count(slot))
                return syns[pick(syns.size())];
            return lemma;
        };
        auto verb_at = [&](int slot, bool paraphrase) {
            const auto& [lemma, syns] =
                verb_pool[verb_idx[static_cast<std::size_t>(slot - 4)]];
            if (paraphrase && replaced.count(slot))
                return ed_form(syns[pick(syns.size())]);
            return ed_form(lemma);
        };
        for (bool paraphrase : {false, true}) {
            BlogPost p;
            p.feed_id = 10000 + 2 * i + (paraphrase ? 1 : 0);
            p.body_clean = "The " + noun_at(0, paraphrase) + " " +
                           verb_at(4, paraphrase) + " the " + noun_at(1, paraphrase) +
                           ". The " + noun_at(2, paraphrase) + " " +
                           verb_at(5, paraphrase) + " the " + noun_at(3, paraphrase) +
                           ".";
            posts.push_back(std::move(p));
        }
    }

    std::vector<PostAnnotation> annotations;
    for (const BlogPost& p : posts) annotations.push_back(annotate_post(p, lexicon));

    int wins = 0;
    double worst_margin = 1.0;
    for (int i = 0; i < n_pairs; ++i) {
        const PostAnnotation& a = annotations[static_cast<std::size_t>(2 * i)];
        const PostAnnotation& b = annotations[static_cast<std::size_t>(2 * i + 1)];
        double bpsm_value =
            pair_similarity(build_word_lists(a, MatchMode::Symmetric),
                            build_word_lists(b, MatchMode::Symmetric),
                            MatchMode::Symmetric)
                .score;
        double baseline = tfidf_cosine(a, b, annotations);
        if (bpsm_value > baseline) ++wins;
        worst_margin = std::min(worst_margin, bpsm_value - baseline);
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "%d/%d wins, worst margin %.4f", wins, n_pairs,
                  worst_margin);
    out.detail = buf;
    expect(out, wins * 10 >= n_pairs * 9, "pair score beats tf-idf in >= 90%");
    return out;
}

// ---------------------------------------------------------------------------
// 5 and 6. Oracle equivalence and exact symmetry on random corpora.
// ---------------------------------------------------------------------------
Outcome oracle_equivalence() {
    Outcome out;
    test_support::AnnotationGen gen(20100417);
    int cells = 0;
    for (int trial = 0; trial < 100 && out.pass; ++trial) {
        std::vector<PostAnnotation> corpus = gen.random_corpus(10);
        std::vector<naive::Post> posts;
        for (const PostAnnotation& ann : corpus) posts.push_back(to_naive(ann));
        for (MatchMode mode : {MatchMode::Symmetric, MatchMode::Verbatim}) {
            SimilarityMatrix engine = similarity_matrix(corpus, mode);
            auto oracle = naive::matrix(posts, mode == MatchMode::Symmetric);
            for (std::size_t i = 0; i < oracle.size(); ++i) {
                for (std::size_t j = 0; j < oracle.size(); ++j) {
                    ++cells;
                    if (std::abs(engine.values[i][j] - oracle[i][j]) > 1e-12) {
                        expect(out, false,
                               "trial " + std::to_string(trial) + " cell (" +
                                   std::to_string(i) + "," + std::to_string(j) +
                                   "): engine " + std::to_string(engine.values[i][j]) +
                                   " oracle " + std::to_string(oracle[i][j]));
                    }
                }
            }
        }
    }
    if (out.pass) out.detail = std::to_string(cells) + " matrix cells compared";
    return out;
}

Outcome exact_symmetry() {
    Outcome out;
    test_support::AnnotationGen gen(64);
    int pairs = 0;
    for (int trial = 0; trial < 100 && out.pass; ++trial) {
        std::vector<PostAnnotation> corpus = gen.random_corpus(10);
        std::vector<WordLists> lists;
        for (const PostAnnotation& ann : corpus) {
            lists.push_back(build_word_lists(ann, MatchMode::Symmetric));
        }
        for (std::size_t i = 0; i < lists.size() && out.pass; ++i) {
            for (std::size_t j = i + 1; j < lists.size(); ++j) {
                double ab =
                    pair_similarity(lists[i], lists[j], MatchMode::Symmetric).score;
                double ba =
                    pair_similarity(lists[j], lists[i], MatchMode::Symmetric).score;
                ++pairs;
                if (ab != ba) {
                    expect(out, false,
                           "asymmetry at trial " + std::to_string(trial) + " pair " +
                               std::to_string(i) + "," + std::to_string(j));
                    break;
                }
            }
        }
    }
    if (out.pass) out.detail = std::to_string(pairs) + " pairs, exact equality";
    return out;
}

// ---------------------------------------------------------------------------
// 7. Lower bound: all-positive counts keep the raw score at one half or more.
// ---------------------------------------------------------------------------
Outcome lower_bound() {
    Outcome out;
    for (std::int64_t sn = 1; sn <= 30 && out.pass; ++sn) {
        for (std::int64_t sv = 1; sv <= 30 && out.pass; ++sv) {
            for (std::int64_t sc = 1; sc <= 30; ++sc) {
                SimilarityBreakdown r = bpsm_score(sn, sv, sc);
                if (r.raw_score < 0.5 - 1e-12) {
                    expect(out, false,
                           "raw " + std::to_string(r.raw_score) + " at (" +
                               std::to_string(sn) + "," + std::to_string(sv) + "," +
                               std::to_string(sc) + ")");
                    break;
                }
            }
        }
    }
    if (out.pass) out.detail = "27000 triples";
    return out;
}

// ---------------------------------------------------------------------------
// 8. Deduplication is idempotent and leaves no matching survivors.
// ---------------------------------------------------------------------------
Outcome dedup_laws() {
    Outcome out;
    test_support::AnnotationGen gen(8086);
    for (int trial = 0; trial < 200 && out.pass; ++trial) {
        gen.reseed_relations();
        PostAnnotation ann = gen.random_post(trial, 5, 8);
        for (MatchMode mode : {MatchMode::Symmetric, MatchMode::Verbatim}) {
            WordLists lists = build_word_lists(ann, mode);
            for (const auto* list :
                 {&lists.nounlist, &lists.verblist, &lists.commonlist}) {
                std::vector<TaggedWord> again = *list;
                dedup_list(again, mode);
                if (again != *list) {
                    expect(out, false, "dedup not idempotent at trial " +
                                           std::to_string(trial));
                    break;
                }
                for (std::size_t i = 0; i < list->size(); ++i) {
                    for (std::size_t j = i + 1; j < list->size(); ++j) {
                        if (words_match((*list)[i], (*list)[j], mode)) {
                            expect(out, false, "matching survivors at trial " +
                                                   std::to_string(trial));
                        }
                    }
                }
            }
        }
    }
    if (out.pass) out.detail = "200 annotations, both match modes";
    return out;
}

// ---------------------------------------------------------------------------
// 9. Feed ingestion round-trip on the bundled sample record.
// ---------------------------------------------------------------------------
Outcome ingestion_roundtrip() {
    Outcome out;
    std::vector<BlogPost> posts = parse_feed_file(data_file("sample_feed.xml"));
    expect(out, posts.size() == 1, "one record");
    if (posts.size() != 1) return out;
    const BlogPost& p = posts[0];
    expect(out, p.feed_id == 4586, "feed_id 4586");
    expect(out, p.source_id == 91, "source_id 91");
    expect(out,
           p.title == "Zardari Fights for Survival Following SC Verdict on NRO",
           "title");
    expect(out, p.blogger == "noreply@blogger.com (Pakistan Pal)", "blogger");
    expect(out, p.pub_date == "Fri, 18 Dec 2009 08:02:00 -0000", "pub_date");
    expect(out,
           p.body_clean.rfind(
               "PKonweb MonitorIn a major blow to President Asif Ali Zardari", 0) == 0,
           "clean body prefix");
    expect(out, p.body_clean.find("<img") == std::string::npos, "img tag stripped");
    expect(out, p.body_clean.find("<div") == std::string::npos, "div tag stripped");
    expect(out, strip_markup(p.body_raw) == p.body_clean, "clean derives from raw");

    test_support::TempDir dir;
    Corpus corpus;
    corpus.source_description = "sample";
    corpus.posts = posts;
    BlogPost urdu;
    urdu.feed_id = 4587;
    urdu.body_raw = "Adliya bahal \xD8\xB9\xD8\xAF\xD8\xA7\xD9\x84\xD8\xAA ho gayi";
    urdu.body_clean = strip_markup(urdu.body_raw);
    corpus.posts.push_back(urdu);
    save_corpus(corpus, dir.file("c.jsonl"));
    Corpus back = load_corpus(dir.file("c.jsonl"));
    expect(out, back == corpus, "save/load identity");
    return out;
}

// ---------------------------------------------------------------------------
// 10. Clustering monotonicity and seed self-membership on random matrices.
// ---------------------------------------------------------------------------
Outcome clustering_monotonicity() {
    Outcome out;
    std::mt19937 rng(1000003);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 100 && out.pass; ++trial) {
        int n = std::uniform_int_distribution<int>(2, 10)(rng);
        SimilarityMatrix m;
        for (int i = 0; i < n; ++i) m.ids.push_back(i + 1);
        m.values.assign(static_cast<std::size_t>(n),
                        std::vector<double>(static_cast<std::size_t>(n), 0.0));
        for (int i = 0; i < n; ++i) {
            m.values[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1.0;
            for (int j = i + 1; j < n; ++j) {
                double v = unit(rng);
                m.values[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
                m.values[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = v;
            }
        }
        IssueConfig config;
        int n_issues = std::uniform_int_distribution<int>(1, 3)(rng);
        for (int c = 0; c < n_issues; ++c) {
            Issue issue;
            issue.id = c;
            int n_seeds = std::uniform_int_distribution<int>(1, 2)(rng);
            for (int s = 0; s < n_seeds; ++s) {
                issue.seeds.push_back(std::uniform_int_distribution<int>(1, n)(rng));
            }
            config.issues.push_back(std::move(issue));
        }
        double lo = unit(rng);
        double hi = unit(rng);
        if (lo > hi) std::swap(lo, hi);
        config.threshold = lo;
        Assignment loose = soft_cluster(m, config);
        config.threshold = hi;
        Assignment tight = soft_cluster(m, config);
        for (const auto& [post, issues] : tight.post_issues) {
            for (int issue : issues) {
                if (loose.post_issues.at(post).count(issue) == 0) {
                    expect(out, false, "assignment appeared when threshold rose");
                }
            }
        }
        for (const Issue& issue : config.issues) {
            for (std::int64_t seed : issue.seeds) {
                if (tight.post_issues.at(seed).count(issue.id) == 0 ||
                    loose.post_issues.at(seed).count(issue.id) == 0) {
                    expect(out, false, "seed missing from its own issue");
                }
            }
        }
    }
    if (out.pass) out.detail = "100 random matrices";
    return out;
}

}  // namespace

int main() {
    std::vector<Check> checks = {
        {"eq-fidelity spot checks", 1.0, eq_fidelity},
        {"score range over 10000 random triples", 5.0, range_property},
        {"within-issue vs between-issue separation", 10.0, within_between},
        {"pair score beats tf-idf on paraphrase pairs", 30.0, tfidf_comparison},
        {"oracle equivalence on 100 random corpora", 60.0, oracle_equivalence},
        {"exact score symmetry", 60.0, exact_symmetry},
        {"raw score lower bound on [1,30]^3", 60.0, lower_bound},
        {"dedup idempotence and distinctness", 60.0, dedup_laws},
        {"ingestion field values and round-trip", 60.0, ingestion_roundtrip},
        {"clustering monotonicity and seed membership", 60.0, clustering_monotonicity},
    };

    int failed = 0;
    for (std::size_t i = 0; i < checks.size(); ++i) {
        auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = checks[i].run();
        } catch (const std::exception& e) {
            out.pass = false;
            out.detail = std::string("exception: ") + e.what();
        }
        double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        if (seconds > checks[i].budget_seconds) {
            out.pass = false;
            if (!out.detail.empty()) out.detail += "; ";
            out.detail += "over budget (" + std::to_string(checks[i].budget_seconds) +
                          " s)";
        }
        if (!out.pass) ++failed;
        std::printf("[%2zu] %s  %s (%.3f s)%s%s\n", i + 1,
                    out.pass ? "PASS" : "FAIL", checks[i].name.c_str(), seconds,
                    out.detail.empty() ? "" : ": ", out.detail.c_str());
    }
    if (failed > 0) {
        std::printf("%d criterion(s) failed\n", failed);
        return 1;
    }
    std::printf("all %zu criteria passed\n", checks.size());
    return 0;
}
