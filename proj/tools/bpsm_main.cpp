// bpsm: blog-post similarity toolkit.
//
// Subcommands mirror the pipeline stages: ingest feeds into a corpus,
// annotate it against a lexicon, score a single pair, build the pairwise
// similarity matrix, soft-cluster posts into issues, and report per-issue
// within/between means. Given identical inputs and flags, every output
// file is byte-identical across runs.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "bpsm/annotate.hpp"
#include "bpsm/cluster.hpp"
#include "bpsm/errors.hpp"
#include "bpsm/feed.hpp"
#include "bpsm/lexicon.hpp"
#include "bpsm/similarity.hpp"
#include "bpsm/wordlists.hpp"

namespace {

struct RunConfig {
    std::string lexicon_path;
    bpsm::MatchMode match_mode = bpsm::MatchMode::Symmetric;
    bpsm::WeightMode weight_mode = bpsm::WeightMode::Verbatim;
    bool include_title = true;
    bool extended_verbs = false;
};

std::string fixed6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

void print_warnings(const bpsm::FeedReport& report) {
    for (const std::string& w : report.warnings) std::cerr << "warning: " << w << '\n';
}

std::string resolve_lexicon_path(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("BPSM_LEXICON"); env && *env) return env;
    throw bpsm::Error("no lexicon given (use --lexicon or set BPSM_LEXICON)");
}

bpsm::Lexicon load_lexicon_checked(const RunConfig& cfg) {
    bpsm::LexiconReport report;
    bpsm::Lexicon lex = bpsm::load_lexicon(resolve_lexicon_path(cfg.lexicon_path),
                                           /*symmetrize=*/true, &report);
    for (const std::string& w : report.warnings) std::cerr << "warning: " << w << '\n';
    return lex;
}

std::vector<bpsm::PostAnnotation> annotate_corpus(const bpsm::Corpus& corpus,
                                                  const bpsm::Lexicon& lexicon,
                                                  const RunConfig& cfg) {
    bpsm::AnnotateOptions opts;
    opts.include_title = cfg.include_title;
    opts.extended_verbs = cfg.extended_verbs;
    std::vector<bpsm::PostAnnotation> annotations;
    annotations.reserve(corpus.posts.size());
    for (const bpsm::BlogPost& post : corpus.posts) {
        annotations.push_back(bpsm::annotate_post(post, lexicon, opts));
    }
    return annotations;
}

void add_pipeline_flags(CLI::App* cmd, RunConfig* cfg) {
    cmd->add_option("--lexicon", cfg->lexicon_path,
                    "lexicon TSV file (default: $BPSM_LEXICON)");
    cmd->add_option_function<std::string>(
           "--match-mode",
           [cfg](const std::string& v) {
               if (!bpsm::match_mode_from_string(v, &cfg->match_mode))
                   throw CLI::ValidationError("--match-mode",
                                              "must be 'verbatim' or 'symmetric'");
           },
           "word match mode: symmetric (default) or verbatim")
        ->type_name("MODE");
    cmd->add_option_function<std::string>(
           "--weight-mode",
           [cfg](const std::string& v) {
               if (!bpsm::weight_mode_from_string(v, &cfg->weight_mode))
                   throw CLI::ValidationError("--weight-mode",
                                              "must be 'verbatim' or 'normalized'");
           },
           "weight mode: verbatim (default) or normalized")
        ->type_name("MODE");
    cmd->add_flag("--include-title,!--no-title", cfg->include_title,
                  "include the post title as sentence 1 (default on)");
    cmd->add_flag("--extended-verbs", cfg->extended_verbs,
                  "also count VBZ/VBN forms as verbs");
}

int cmd_ingest(const std::vector<std::string>& feeds, const std::string& out_path) {
    bpsm::Corpus corpus;
    std::set<std::int64_t> seen;
    for (const std::string& feed : feeds) {
        bpsm::FeedReport report;
        std::vector<bpsm::BlogPost> posts = bpsm::parse_feed_file(feed, &report);
        print_warnings(report);
        for (bpsm::BlogPost& post : posts) {
            if (!seen.insert(post.feed_id).second) {
                throw bpsm::IngestError("duplicate feed_id " +
                                        std::to_string(post.feed_id) +
                                        " across input files");
            }
            corpus.posts.push_back(std::move(post));
        }
        if (!corpus.source_description.empty()) corpus.source_description += ";";
        corpus.source_description += feed;
    }
    bpsm::save_corpus(corpus, out_path);
    std::cerr << "ingested " << corpus.posts.size() << " post(s) from "
              << feeds.size() << " file(s) into " << out_path << '\n';
    return 0;
}

int cmd_annotate(const std::string& corpus_path, const RunConfig& cfg,
                 const std::string& out_path) {
    bpsm::Corpus corpus = bpsm::load_corpus(corpus_path);
    bpsm::Lexicon lexicon = load_lexicon_checked(cfg);
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw bpsm::StoreError("cannot write " + out_path);
    for (const bpsm::PostAnnotation& ann : annotate_corpus(corpus, lexicon, cfg)) {
        out << bpsm::annotation_to_jsonl(ann);
    }
    return 0;
}

int cmd_pairsim(const std::string& corpus_path, const RunConfig& cfg,
                std::int64_t post_a, std::int64_t post_b) {
    bpsm::Corpus corpus = bpsm::load_corpus(corpus_path);
    bpsm::Lexicon lexicon = load_lexicon_checked(cfg);
    auto find_post = [&](std::int64_t id) -> const bpsm::BlogPost& {
        for (const bpsm::BlogPost& p : corpus.posts) {
            if (p.feed_id == id) return p;
        }
        throw bpsm::Error("post " + std::to_string(id) + " not in corpus");
    };
    bpsm::AnnotateOptions opts;
    opts.include_title = cfg.include_title;
    opts.extended_verbs = cfg.extended_verbs;
    bpsm::WordLists wl_a = bpsm::build_word_lists(
        bpsm::annotate_post(find_post(post_a), lexicon, opts), cfg.match_mode);
    bpsm::WordLists wl_b = bpsm::build_word_lists(
        bpsm::annotate_post(find_post(post_b), lexicon, opts), cfg.match_mode);
    bpsm::SimilarityBreakdown r =
        bpsm::pair_similarity(wl_a, wl_b, cfg.match_mode, cfg.weight_mode);
    std::cout << "post_a: " << r.post_a << '\n'
              << "post_b: " << r.post_b << '\n'
              << "sim_noun: " << r.sim_noun << '\n'
              << "sim_verb: " << r.sim_verb << '\n'
              << "sim_common: " << r.sim_common << '\n'
              << "alpha: " << fixed6(r.alpha) << '\n'
              << "beta: " << fixed6(r.beta) << '\n'
              << "gamma: " << fixed6(r.gamma) << '\n'
              << "total_word_list: " << r.total_word_list << '\n'
              << "raw_score: " << fixed6(r.raw_score) << '\n'
              << "score: " << fixed6(r.score) << '\n';
    return 0;
}

int cmd_matrix(const std::string& corpus_path, const RunConfig& cfg,
               const std::string& out_path) {
    bpsm::Corpus corpus = bpsm::load_corpus(corpus_path);
    bpsm::Lexicon lexicon = load_lexicon_checked(cfg);
    bpsm::SimilarityMatrix matrix = bpsm::similarity_matrix(
        annotate_corpus(corpus, lexicon, cfg), cfg.match_mode, cfg.weight_mode);
    bpsm::save_matrix_csv(matrix, out_path);
    return 0;
}

int cmd_cluster(const std::string& matrix_path, const std::string& issues_path,
                std::optional<double> threshold, const std::string& out_path) {
    bpsm::SimilarityMatrix matrix = bpsm::load_matrix_csv(matrix_path);
    bpsm::IssueConfig config = bpsm::load_issue_config(issues_path);
    if (threshold) {
        if (*threshold < 0.0 || *threshold > 1.0)
            throw bpsm::ConfigError("--threshold must be in [0, 1]");
        config.threshold = *threshold;
    }
    bpsm::Assignment assignment = bpsm::soft_cluster(matrix, config);
    bpsm::save_assignment_csv(assignment, matrix.ids, out_path);
    auto within = bpsm::within_issue_average(matrix, assignment);
    for (const bpsm::Issue& issue : config.issues) {
        std::size_t count = 0;
        for (const auto& [post, ids] : assignment.post_issues) {
            (void)post;
            count += ids.count(issue.id);
        }
        std::cout << "issue " << issue.id << " (" << issue.name << "): " << count
                  << " post(s), within-mean ";
        auto it = within.find(issue.id);
        if (it != within.end() && it->second) std::cout << fixed6(*it->second);
        else std::cout << "undefined";
        std::cout << '\n';
    }
    return 0;
}

int cmd_report(const std::string& matrix_path, const std::string& assignment_path,
               const std::string& out_path) {
    bpsm::SimilarityMatrix matrix = bpsm::load_matrix_csv(matrix_path);
    bpsm::Assignment assignment = bpsm::load_assignment_csv(assignment_path);
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw bpsm::StoreError("cannot write " + out_path);
    out << "issue_id,within_mean,between_mean\n";
    for (const bpsm::IssueReportRow& row : bpsm::issue_report(matrix, assignment)) {
        out << row.issue_id << ','
            << (row.within ? fixed6(*row.within) : "nan") << ','
            << (row.between ? fixed6(*row.between) : "nan") << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"blog-post similarity toolkit"};
    app.require_subcommand(1);

    // ingest
    std::vector<std::string> feed_paths;
    std::string ingest_out;
    CLI::App* ingest = app.add_subcommand("ingest", "parse feed files into a corpus");
    ingest->add_option("feeds", feed_paths, "feed XML files")
        ->required()
        ->check(CLI::ExistingFile);
    ingest->add_option("--out", ingest_out, "corpus JSONL output")->required();

    // annotate
    RunConfig annotate_cfg;
    std::string annotate_corpus_path;
    std::string annotate_out;
    CLI::App* annotate = app.add_subcommand("annotate", "dump sentence annotations");
    annotate->add_option("--corpus", annotate_corpus_path, "corpus JSONL file")
        ->required()
        ->check(CLI::ExistingFile);
    annotate->add_option("--out", annotate_out, "annotation JSONL output")->required();
    add_pipeline_flags(annotate, &annotate_cfg);

    // pairsim
    RunConfig pairsim_cfg;
    std::string pairsim_corpus_path;
    std::int64_t pairsim_a = 0;
    std::int64_t pairsim_b = 0;
    CLI::App* pairsim =
        app.add_subcommand("pairsim", "print the similarity breakdown for two posts");
    pairsim->add_option("--corpus", pairsim_corpus_path, "corpus JSONL file")
        ->required()
        ->check(CLI::ExistingFile);
    pairsim->add_option("--post-a", pairsim_a, "first post id")->required();
    pairsim->add_option("--post-b", pairsim_b, "second post id")->required();
    add_pipeline_flags(pairsim, &pairsim_cfg);

    // matrix
    RunConfig matrix_cfg;
    std::string matrix_corpus_path;
    std::string matrix_out;
    CLI::App* matrix = app.add_subcommand("matrix", "pairwise similarity matrix CSV");
    matrix->add_option("--corpus", matrix_corpus_path, "corpus JSONL file")
        ->required()
        ->check(CLI::ExistingFile);
    matrix->add_option("--out", matrix_out, "matrix CSV output")->required();
    add_pipeline_flags(matrix, &matrix_cfg);

    // cluster
    std::string cluster_matrix_path;
    std::string cluster_issues_path;
    std::string cluster_out;
    std::optional<double> cluster_threshold;
    CLI::App* cluster =
        app.add_subcommand("cluster", "assign posts to issues by seed similarity");
    cluster->add_option("--matrix", cluster_matrix_path, "matrix CSV file")
        ->required()
        ->check(CLI::ExistingFile);
    cluster->add_option("--issues", cluster_issues_path, "issue config JSON")
        ->required()
        ->check(CLI::ExistingFile);
    cluster->add_option("--out", cluster_out, "assignment CSV output")->required();
    cluster->add_option("--threshold", cluster_threshold,
                        "override the config threshold (in [0, 1])");

    // report
    std::string report_matrix_path;
    std::string report_assignment_path;
    std::string report_out;
    CLI::App* report =
        app.add_subcommand("report", "per-issue within/between mean CSV");
    report->add_option("--matrix", report_matrix_path, "matrix CSV file")
        ->required()
        ->check(CLI::ExistingFile);
    report->add_option("--assignment", report_assignment_path, "assignment CSV file")
        ->required()
        ->check(CLI::ExistingFile);
    report->add_option("--out", report_out, "report CSV output")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(ingest)) return cmd_ingest(feed_paths, ingest_out);
        if (app.got_subcommand(annotate))
            return cmd_annotate(annotate_corpus_path, annotate_cfg, annotate_out);
        if (app.got_subcommand(pairsim))
            return cmd_pairsim(pairsim_corpus_path, pairsim_cfg, pairsim_a, pairsim_b);
        if (app.got_subcommand(matrix))
            return cmd_matrix(matrix_corpus_path, matrix_cfg, matrix_out);
        if (app.got_subcommand(cluster))
            return cmd_cluster(cluster_matrix_path, cluster_issues_path,
                               cluster_threshold, cluster_out);
        if (app.got_subcommand(report))
            return cmd_report(report_matrix_path, report_assignment_path, report_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
