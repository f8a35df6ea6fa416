#pragma once

// Feed ingestion: XML-format blog-post records, markup stripping and the
// line-oriented corpus store.

#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace bpsm {

struct BlogPost {
    std::int64_t feed_id = 0;    // <ParaRSSFeed_ID>
    std::int64_t source_id = 0;  // <ID>
    std::string title;
    std::string body_raw;    // <Data> content verbatim, may embed markup
    std::string body_clean;  // markup stripped, entities decoded
    std::string blogger;
    std::string pub_date;  // verbatim from feed, not validated
    std::string category;  // optional
    std::set<int> issue_labels;

    bool operator==(const BlogPost&) const = default;
};

struct Corpus {
    std::vector<BlogPost> posts;  // ingestion order, feed_id unique
    std::string source_description;

    bool operator==(const Corpus&) const = default;
};

struct StripStats {
    bool unterminated_tag = false;  // trailing '<' without '>', rest dropped
};

/// Removes <...> spans, decodes the five standard XML entities, collapses
/// whitespace runs and trims. Applied to a fixpoint so the result contains
/// no tag spans and no decodable entities; strip_markup(strip_markup(x))
/// == strip_markup(x) for every input.
std::string strip_markup(std::string_view raw, StripStats* stats = nullptr);

/// Replaces undecodable UTF-8 bytes with U+FFFD in place; returns the number
/// of replacements.
std::size_t sanitize_utf8(std::string& text);

struct FeedReport {
    std::vector<std::string> warnings;
    int skipped_records = 0;
    std::size_t replaced_bytes = 0;
};

/// Parses every <ParsedRSSFeeds> record in the file, in document order.
/// Records missing <ParaRSSFeed_ID> or <Data> are skipped and reported.
/// Throws ParseError (with byte offset) on unterminated elements and
/// IngestError on duplicate feed ids within the file.
std::vector<BlogPost> parse_feed_file(const std::string& path,
                                      FeedReport* report = nullptr);

/// JSON-lines store: one post per line, field names matching BlogPost.
/// load(save(c)) == c field for field.
void save_corpus(const Corpus& corpus, const std::string& path);
Corpus load_corpus(const std::string& path);

}  // namespace bpsm
