#include "bpsm/feed.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <utility>

#include "json.hpp"

#include "bpsm/errors.hpp"

namespace bpsm {

namespace {

using json = nlohmann::json;

constexpr std::array<std::pair<std::string_view, char>, 5> kEntities = {{
    {"&amp;", '&'},
    {"&lt;", '<'},
    {"&gt;", '>'},
    {"&quot;", '"'},
    {"&apos;", '\''},
}};

std::string strip_tags_once(std::string_view s, bool* unterminated) {
    std::string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        if (s[i] == '<') {
            std::size_t close = s.find('>', i + 1);
            if (close == std::string_view::npos) {
                if (unterminated) *unterminated = true;
                break;  // rest of the input is an unterminated tag
            }
            i = close + 1;
        } else {
            out += s[i++];
        }
    }
    return out;
}

std::string decode_entities_once(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        if (s[i] == '&') {
            bool decoded = false;
            for (const auto& [name, ch] : kEntities) {
                if (s.substr(i, name.size()) == name) {
                    out += ch;
                    i += name.size();
                    decoded = true;
                    break;
                }
            }
            if (decoded) continue;
        }
        out += s[i++];
    }
    return out;
}

std::string collapse_whitespace(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    bool in_run = false;
    for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            in_run = true;
            continue;
        }
        if (in_run && !out.empty()) out += ' ';
        in_run = false;
        out += c;
    }
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return std::move(buf).str();
}

json post_to_json(const BlogPost& p) {
    json labels = json::array();
    for (int id : p.issue_labels) labels.push_back(id);
    return json{
        {"feed_id", p.feed_id},       {"source_id", p.source_id},
        {"title", p.title},           {"body_raw", p.body_raw},
        {"body_clean", p.body_clean}, {"blogger", p.blogger},
        {"pub_date", p.pub_date},     {"category", p.category},
        {"issue_labels", labels},
    };
}

BlogPost post_from_json(const json& j) {
    BlogPost p;
    p.feed_id = j.at("feed_id").get<std::int64_t>();
    p.source_id = j.at("source_id").get<std::int64_t>();
    p.title = j.at("title").get<std::string>();
    p.body_raw = j.at("body_raw").get<std::string>();
    p.body_clean = j.at("body_clean").get<std::string>();
    p.blogger = j.at("blogger").get<std::string>();
    p.pub_date = j.at("pub_date").get<std::string>();
    p.category = j.at("category").get<std::string>();
    for (const auto& id : j.at("issue_labels")) p.issue_labels.insert(id.get<int>());
    return p;
}

}  // namespace

std::string strip_markup(std::string_view raw, StripStats* stats) {
    bool unterminated = false;
    std::string cur(raw);
    // Iterate to a fixpoint: decoding can uncover tags ("&lt;b&gt;") and tag
    // removal can uncover entities, so one pass is not enough.
    for (;;) {
        std::string next = strip_tags_once(cur, &unterminated);
        next = decode_entities_once(next);
        next = collapse_whitespace(next);
        if (next == cur) break;
        cur = std::move(next);
    }
    if (stats) stats->unterminated_tag = unterminated;
    return cur;
}

std::size_t sanitize_utf8(std::string& text) {
    const auto* s = reinterpret_cast<const unsigned char*>(text.data());
    const std::size_t n = text.size();
    std::string out;
    out.reserve(n);
    std::size_t replaced = 0;
    std::size_t i = 0;
    auto replace_one = [&] {
        out += "\xEF\xBF\xBD";
        ++replaced;
        ++i;
    };
    while (i < n) {
        unsigned char c = s[i];
        if (c < 0x80) {
            out += static_cast<char>(c);
            ++i;
            continue;
        }
        int len = 0;
        if (c >= 0xC2 && c <= 0xDF) len = 2;
        else if (c >= 0xE0 && c <= 0xEF) len = 3;
        else if (c >= 0xF0 && c <= 0xF4) len = 4;
        if (len == 0 || i + len > n) {
            replace_one();
            continue;
        }
        bool ok = true;
        for (int k = 1; k < len; ++k) ok = ok && (s[i + k] & 0xC0) == 0x80;
        if (ok && len == 3) {
            if (c == 0xE0 && s[i + 1] < 0xA0) ok = false;  // overlong
            if (c == 0xED && s[i + 1] > 0x9F) ok = false;  // surrogate
        }
        if (ok && len == 4) {
            if (c == 0xF0 && s[i + 1] < 0x90) ok = false;
            if (c == 0xF4 && s[i + 1] > 0x8F) ok = false;
        }
        if (!ok) {
            replace_one();
            continue;
        }
        out.append(text, i, static_cast<std::size_t>(len));
        i += static_cast<std::size_t>(len);
    }
    text = std::move(out);
    return replaced;
}

namespace {

// Locates <Tag>...</Tag> inside the record span. Returns content bounds or
// false when the tag is absent; throws when the element is never closed.
struct ChildSpan {
    std::size_t begin = 0;
    std::size_t end = 0;
};

bool find_child(std::string_view record, std::size_t record_offset,
                std::string_view tag, ChildSpan* span) {
    std::string open = "<" + std::string(tag) + ">";
    std::string close = "</" + std::string(tag) + ">";
    std::size_t at = record.find(open);
    if (at == std::string_view::npos) return false;
    std::size_t content = at + open.size();
    std::size_t stop = record.find(close, content);
    if (stop == std::string_view::npos) {
        throw ParseError("unterminated <" + std::string(tag) + "> element",
                         record_offset + at);
    }
    span->begin = content;
    span->end = stop;
    return true;
}

std::string child_text(std::string_view record, std::size_t record_offset,
                       std::string_view tag) {
    ChildSpan span;
    if (!find_child(record, record_offset, tag, &span)) return {};
    return decode_entities_once(trim(record.substr(span.begin, span.end - span.begin)));
}

}  // namespace

std::vector<BlogPost> parse_feed_file(const std::string& path, FeedReport* report) {
    FeedReport scratch;
    FeedReport& rep = report ? *report : scratch;

    std::string content = read_file(path);
    std::size_t replaced = sanitize_utf8(content);
    if (replaced > 0) {
        rep.replaced_bytes += replaced;
        rep.warnings.push_back(path + ": replaced " + std::to_string(replaced) +
                               " undecodable byte(s) with U+FFFD");
    }

    constexpr std::string_view kOpen = "<ParsedRSSFeeds>";
    constexpr std::string_view kClose = "</ParsedRSSFeeds>";

    std::vector<BlogPost> posts;
    std::set<std::int64_t> seen_ids;
    std::size_t pos = 0;
    for (;;) {
        std::size_t start = content.find(kOpen, pos);
        if (start == std::string::npos) break;
        std::size_t body_begin = start + kOpen.size();
        std::size_t close_at = content.find(kClose, body_begin);
        std::size_t next_open = content.find(kOpen, body_begin);
        std::size_t body_end;
        if (close_at != std::string::npos &&
            (next_open == std::string::npos || close_at < next_open)) {
            body_end = close_at;
            pos = close_at + kClose.size();
        } else {
            // No matching close tag before the next record: the record runs
            // to the next open tag or to end of file.
            body_end = next_open == std::string::npos ? content.size() : next_open;
            pos = body_end;
        }
        std::string_view record(content.data() + body_begin, body_end - body_begin);

        ChildSpan id_span;
        ChildSpan data_span;
        bool has_id = find_child(record, body_begin, "ParaRSSFeed_ID", &id_span);
        bool has_data = find_child(record, body_begin, "Data", &data_span);
        if (!has_id || !has_data) {
            ++rep.skipped_records;
            rep.warnings.push_back(
                path + ": record at byte offset " + std::to_string(start) +
                " missing <" + (has_id ? "Data" : "ParaRSSFeed_ID") + ">; skipped");
            continue;
        }

        std::string_view id_text =
            trim(record.substr(id_span.begin, id_span.end - id_span.begin));
        std::int64_t feed_id = 0;
        auto [ptr, ec] =
            std::from_chars(id_text.data(), id_text.data() + id_text.size(), feed_id);
        if (ec != std::errc() || ptr != id_text.data() + id_text.size()) {
            ++rep.skipped_records;
            rep.warnings.push_back(path + ": record at byte offset " +
                                   std::to_string(start) +
                                   " has non-numeric <ParaRSSFeed_ID>; skipped");
            continue;
        }
        if (!seen_ids.insert(feed_id).second) {
            throw IngestError(path + ": duplicate feed_id " + std::to_string(feed_id));
        }

        BlogPost p;
        p.feed_id = feed_id;
        std::string sid = child_text(record, body_begin, "ID");
        if (!sid.empty()) {
            auto [sp, sec] = std::from_chars(sid.data(), sid.data() + sid.size(),
                                             p.source_id);
            if (sec != std::errc() || sp != sid.data() + sid.size()) {
                p.source_id = 0;
                rep.warnings.push_back(path + ": record " + std::to_string(feed_id) +
                                       ": non-numeric <ID> ignored");
            }
        }
        p.title = child_text(record, body_begin, "Title");
        p.body_raw.assign(record.substr(data_span.begin, data_span.end - data_span.begin));
        StripStats stats;
        p.body_clean = strip_markup(p.body_raw, &stats);
        if (stats.unterminated_tag) {
            rep.warnings.push_back(path + ": record " + std::to_string(feed_id) +
                                   ": unterminated tag in <Data>; remainder dropped");
        }
        p.blogger = child_text(record, body_begin, "Blogger");
        p.pub_date = child_text(record, body_begin, "Pub_Date");
        p.category = child_text(record, body_begin, "Category");
        posts.push_back(std::move(p));
    }
    return posts;
}

void save_corpus(const Corpus& corpus, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw StoreError("cannot write corpus file: " + path);
    if (!corpus.source_description.empty()) {
        out << json{{"source_description", corpus.source_description}}.dump() << '\n';
    }
    for (const BlogPost& p : corpus.posts) {
        out << post_to_json(p).dump() << '\n';
    }
    if (!out) throw StoreError("write failed: " + path);
}

Corpus load_corpus(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw StoreError("cannot read corpus file: " + path);
    Corpus corpus;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw StoreError(path + ":" + std::to_string(lineno) +
                             ": malformed record: " + e.what());
        }
        try {
            if (j.contains("source_description") && !j.contains("feed_id")) {
                corpus.source_description = j.at("source_description").get<std::string>();
                continue;
            }
            corpus.posts.push_back(post_from_json(j));
        } catch (const json::exception& e) {
            throw StoreError(path + ":" + std::to_string(lineno) +
                             ": malformed record: " + e.what());
        }
    }
    return corpus;
}

}  // namespace bpsm
