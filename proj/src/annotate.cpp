#include "bpsm/annotate.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <unordered_map>

#include "json.hpp"

namespace bpsm {

namespace {

bool is_word_byte(unsigned char c) {
    return std::isalnum(c) || c >= 0x80;
}

bool is_punct_byte(unsigned char c) {
    return !is_word_byte(c);
}

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
        return static_cast<char>(std::tolower(c));
    });
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

// Abbreviations whose trailing period does not end a sentence.
constexpr std::array<std::string_view, 10> kAbbreviations = {
    "mr", "mrs", "dr", "st", "vs", "etc", "e.g", "i.e", "u.s", "no",
};

bool ends_with_abbreviation(std::string_view text, std::size_t period_at) {
    // Scan back over word characters and internal periods to find the token
    // the period terminates ("e.g" and "u.s" keep their inner dot).
    std::size_t start = period_at;
    while (start > 0) {
        unsigned char c = static_cast<unsigned char>(text[start - 1]);
        if (is_word_byte(c) || c == '.') --start;
        else break;
    }
    if (start == period_at) return false;
    std::string token = lower(text.substr(start, period_at - start));
    return std::find(kAbbreviations.begin(), kAbbreviations.end(), token) !=
           kAbbreviations.end();
}

bool ends_with(std::string_view s, std::string_view suffix) {
    return s.size() >= suffix.size() &&
           s.substr(s.size() - suffix.size()) == suffix;
}

// Candidate stems for plural nouns, most specific first.
std::vector<std::string> plural_stems(const std::string& w) {
    std::vector<std::string> out;
    if (ends_with(w, "ies") && w.size() > 3) out.push_back(w.substr(0, w.size() - 3) + "y");
    if (ends_with(w, "es") && w.size() > 2) out.push_back(w.substr(0, w.size() - 2));
    if (ends_with(w, "s") && w.size() > 1) out.push_back(w.substr(0, w.size() - 1));
    return out;
}

// Candidate stems for -ed / -ing verb forms ("celebrated" -> "celebrate",
// "walked" -> "walk", "stopped" -> "stop", "running" -> "run").
std::vector<std::string> verb_stems(const std::string& w) {
    std::vector<std::string> out;
    if (ends_with(w, "ed") && w.size() > 3) {
        out.push_back(w.substr(0, w.size() - 1));  // drop "d"
        out.push_back(w.substr(0, w.size() - 2));  // drop "ed"
        if (w.size() > 4 && w[w.size() - 3] == w[w.size() - 4])
            out.push_back(w.substr(0, w.size() - 3));  // undouble consonant
    }
    if (ends_with(w, "ing") && w.size() > 4) {
        out.push_back(w.substr(0, w.size() - 3));
        out.push_back(w.substr(0, w.size() - 3) + "e");
        if (w.size() > 5 && w[w.size() - 4] == w[w.size() - 5])
            out.push_back(w.substr(0, w.size() - 4));
    }
    return out;
}

// First stem that is a lexicon key of the class, empty when none.
std::string stem_in_lexicon(const std::vector<std::string>& stems,
                            const Lexicon& lex, PosClass pc) {
    for (const std::string& s : stems) {
        if (!s.empty() && lex.contains(s, pc)) return s;
    }
    return {};
}

bool is_punct_token(std::string_view tok) {
    for (char c : tok) {
        if (is_word_byte(static_cast<unsigned char>(c))) return false;
    }
    return !tok.empty();
}

bool is_numeral(std::string_view tok) {
    bool digit = false;
    for (char c : tok) {
        unsigned char u = static_cast<unsigned char>(c);
        if (std::isdigit(u)) {
            digit = true;
            continue;
        }
        if (u == '.' || u == ',' || u == '-' || u == '+' || u == ':' || u == '/' ||
            u == '%')
            continue;
        return false;
    }
    return digit;
}

const std::unordered_map<std::string_view, PosTag>& closed_class_table() {
    static const std::unordered_map<std::string_view, PosTag> table = {
        {"the", PosTag::DT}, {"a", PosTag::DT},   {"an", PosTag::DT},
        {"and", PosTag::CC}, {"or", PosTag::CC},  {"but", PosTag::CC},
        {"of", PosTag::IN},  {"in", PosTag::IN},  {"on", PosTag::IN},
        {"as", PosTag::IN},  {"for", PosTag::IN}, {"with", PosTag::IN},
        {"at", PosTag::IN},  {"by", PosTag::IN},  {"to", PosTag::IN},
        {"he", PosTag::PRP}, {"she", PosTag::PRP}, {"it", PosTag::PRP},
        {"they", PosTag::PRP}, {"we", PosTag::PRP}, {"i", PosTag::PRP},
        {"you", PosTag::PRP},
    };
    return table;
}

bool noun_context(PosTag prev) {
    return prev == PosTag::PRP || prev == PosTag::NNP || prev == PosTag::NNS ||
           prev == PosTag::NN;
}

}  // namespace

std::string_view to_string(PosTag tag) {
    switch (tag) {
        case PosTag::NNP: return "NNP";
        case PosTag::NN: return "NN";
        case PosTag::NNS: return "NNS";
        case PosTag::VBP: return "VBP";
        case PosTag::VBG: return "VBG";
        case PosTag::VB: return "VB";
        case PosTag::VBD: return "VBD";
        case PosTag::VBZ: return "VBZ";
        case PosTag::VBN: return "VBN";
        case PosTag::DT: return "DT";
        case PosTag::IN: return "IN";
        case PosTag::JJ: return "JJ";
        case PosTag::CC: return "CC";
        case PosTag::PRP: return "PRP";
        case PosTag::CD: return "CD";
        case PosTag::POS: return "POS";
        case PosTag::PUNCT: return "PUNCT";
    }
    return "NN";
}

PosClass pos_class_of(PosTag tag, bool extended_verbs) {
    switch (tag) {
        case PosTag::NNP:
        case PosTag::NN:
        case PosTag::NNS:
            return PosClass::Noun;
        case PosTag::VBP:
        case PosTag::VBG:
        case PosTag::VB:
        case PosTag::VBD:
            return PosClass::Verb;
        case PosTag::VBZ:
        case PosTag::VBN:
            return extended_verbs ? PosClass::Verb : PosClass::Other;
        default:
            return PosClass::Other;
    }
}

std::vector<Sentence> split_sentences(std::string_view text) {
    std::vector<Sentence> out;
    std::string current;
    auto flush = [&] {
        std::string_view t = trim(current);
        if (!t.empty()) {
            Sentence s;
            s.ordinal = static_cast<int>(out.size()) + 1;
            s.text = std::string(t);
            out.push_back(std::move(s));
        }
        current.clear();
    };
    const std::size_t n = text.size();
    for (std::size_t i = 0; i < n; ++i) {
        char c = text[i];
        if (c == '.' || c == '!' || c == '?') {
            bool at_end = i + 1 == n;
            bool ws_next =
                !at_end && std::isspace(static_cast<unsigned char>(text[i + 1]));
            if (at_end || ws_next) {
                bool guarded = false;
                if (c == '.') {
                    bool digit_before =
                        i > 0 && std::isdigit(static_cast<unsigned char>(text[i - 1]));
                    // "between digits" looks across the whitespace that made
                    // this a candidate in the first place.
                    std::size_t after = i + 1;
                    while (after < n &&
                           std::isspace(static_cast<unsigned char>(text[after])))
                        ++after;
                    bool digit_after =
                        after < n && std::isdigit(static_cast<unsigned char>(text[after]));
                    guarded = (digit_before && digit_after) ||
                              ends_with_abbreviation(text, i);
                }
                if (!guarded) {
                    flush();
                    continue;  // delimiter excluded from sentence text
                }
            }
        }
        current += c;
    }
    flush();
    return out;
}

std::vector<std::string> tokenize(std::string_view sentence_text) {
    std::vector<std::string> tokens;
    std::size_t i = 0;
    const std::size_t n = sentence_text.size();
    while (i < n) {
        if (std::isspace(static_cast<unsigned char>(sentence_text[i]))) {
            ++i;
            continue;
        }
        std::size_t start = i;
        while (i < n && !std::isspace(static_cast<unsigned char>(sentence_text[i])))
            ++i;
        std::string_view chunk = sentence_text.substr(start, i - start);

        std::size_t b = 0;
        std::size_t e = chunk.size();
        while (b < e && is_punct_byte(static_cast<unsigned char>(chunk[b]))) {
            tokens.emplace_back(1, chunk[b]);
            ++b;
        }
        std::vector<char> trailing;
        while (e > b && is_punct_byte(static_cast<unsigned char>(chunk[e - 1]))) {
            trailing.push_back(chunk[e - 1]);
            --e;
        }
        std::string_view core = chunk.substr(b, e - b);
        if (!core.empty()) {
            char last = static_cast<char>(
                std::tolower(static_cast<unsigned char>(core.back())));
            if (core.size() > 2 && last == 's' && core[core.size() - 2] == '\'') {
                tokens.emplace_back(core.substr(0, core.size() - 2));
                tokens.emplace_back(core.substr(core.size() - 2));
            } else {
                tokens.emplace_back(core);
            }
        }
        for (auto it = trailing.rbegin(); it != trailing.rend(); ++it) {
            tokens.emplace_back(1, *it);
        }
    }
    return tokens;
}

std::vector<TaggedWord> tag_tokens(const std::vector<std::string>& tokens,
                                   const Lexicon& lexicon, bool extended_verbs) {
    std::vector<TaggedWord> words;
    words.reserve(tokens.size());
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const std::string& tok = tokens[i];
        std::string low = lower(tok);
        TaggedWord w;
        w.surface = tok;
        w.lemma = low;

        PosTag prev = i > 0 ? words[i - 1].pos_tag : PosTag::PUNCT;
        bool mid_sentence = i > 0;
        bool capitalized =
            !tok.empty() && std::isupper(static_cast<unsigned char>(tok[0]));

        auto assign = [&](PosTag tag) { w.pos_tag = tag; };

        if (is_punct_token(tok)) {
            assign(PosTag::PUNCT);
        } else if (low == "'s") {
            assign(PosTag::POS);
        } else if (auto cc = closed_class_table().find(low);
                   cc != closed_class_table().end()) {
            assign(cc->second);
        } else if (is_numeral(tok)) {
            assign(PosTag::CD);
        } else {
            bool verb_hit = lexicon.contains(low, PosClass::Verb) ||
                            !stem_in_lexicon(verb_stems(low), lexicon,
                                             PosClass::Verb).empty();
            bool noun_hit = lexicon.contains(low, PosClass::Noun) ||
                            !stem_in_lexicon(plural_stems(low), lexicon,
                                             PosClass::Noun).empty();
            if (verb_hit && i > 0 && noun_context(prev)) {
                if (ends_with(low, "ing")) assign(PosTag::VBG);
                else if (ends_with(low, "ed")) assign(PosTag::VBD);
                else if (prev == PosTag::PRP || prev == PosTag::NNS) assign(PosTag::VBP);
                else assign(PosTag::VB);
            } else if (noun_hit) {
                if (capitalized && mid_sentence) assign(PosTag::NNP);
                else if (ends_with(low, "s")) assign(PosTag::NNS);
                else assign(PosTag::NN);
            } else if (ends_with(low, "ing") && low.size() > 4) {
                assign(PosTag::VBG);
            } else if (ends_with(low, "ed") && low.size() > 3) {
                assign(PosTag::VBD);
            } else if (ends_with(low, "s") &&
                       !stem_in_lexicon(plural_stems(low), lexicon,
                                        PosClass::Noun).empty()) {
                assign(PosTag::NNS);
            } else {
                assign(PosTag::NN);
            }
        }

        w.pos_class = pos_class_of(w.pos_tag, extended_verbs);

        // Lemma: suffix-stripped form when the stem is a lexicon key of the
        // word's own class, else the lowercase surface.
        if (w.pos_class == PosClass::Noun) {
            std::string stem = stem_in_lexicon(plural_stems(low), lexicon,
                                               PosClass::Noun);
            if (!stem.empty()) w.lemma = stem;
        } else if (w.pos_class == PosClass::Verb) {
            std::string stem = stem_in_lexicon(verb_stems(low), lexicon,
                                               PosClass::Verb);
            if (!stem.empty()) w.lemma = stem;
        }

        LexEntry entry = lexicon.lookup(w.lemma, w.pos_class);
        w.synonyms = std::move(entry.synonyms);
        w.categories = std::move(entry.categories);
        words.push_back(std::move(w));
    }
    return words;
}

PostAnnotation annotate_post(const BlogPost& post, const Lexicon& lexicon,
                             const AnnotateOptions& options) {
    PostAnnotation ann;
    ann.post_id = post.feed_id;

    if (options.include_title) {
        std::string_view title = trim(post.title);
        if (!title.empty()) {
            Sentence s;
            s.text = std::string(title);
            ann.sentences.push_back(std::move(s));
        }
    }
    for (Sentence& s : split_sentences(post.body_clean)) {
        ann.sentences.push_back(std::move(s));
    }
    for (std::size_t i = 0; i < ann.sentences.size(); ++i) {
        Sentence& s = ann.sentences[i];
        s.ordinal = static_cast<int>(i) + 1;
        s.words = tag_tokens(tokenize(s.text), lexicon, options.extended_verbs);
    }
    ann.count_sentences = static_cast<int>(ann.sentences.size());
    return ann;
}

std::string annotation_to_jsonl(const PostAnnotation& annotation) {
    using json = nlohmann::json;
    std::string out;
    for (const Sentence& s : annotation.sentences) {
        json words = json::array();
        for (const TaggedWord& w : s.words) {
            words.push_back(json{
                {"surface", w.surface},
                {"lemma", w.lemma},
                {"pos_tag", std::string(to_string(w.pos_tag))},
                {"synonyms", w.synonyms},
                {"categories", w.categories},
            });
        }
        json line{
            {"post_id", annotation.post_id},
            {"ordinal", s.ordinal},
            {"text", s.text},
            {"words", words},
        };
        out += line.dump();
        out += '\n';
    }
    return out;
}

}  // namespace bpsm
