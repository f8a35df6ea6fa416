#pragma once

// Sentence splitting, tokenization and the deterministic rule-based POS
// tagger that feeds the word-list construction.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "bpsm/feed.hpp"
#include "bpsm/lexicon.hpp"

namespace bpsm {

enum class PosTag {
    NNP,  // proper noun, singular
    NN,   // noun, singular or mass
    NNS,  // noun, plural
    VBP,  // verb, non-3rd person singular present
    VBG,  // verb, gerund / present participle
    VB,   // verb, base form
    VBD,  // verb, past tense
    VBZ,  // verb, 3rd person singular present (never emitted; grouped OTHER)
    VBN,  // verb, past participle (never emitted; grouped OTHER)
    DT,
    IN,
    JJ,
    CC,
    PRP,
    CD,
    POS,   // possessive clitic 's
    PUNCT,
};

std::string_view to_string(PosTag tag);

/// NNP/NN/NNS -> Noun; VBP/VBG/VB/VBD -> Verb; everything else -> Other.
/// With extended_verbs, VBZ and VBN also map to Verb.
PosClass pos_class_of(PosTag tag, bool extended_verbs = false);

struct TaggedWord {
    std::string surface;
    std::string lemma;  // lowercase, suffix-stripped when the stem is a lexicon key
    PosTag pos_tag = PosTag::NN;
    PosClass pos_class = PosClass::Noun;
    std::set<std::string> synonyms;
    std::set<std::string> categories;

    bool operator==(const TaggedWord&) const = default;
};

struct Sentence {
    int ordinal = 0;  // 1-based within the post
    std::string text;
    std::vector<TaggedWord> words;

    bool operator==(const Sentence&) const = default;
};

struct PostAnnotation {
    std::int64_t post_id = 0;  // == feed_id
    std::vector<Sentence> sentences;
    int count_sentences = 0;

    bool operator==(const PostAnnotation&) const = default;
};

struct AnnotateOptions {
    bool include_title = true;   // title becomes sentence 1, unsplit
    bool extended_verbs = false;  // add VBZ/VBN to the Verb class
};

/// Splits at '.', '!' or '?' followed by whitespace or end of text, except
/// after a known abbreviation or between digits. Delimiters are excluded
/// from sentence texts; empty fragments are dropped. Word vectors are left
/// empty.
std::vector<Sentence> split_sentences(std::string_view text);

/// Whitespace split with leading/trailing punctuation peeled off as single-
/// character tokens; internal apostrophes and hyphens stay, but the
/// possessive clitic splits ("court's" -> "court", "'s").
std::vector<std::string> tokenize(std::string_view sentence_text);

/// Deterministic rule cascade; total (every token gets exactly one tag).
std::vector<TaggedWord> tag_tokens(const std::vector<std::string>& tokens,
                                   const Lexicon& lexicon,
                                   bool extended_verbs = false);

PostAnnotation annotate_post(const BlogPost& post, const Lexicon& lexicon,
                             const AnnotateOptions& options = {});

/// JSON-lines dump, one sentence per line, mirroring the annotation table
/// columns (surface, lemma, pos_tag, synonyms, categories).
std::string annotation_to_jsonl(const PostAnnotation& annotation);

}  // namespace bpsm
