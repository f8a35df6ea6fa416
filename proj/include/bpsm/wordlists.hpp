#pragma once

// Per-post distinct noun/verb/common word lists and the word-match
// predicate shared with the similarity counting loops.

#include <cstdint>
#include <vector>

#include "json.hpp"

#include "bpsm/annotate.hpp"

namespace bpsm {

enum class MatchMode {
    Verbatim,   // directional: a's lists are probed for b
    Symmetric,  // default: match in either direction
};

std::string_view to_string(MatchMode mode);
bool match_mode_from_string(std::string_view text, MatchMode* out);

struct WordLists {
    std::int64_t post_id = 0;
    std::vector<TaggedWord> nounlist;
    std::vector<TaggedWord> verblist;
    std::vector<TaggedWord> commonlist;
    std::int64_t count_noun = 0;
    std::int64_t count_verb = 0;
    std::int64_t count_common = 0;
};

struct WordListOptions {
    bool drop_closed_class = false;  // drop DT/CC/IN/PRP/CD/POS words
};

/// True when the words match exactly (same lemma), through a's synonym
/// list, or through a's category list; Symmetric mode also tries the
/// reversed direction.
bool words_match(const TaggedWord& a, const TaggedWord& b, MatchMode mode);

/// Removes every later element that matches an earlier one (first
/// occurrence wins, survivor order preserved). Applying it twice equals
/// applying it once.
void dedup_list(std::vector<TaggedWord>& list, MatchMode mode);

/// Two passes: collect words per pos class in sentence order (punctuation
/// excluded), then dedup each list under the match mode.
WordLists build_word_lists(const PostAnnotation& annotation, MatchMode mode,
                           const WordListOptions& options = {});

nlohmann::json to_json(const WordLists& lists);

}  // namespace bpsm
