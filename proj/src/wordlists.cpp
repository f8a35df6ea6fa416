#include "bpsm/wordlists.hpp"

namespace bpsm {

namespace {

bool match_directional(const TaggedWord& a, const TaggedWord& b) {
    return a.lemma == b.lemma || a.synonyms.count(b.lemma) > 0 ||
           a.categories.count(b.lemma) > 0;
}

bool closed_class_tag(PosTag tag) {
    switch (tag) {
        case PosTag::DT:
        case PosTag::CC:
        case PosTag::IN:
        case PosTag::PRP:
        case PosTag::CD:
        case PosTag::POS:
            return true;
        default:
            return false;
    }
}

nlohmann::json list_to_json(const std::vector<TaggedWord>& list) {
    nlohmann::json out = nlohmann::json::array();
    for (const TaggedWord& w : list) {
        out.push_back(nlohmann::json{
            {"surface", w.surface},
            {"lemma", w.lemma},
            {"pos_tag", std::string(to_string(w.pos_tag))},
            {"synonyms", w.synonyms},
            {"categories", w.categories},
        });
    }
    return out;
}

}  // namespace

std::string_view to_string(MatchMode mode) {
    return mode == MatchMode::Verbatim ? "verbatim" : "symmetric";
}

bool match_mode_from_string(std::string_view text, MatchMode* out) {
    if (text == "verbatim") *out = MatchMode::Verbatim;
    else if (text == "symmetric") *out = MatchMode::Symmetric;
    else return false;
    return true;
}

bool words_match(const TaggedWord& a, const TaggedWord& b, MatchMode mode) {
    if (match_directional(a, b)) return true;
    return mode == MatchMode::Symmetric && match_directional(b, a);
}

void dedup_list(std::vector<TaggedWord>& list, MatchMode mode) {
    for (std::size_t i = 0; i < list.size(); ++i) {
        for (std::size_t j = i + 1; j < list.size();) {
            if (words_match(list[i], list[j], mode)) {
                list.erase(list.begin() + static_cast<std::ptrdiff_t>(j));
            } else {
                ++j;
            }
        }
    }
}

WordLists build_word_lists(const PostAnnotation& annotation, MatchMode mode,
                           const WordListOptions& options) {
    WordLists lists;
    lists.post_id = annotation.post_id;
    for (const Sentence& sentence : annotation.sentences) {
        for (const TaggedWord& word : sentence.words) {
            if (word.pos_tag == PosTag::PUNCT) continue;  // not a word
            if (options.drop_closed_class && closed_class_tag(word.pos_tag)) continue;
            switch (word.pos_class) {
                case PosClass::Noun: lists.nounlist.push_back(word); break;
                case PosClass::Verb: lists.verblist.push_back(word); break;
                case PosClass::Other: lists.commonlist.push_back(word); break;
            }
        }
    }
    dedup_list(lists.nounlist, mode);
    dedup_list(lists.verblist, mode);
    dedup_list(lists.commonlist, mode);
    lists.count_noun = static_cast<std::int64_t>(lists.nounlist.size());
    lists.count_verb = static_cast<std::int64_t>(lists.verblist.size());
    lists.count_common = static_cast<std::int64_t>(lists.commonlist.size());
    return lists;
}

nlohmann::json to_json(const WordLists& lists) {
    return nlohmann::json{
        {"post_id", lists.post_id},
        {"nounlist", list_to_json(lists.nounlist)},
        {"verblist", list_to_json(lists.verblist)},
        {"commonlist", list_to_json(lists.commonlist)},
        {"count_noun", lists.count_noun},
        {"count_verb", lists.count_verb},
        {"count_common", lists.count_common},
    };
}

}  // namespace bpsm
