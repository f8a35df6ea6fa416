#pragma once

// Independent transcription of the similarity procedure, used as the test
// oracle. Deliberately shares no code with the library: its own word type,
// its own tag routing, its own match predicate and its own per-pair list
// construction (rebuilt from the sentences for every pair, with no reuse).

#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace naive {

struct Word {
    std::string lemma;
    std::string pos_tag;  // tag name, e.g. "NNS"
    std::set<std::string> synonyms;
    std::set<std::string> categories;
};

struct Post {
    std::int64_t id = 0;
    std::vector<std::vector<Word>> sentences;
};

bool match(const Word& a, const Word& b, bool symmetric);

struct Lists {
    std::vector<Word> nouns;
    std::vector<Word> verbs;
    std::vector<Word> common;
};

Lists distinct_lists(const Post& post, bool symmetric);

double pair_measure(const Post& a, const Post& b, bool symmetric);

/// Full pairwise matrix, diagonal 1.
std::vector<std::vector<double>> matrix(const std::vector<Post>& posts,
                                        bool symmetric);

}  // namespace naive
