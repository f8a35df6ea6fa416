#pragma once

// Lexical knowledge base: per (lemma, pos class) a synonym set and a
// hypernym-category set, loaded from a flat TSV format.

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace bpsm {

enum class PosClass { Noun, Verb, Other };

std::string_view to_string(PosClass pc);
bool pos_class_from_string(std::string_view text, PosClass* out);

struct LexEntry {
    std::string lemma;  // lowercase
    PosClass pos_class = PosClass::Other;
    std::set<std::string> synonyms;    // lowercase lemmas, never contains lemma
    std::set<std::string> categories;  // hypernym origins, lowercase
};

class Lexicon {
public:
    /// Merges duplicate (lemma, pos class) entries by set union.
    void add(LexEntry entry, std::vector<std::string>* warnings = nullptr);

    /// Stored entry, or an empty entry (with the query lemma lowercased)
    /// when absent. Total: never fails.
    LexEntry lookup(std::string_view lemma, PosClass pc) const;

    bool contains(std::string_view lemma, PosClass pc) const;

    /// Closes the synonym relation symmetrically within each pos class,
    /// creating entries for synonym targets that have none.
    void symmetrize();

    bool symmetrized() const { return symmetrized_; }
    std::size_t size() const { return entries_.size(); }

    /// Entries in deterministic (lemma, pos class) order.
    const std::map<std::pair<std::string, PosClass>, LexEntry>& entries() const {
        return entries_;
    }

private:
    std::map<std::pair<std::string, PosClass>, LexEntry> entries_;
    bool symmetrized_ = false;
};

struct LexiconReport {
    std::vector<std::string> warnings;
};

/// Loads the TSV lexicon format:
///   lemma<TAB>pos_class<TAB>syn1,syn2,...<TAB>cat1,cat2,...
/// Lines starting with '#' are comments; list fields may be empty.
/// Throws LexiconError (naming the line) on a wrong field count or an
/// unknown pos class token.
Lexicon load_lexicon(const std::string& path, bool symmetrize = true,
                     LexiconReport* report = nullptr);

}  // namespace bpsm
