#include "bpsm/lexicon.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include "bpsm/errors.hpp"

namespace bpsm {

namespace {

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

std::set<std::string> split_list(std::string_view field) {
    std::set<std::string> out;
    std::size_t start = 0;
    while (start <= field.size()) {
        std::size_t comma = field.find(',', start);
        std::string_view item = comma == std::string_view::npos
                                    ? field.substr(start)
                                    : field.substr(start, comma - start);
        item = trim(item);
        if (!item.empty()) out.insert(lower(item));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

}  // namespace

std::string_view to_string(PosClass pc) {
    switch (pc) {
        case PosClass::Noun: return "NOUN";
        case PosClass::Verb: return "VERB";
        case PosClass::Other: return "OTHER";
    }
    return "OTHER";
}

bool pos_class_from_string(std::string_view text, PosClass* out) {
    if (text == "NOUN") *out = PosClass::Noun;
    else if (text == "VERB") *out = PosClass::Verb;
    else if (text == "OTHER") *out = PosClass::Other;
    else return false;
    return true;
}

void Lexicon::add(LexEntry entry, std::vector<std::string>* warnings) {
    entry.lemma = lower(entry.lemma);
    std::set<std::string> syns;
    for (const std::string& s : entry.synonyms) {
        std::string l = lower(s);
        if (l != entry.lemma) syns.insert(std::move(l));
    }
    entry.synonyms = std::move(syns);
    std::set<std::string> cats;
    for (const std::string& c : entry.categories) cats.insert(lower(c));
    entry.categories = std::move(cats);

    auto key = std::make_pair(entry.lemma, entry.pos_class);
    auto it = entries_.find(key);
    if (it == entries_.end()) {
        entries_.emplace(std::move(key), std::move(entry));
        return;
    }
    if (warnings) {
        warnings->push_back("duplicate entry " + entry.lemma + "/" +
                            std::string(to_string(entry.pos_class)) +
                            ": sets merged");
    }
    it->second.synonyms.insert(entry.synonyms.begin(), entry.synonyms.end());
    it->second.categories.insert(entry.categories.begin(), entry.categories.end());
    it->second.synonyms.erase(it->second.lemma);
}

LexEntry Lexicon::lookup(std::string_view lemma, PosClass pc) const {
    std::string key = lower(lemma);
    auto it = entries_.find(std::make_pair(key, pc));
    if (it != entries_.end()) return it->second;
    LexEntry empty;
    empty.lemma = std::move(key);
    empty.pos_class = pc;
    return empty;
}

bool Lexicon::contains(std::string_view lemma, PosClass pc) const {
    return entries_.count(std::make_pair(lower(lemma), pc)) > 0;
}

void Lexicon::symmetrize() {
    std::vector<std::pair<std::pair<std::string, PosClass>, std::string>> edges;
    for (const auto& [key, entry] : entries_) {
        for (const std::string& syn : entry.synonyms) {
            edges.emplace_back(std::make_pair(syn, key.second), key.first);
        }
    }
    for (auto& [target_key, source] : edges) {
        auto it = entries_.find(target_key);
        if (it == entries_.end()) {
            LexEntry fresh;
            fresh.lemma = target_key.first;
            fresh.pos_class = target_key.second;
            it = entries_.emplace(target_key, std::move(fresh)).first;
        }
        if (source != it->second.lemma) it->second.synonyms.insert(source);
    }
    symmetrized_ = true;
}

Lexicon load_lexicon(const std::string& path, bool symmetrize,
                     LexiconReport* report) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw LexiconError("cannot open lexicon file: " + path);

    Lexicon lex;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string_view view = line;
        if (trim(view).empty() || trim(view).front() == '#') continue;

        std::vector<std::string_view> fields;
        std::size_t start = 0;
        for (;;) {
            std::size_t tab = view.find('\t', start);
            if (tab == std::string_view::npos) {
                fields.push_back(view.substr(start));
                break;
            }
            fields.push_back(view.substr(start, tab - start));
            start = tab + 1;
        }
        if (fields.size() != 4) {
            throw LexiconError(path + ":" + std::to_string(lineno) +
                               ": expected 4 tab-separated fields, got " +
                               std::to_string(fields.size()));
        }
        LexEntry entry;
        entry.lemma = std::string(trim(fields[0]));
        if (entry.lemma.empty()) {
            throw LexiconError(path + ":" + std::to_string(lineno) + ": empty lemma");
        }
        if (!pos_class_from_string(trim(fields[1]), &entry.pos_class)) {
            throw LexiconError(path + ":" + std::to_string(lineno) +
                               ": unknown pos class '" + std::string(trim(fields[1])) +
                               "'");
        }
        entry.synonyms = split_list(fields[2]);
        entry.categories = split_list(fields[3]);
        lex.add(std::move(entry), report ? &report->warnings : nullptr);
    }
    if (symmetrize) lex.symmetrize();
    return lex;
}

}  // namespace bpsm
