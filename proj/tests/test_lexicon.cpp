#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "bpsm/errors.hpp"
#include "bpsm/lexicon.hpp"

#include "test_support.hpp"

using namespace bpsm;
using test_support::TempDir;
using test_support::write_file;

TEST_CASE("a society-style line loads with its synonym and category sets") {
    TempDir dir;
    std::string path = write_file(
        dir.file("lex.tsv"), "society\tNOUN\tclub,guild,lodge,order\tsocial_group\n");
    Lexicon lex = load_lexicon(path, /*symmetrize=*/false);
    LexEntry entry = lex.lookup("society", PosClass::Noun);
    CHECK(entry.synonyms == std::set<std::string>{"club", "guild", "lodge", "order"});
    CHECK(entry.categories == std::set<std::string>{"social_group"});
}

TEST_CASE("empty lexicon answers every lookup with an empty entry") {
    TempDir dir;
    std::string path = write_file(dir.file("empty.tsv"), "# nothing here\n\n");
    Lexicon lex = load_lexicon(path);
    CHECK(lex.size() == 0);
    LexEntry entry = lex.lookup("anything", PosClass::Verb);
    CHECK(entry.synonyms.empty());
    CHECK(entry.categories.empty());
    CHECK(entry.lemma == "anything");
}

TEST_CASE("symmetrization creates the reverse synonym link") {
    TempDir dir;
    std::string path = write_file(dir.file("court.tsv"), "court\tNOUN\ttribunal\t\n");
    Lexicon lex = load_lexicon(path, /*symmetrize=*/true);
    CHECK(lex.lookup("tribunal", PosClass::Noun).synonyms.count("court") == 1);
    CHECK(lex.symmetrized());

    Lexicon plain = load_lexicon(path, /*symmetrize=*/false);
    CHECK(plain.lookup("tribunal", PosClass::Noun).synonyms.empty());
    CHECK_FALSE(plain.symmetrized());
}

TEST_CASE("wrong field count names the line") {
    TempDir dir;
    std::string path =
        write_file(dir.file("bad.tsv"), "ok\tNOUN\t\t\nbroken\tNOUN\tonly-three\n");
    try {
        load_lexicon(path);
        FAIL("expected LexiconError");
    } catch (const LexiconError& e) {
        CHECK(std::string(e.what()).find(":2:") != std::string::npos);
    }
}

TEST_CASE("unknown pos class token is rejected") {
    TempDir dir;
    std::string path = write_file(dir.file("bad.tsv"), "word\tADJ\t\t\n");
    CHECK_THROWS_AS(load_lexicon(path), LexiconError);
}

TEST_CASE("missing lexicon file is an error") {
    CHECK_THROWS_AS(load_lexicon("/nonexistent/lexicon.tsv"), LexiconError);
}

TEST_CASE("duplicate entries merge by union with a warning") {
    TempDir dir;
    std::string path = write_file(dir.file("dup.tsv"),
                                  "court\tNOUN\ttribunal\tassembly\n"
                                  "court\tNOUN\tjudicature\tinstitution\n");
    LexiconReport report;
    Lexicon lex = load_lexicon(path, /*symmetrize=*/false, &report);
    CHECK(report.warnings.size() == 1);
    LexEntry entry = lex.lookup("court", PosClass::Noun);
    CHECK(entry.synonyms == std::set<std::string>{"tribunal", "judicature"});
    CHECK(entry.categories == std::set<std::string>{"assembly", "institution"});
}

TEST_CASE("lookups fold case") {
    TempDir dir;
    std::string path = write_file(dir.file("case.tsv"), "Court\tNOUN\tTribunal\t\n");
    Lexicon lex = load_lexicon(path, /*symmetrize=*/false);
    LexEntry upper = lex.lookup("COURT", PosClass::Noun);
    LexEntry lower = lex.lookup("court", PosClass::Noun);
    CHECK(upper.synonyms == lower.synonyms);
    CHECK(upper.synonyms.count("tribunal") == 1);
}

TEST_CASE("a lemma never lists itself as a synonym") {
    TempDir dir;
    std::string path =
        write_file(dir.file("self.tsv"), "day\tNOUN\tday,daytime,daylight\t\n");
    Lexicon lex = load_lexicon(path);
    CHECK(lex.lookup("day", PosClass::Noun).synonyms ==
          std::set<std::string>{"daytime", "daylight"});
}

TEST_CASE("pos classes are separate key spaces") {
    TempDir dir;
    std::string path = write_file(dir.file("two.tsv"),
                                  "attack\tNOUN\tassault\tconflict\n"
                                  "attack\tVERB\traid\t\n");
    Lexicon lex = load_lexicon(path, /*symmetrize=*/false);
    CHECK(lex.lookup("attack", PosClass::Noun).synonyms ==
          std::set<std::string>{"assault"});
    CHECK(lex.lookup("attack", PosClass::Verb).synonyms ==
          std::set<std::string>{"raid"});
    CHECK(lex.lookup("attack", PosClass::Other).synonyms.empty());
}

TEST_CASE("symmetric closure is sound on randomized lexicons") {
    std::mt19937 rng(42);
    for (int trial = 0; trial < 40; ++trial) {
        TempDir dir;
        std::string content;
        int n = std::uniform_int_distribution<int>(1, 12)(rng);
        for (int i = 0; i < n; ++i) {
            content += "w" + std::to_string(i) + "\tNOUN\t";
            int syns = std::uniform_int_distribution<int>(0, 3)(rng);
            for (int s = 0; s < syns; ++s) {
                if (s > 0) content += ",";
                content +=
                    "w" + std::to_string(std::uniform_int_distribution<int>(0, 15)(rng));
            }
            content += "\t\n";
        }
        Lexicon lex = load_lexicon(write_file(dir.file("lex.tsv"), content));
        for (const auto& [key, entry] : lex.entries()) {
            const std::string& lemma = key.first;
            for (const std::string& syn : entry.synonyms) {
                LexEntry other = lex.lookup(syn, key.second);
                CAPTURE(lemma);
                CAPTURE(syn);
                CHECK(other.synonyms.count(lemma) == 1);
            }
            CHECK(entry.synonyms.count(entry.lemma) == 0);
        }
    }
}

TEST_CASE("two loads of the same file agree") {
    Lexicon a = load_lexicon(test_support::data_file("mini_lexicon.tsv"));
    Lexicon b = load_lexicon(test_support::data_file("mini_lexicon.tsv"));
    REQUIRE(a.size() == b.size());
    auto it_a = a.entries().begin();
    auto it_b = b.entries().begin();
    for (; it_a != a.entries().end(); ++it_a, ++it_b) {
        CHECK(it_a->first == it_b->first);
        CHECK(it_a->second.synonyms == it_b->second.synonyms);
        CHECK(it_a->second.categories == it_b->second.categories);
    }
}

TEST_CASE("bundled lexicon carries the annotation-table rows") {
    Lexicon lex = load_lexicon(test_support::data_file("mini_lexicon.tsv"));
    LexEntry activists = lex.lookup("activists", PosClass::Noun);
    for (const char* syn : {"reformer", "reformist", "crusader"}) {
        CHECK(activists.synonyms.count(syn) == 1);
    }
    CHECK(lex.lookup("lawyer", PosClass::Noun).categories.count("professional") == 1);
    CHECK(lex.lookup("zzzz", PosClass::Noun).synonyms.empty());
}
