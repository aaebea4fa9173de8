#include "doctest.h"

#include "lexalign/constraints.hpp"
#include "lexalign/error.hpp"
#include "lexalign/textio.hpp"
#include "lexalign/vocab.hpp"

#include "test_util.hpp"

#include <set>
#include <string>
#include <vector>

using namespace lexalign;

namespace {

VocabEntry word(const std::string& lemma, Level level) {
    return VocabEntry{lemma, {lemma}, level, EntryKind::word};
}

VocabEntry phrase(const std::vector<std::string>& lemmas, Level level) {
    std::string surface;
    for (const auto& l : lemmas) {
        if (!surface.empty()) surface += ' ';
        surface += l;
    }
    return VocabEntry{surface, lemmas, level, EntryKind::phrase};
}

} // namespace

TEST_CASE("a band takes exactly its two sublevels and stacks the rest above") {
    const std::vector<VocabEntry> entries = {
        word("cat", Level::A1),
        word("dog", Level::A2),
        word("journey", Level::B1),
    };
    const auto set = compile_constraints(entries, Band::A);
    REQUIRE(set.m() == 2);
    CHECK(set.band == Band::A);
    CHECK(set.clauses[0].literals == std::vector<std::string>{"cat"});
    CHECK(set.clauses[1].literals == std::vector<std::string>{"dog"});
    REQUIRE(set.above);
    REQUIRE(set.above->m() == 1);
    CHECK(set.above->clauses[0].literals == std::vector<std::string>{"journey"});
}

TEST_CASE("band C has no above-level companion") {
    const std::vector<VocabEntry> entries = {
        word("paradigm", Level::C1),
        word("notion", Level::C2),
    };
    const auto set = compile_constraints(entries, Band::C);
    CHECK(set.m() == 2);
    CHECK_FALSE(set.above);
}

TEST_CASE("band B sees only band C above it") {
    const std::vector<VocabEntry> entries = {
        word("cat", Level::A1),
        word("journey", Level::B1),
        word("paradigm", Level::C2),
    };
    const auto set = compile_constraints(entries, Band::B);
    REQUIRE(set.m() == 1);
    REQUIRE(set.above);
    REQUIRE(set.above->m() == 1);
    CHECK(set.above->clauses[0].literals == std::vector<std::string>{"paradigm"});
}

TEST_CASE("a band with no entries is unusable") {
    const std::vector<VocabEntry> entries = {word("cat", Level::A1)};
    CHECK_THROWS_AS(compile_constraints(entries, Band::B), DataError);
}

TEST_CASE("ids are dense and follow input order") {
    const std::vector<VocabEntry> entries = {
        word("cat", Level::A2),
        phrase({"a", "lot", "of"}, Level::A1),
        word("dog", Level::A1),
    };
    const auto set = compile_constraints(entries, Band::A);
    REQUIRE(set.m() == 3);
    for (int j = 0; j < set.m(); ++j) CHECK(set.clauses[j].id == j);
    CHECK(set.clauses[1].kind == EntryKind::phrase);
}

TEST_CASE("duplicate literal sequences never reach one set") {
    const std::vector<VocabEntry> entries = {
        word("cat", Level::A1),
        word("cat", Level::A2),
        word("dog", Level::A1),
    };
    const auto set = compile_constraints(entries, Band::A);
    std::set<std::vector<std::string>> seen;
    for (const auto& clause : set.clauses) CHECK(seen.insert(clause.literals).second);
    CHECK(set.m() == 2);
}

TEST_CASE("compiling all bands partitions the entries") {
    const auto entries = load_vocabulary(data_path("toy_vocab.tsv"));
    size_t covered = 0;
    for (Band band : kAllBands) {
        const auto set = compile_constraints(entries, band);
        covered += static_cast<size_t>(set.m());
        const auto range = sublevels(band);
        for (const auto& clause : set.clauses) {
            // every clause traces back to an entry inside the band
            bool found = false;
            for (const auto& e : entries) {
                if (e.lemmas == clause.literals) {
                    CHECK(e.level >= range.first);
                    CHECK(e.level <= range.second);
                    found = true;
                    break;
                }
            }
            CHECK(found);
        }
    }
    CHECK(covered == entries.size());
}

TEST_CASE("constraint artifacts round-trip byte-exactly") {
    const auto entries = load_vocabulary(data_path("toy_vocab.tsv"));
    for (Band band : kAllBands) {
        const auto set = compile_constraints(entries, band);
        const auto path = tmp_path("cons_roundtrip.txt");
        save_constraints(set, path);
        const std::string first = read_file(path);
        const auto loaded = load_constraints(path);
        CHECK(loaded.band == set.band);
        CHECK(loaded.m() == set.m());
        for (int j = 0; j < set.m(); ++j) {
            CHECK(loaded.clauses[j].literals == set.clauses[j].literals);
            CHECK(loaded.clauses[j].kind == set.clauses[j].kind);
            CHECK(loaded.clauses[j].id == set.clauses[j].id);
        }
        CHECK(static_cast<bool>(loaded.above) == static_cast<bool>(set.above));
        save_constraints(loaded, path);
        CHECK(read_file(path) == first);
    }
}

TEST_CASE("band A and B artifacts keep an above set, even an empty one") {
    const std::vector<VocabEntry> entries = {
        word("cat", Level::A1),
        word("dog", Level::A2),
    };
    const auto set = compile_constraints(entries, Band::A);
    REQUIRE(set.above);
    CHECK(set.above->m() == 0);
    const auto path = tmp_path("cons_empty_above.txt");
    save_constraints(set, path);
    const auto loaded = load_constraints(path);
    REQUIRE(loaded.above);
    CHECK(loaded.above->m() == 0);
}

TEST_CASE("recompiling unchanged input reproduces the identical artifact") {
    const auto entries = load_vocabulary(data_path("toy_vocab.tsv"));
    const auto a = constraints_to_text(compile_constraints(entries, Band::B));
    const auto b = constraints_to_text(compile_constraints(entries, Band::B));
    CHECK(a == b);
}

TEST_CASE("loading a non-constraint file fails cleanly") {
    const auto path = tmp_path("cons_bogus.txt");
    write_file(path, "not-a-constraint-file\n");
    CHECK_THROWS_AS(load_constraints(path), DataError);
}
