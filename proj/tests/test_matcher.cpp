#include "doctest.h"

#include "lexalign/constraints.hpp"
#include "lexalign/matcher.hpp"
#include "lexalign/normalize.hpp"
#include "lexalign/textio.hpp"

#include "test_util.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <string>
#include <vector>

using namespace lexalign;

namespace {

const Normalizer& shipped() {
    static Normalizer n =
        Normalizer::from_files(data_path("stopwords.txt"), data_path("lemma_exceptions.tsv"));
    return n;
}

NormalizedSequence raw_seq(const std::vector<std::string>& tokens) {
    NormalizedSequence seq;
    seq.full_lemmas = tokens;
    seq.content_lemmas = tokens;
    seq.token_count = static_cast<long>(tokens.size());
    return seq;
}

Clause word_clause(const std::string& lemma, int id = 0) {
    return Clause{id, {lemma}, EntryKind::word};
}

Clause phrase_clause(const std::vector<std::string>& literals, int id = 0) {
    return Clause{id, literals, EntryKind::phrase};
}

// Every in-order placement of the literals with the gap bound respected.
void enumerate_placements(const std::vector<std::string>& lits,
                          const std::vector<std::string>& toks, int gap, size_t k, size_t last,
                          size_t begin, std::vector<Span>& out) {
    if (k == lits.size()) {
        out.push_back(Span{begin, last});
        return;
    }
    const size_t from = (k == 0) ? 0 : last + 1;
    const size_t to =
        (k == 0) ? toks.size()
                 : std::min(toks.size(), last + 2 + static_cast<size_t>(gap));
    for (size_t i = from; i < to; ++i) {
        if (toks[i] != lits[k]) continue;
        enumerate_placements(lits, toks, gap, k + 1, i, k == 0 ? i : begin, out);
    }
}

// Maximum number of pairwise-disjoint placements, by exhaustive DP over
// positions. Independent of the production matcher's greedy strategy.
long oracle_phrase_count(const std::vector<std::string>& lits,
                         const std::vector<std::string>& toks, int gap) {
    std::vector<Span> spans;
    enumerate_placements(lits, toks, gap, 0, 0, 0, spans);
    std::vector<long> memo(toks.size() + 2, -1);
    const std::function<long(size_t)> best = [&](size_t pos) -> long {
        if (pos >= toks.size()) return 0;
        long& m = memo[pos];
        if (m >= 0) return m;
        long value = best(pos + 1);
        for (const auto& s : spans) {
            if (s.begin == pos) value = std::max(value, 1 + best(s.end + 1));
        }
        m = value;
        return value;
    };
    return best(0);
}

long oracle_count(const Clause& clause, const NormalizedSequence& seq, int gap) {
    if (clause.kind == EntryKind::word) {
        long n = 0;
        for (const auto& lemma : seq.content_lemmas) {
            if (lemma == clause.literals[0]) ++n;
        }
        return n;
    }
    return oracle_phrase_count(clause.literals, seq.full_lemmas, gap);
}

} // namespace

TEST_CASE("a word clause counts every content occurrence") {
    const auto seq = shipped().normalize("the cat saw a cat");
    CHECK(count_clause(word_clause("cat"), seq) == 2);
    CHECK(count_clause(word_clause("see"), seq) == 1);
    CHECK(count_clause(word_clause("dog"), seq) == 0);
}

TEST_CASE("word clauses never match stopword lemmas") {
    // "the" survives only in full_lemmas, which word clauses do not see.
    const auto seq = shipped().normalize("the cat");
    CHECK(count_clause(word_clause("the"), seq) == 0);
}

TEST_CASE("a discontinuous phrase matches within the gap bound") {
    const auto seq = shipped().normalize("she looked it up");
    CHECK(count_clause(phrase_clause({"look", "up"}), seq, 3) == 1);
}

TEST_CASE("a phrase outside the gap bound does not match") {
    const auto seq = shipped().normalize("look at the sky up there");
    CHECK(count_clause(phrase_clause({"look", "up"}), seq, 1) == 0);
    CHECK(count_clause(phrase_clause({"look", "up"}), seq, 3) == 1);
}

TEST_CASE("phrases match across stopwords on the full lemma stream") {
    const auto seq = shipped().normalize("they have a lot of books");
    CHECK(count_clause(phrase_clause({"a", "lot", "of"}), seq, 0) == 1);
}

TEST_CASE("adjacent literals mean gap zero") {
    const auto seq = raw_seq({"a", "b", "a", "x", "b"});
    CHECK(count_clause(phrase_clause({"a", "b"}), seq, 0) == 1);
    CHECK(count_clause(phrase_clause({"a", "b"}), seq, 1) == 2);
}

TEST_CASE("earliest-end packing finds the maximal disjoint set") {
    // Pairing a@0 with b@3 would leave room for nothing else; taking the
    // earliest completion (0,1) then (2,3) packs two matches.
    const auto seq = raw_seq({"a", "b", "a", "b"});
    CHECK(count_clause(phrase_clause({"a", "b"}), seq, 3) == 2);
}

TEST_CASE("per-literal greed would miss matches the span search finds") {
    // From a@0, the nearest continuation c@1 strands d@4 three tokens away;
    // the only full gap-1 match threads c@2, d@4, which a matcher that
    // commits to the earliest position per literal never reaches.
    const auto seq = raw_seq({"a", "c", "c", "x", "d"});
    CHECK(count_clause(phrase_clause({"a", "c", "d"}), seq, 1) == 1);
    CHECK(count_clause(phrase_clause({"a", "c", "d"}), seq, 0) == 0);
}

TEST_CASE("matched spans are disjoint and ordered") {
    const auto seq = raw_seq({"a", "a", "b", "a", "b", "b", "a", "b"});
    const auto spans = match_spans(phrase_clause({"a", "b"}), seq, 2);
    for (size_t i = 1; i < spans.size(); ++i) {
        CHECK(spans[i - 1].end < spans[i].begin);
    }
    for (const auto& s : spans) {
        CHECK(s.begin <= s.end);
        CHECK(seq.full_lemmas[s.begin] == "a");
        CHECK(seq.full_lemmas[s.end] == "b");
    }
}

TEST_CASE("count_all mirrors per-clause counts and totals the above set") {
    const auto above = std::make_shared<ConstraintSet>();
    above->band = Band::B;
    above->clauses = {word_clause("journey", 0)};
    ConstraintSet set;
    set.band = Band::A;
    set.clauses = {word_clause("cat", 0), phrase_clause({"look", "up"}, 1)};
    set.above = above;

    const auto seq = shipped().normalize("the cat looked the journey up");
    const auto counts = count_all(set, seq, 3);
    REQUIRE(counts.counts.size() == 2);
    CHECK(counts.counts[0] == count_clause(set.clauses[0], seq, 3));
    CHECK(counts.counts[1] == count_clause(set.clauses[1], seq, 3));
    CHECK(counts.total() == counts.counts[0] + counts.counts[1]);
    CHECK(counts.above_total == 1);
}

TEST_CASE("a sequence matching nothing yields zeros") {
    ConstraintSet set;
    set.band = Band::A;
    set.clauses = {word_clause("cat", 0), word_clause("dog", 1)};
    const auto counts = count_all(set, raw_seq({"x", "y", "z"}), 3);
    CHECK(counts.counts == std::vector<long>{0, 0});
    CHECK(counts.above_total == 0);
    CHECK(counts.total() == 0);
}

TEST_CASE("matcher equals the exhaustive oracle on randomized instances") {
    const std::vector<std::string> alphabet = {"a", "b", "c", "d", "e"};
    SplitRng rng(20240817);
    for (int trial = 0; trial < 500; ++trial) {
        const size_t len = 1 + rng.index(12);
        std::vector<std::string> toks;
        for (size_t i = 0; i < len; ++i) toks.push_back(alphabet[rng.index(alphabet.size())]);
        const auto seq = raw_seq(toks);
        const int gap = static_cast<int>(rng.index(5));

        Clause clause;
        const size_t lits = 1 + rng.index(3);
        clause.kind = lits == 1 ? EntryKind::word : EntryKind::phrase;
        for (size_t i = 0; i < lits; ++i) {
            clause.literals.push_back(alphabet[rng.index(alphabet.size())]);
        }

        const long got = count_clause(clause, seq, gap);
        const long want = oracle_count(clause, seq, gap);
        if (got != want) {
            CAPTURE(trial);
            CAPTURE(gap);
        }
        REQUIRE(got == want);
    }
}

TEST_CASE("appending tokens never decreases a count") {
    const std::vector<std::string> alphabet = {"a", "b", "c"};
    SplitRng rng(911);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<std::string> toks;
        const size_t len = 1 + rng.index(8);
        for (size_t i = 0; i < len; ++i) toks.push_back(alphabet[rng.index(alphabet.size())]);
        Clause clause = phrase_clause({alphabet[rng.index(3)], alphabet[rng.index(3)]});
        const int gap = static_cast<int>(rng.index(4));

        const long before = count_clause(clause, raw_seq(toks), gap);
        const size_t extra = 1 + rng.index(3);
        for (size_t i = 0; i < extra; ++i) toks.push_back(alphabet[rng.index(alphabet.size())]);
        const long after = count_clause(clause, raw_seq(toks), gap);
        CHECK(after >= before);
    }
}

TEST_CASE("identical inputs always produce identical counts") {
    const auto seq = shipped().normalize("the cat looked a lot of cats up at night");
    const Clause clauses[] = {word_clause("cat"), phrase_clause({"a", "lot", "of"}),
                              phrase_clause({"look", "up"})};
    for (const auto& clause : clauses) {
        CHECK(count_clause(clause, seq) == count_clause(clause, seq));
    }
}
