#pragma once

#include "lexalign/constraints.hpp"
#include "lexalign/normalize.hpp"

#include <cstddef>
#include <vector>

namespace lexalign {

// Max tokens allowed between consecutive phrase literals.
inline constexpr int kDefaultPhraseGap = 3;

// Inclusive token span. Word clauses index content_lemmas, phrase clauses full_lemmas.
struct Span {
    size_t begin = 0;
    size_t end = 0;
};

// Disjoint matches of one clause, greedy left-to-right, earliest completion first.
std::vector<Span> match_spans(const Clause& clause, const NormalizedSequence& seq,
                              int gap = kDefaultPhraseGap);

long count_clause(const Clause& clause, const NormalizedSequence& seq,
                  int gap = kDefaultPhraseGap);

struct MatchCounts {
    std::vector<long> counts;  // indexed by clause id
    long above_total = 0;

    long total() const {
        long sum = 0;
        for (long c : counts) sum += c;
        return sum;
    }
};

MatchCounts count_all(const ConstraintSet& set, const NormalizedSequence& seq,
                      int gap = kDefaultPhraseGap);

} // namespace lexalign
