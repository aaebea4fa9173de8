#include "lexalign/matcher.hpp"

#include <optional>

namespace lexalign {

namespace {

// Earliest position where the phrase suffix literals[i..] can finish, given
// literals[i] sits at pos. Greedy per-literal placement is not enough: taking
// the nearest continuation can strand a later literal outside its gap window,
// so we search all placements and keep the minimum end.
std::optional<size_t> earliest_end(const std::vector<std::string>& literals, size_t i,
                                   size_t pos, const std::vector<std::string>& toks,
                                   int gap) {
    if (i + 1 == literals.size()) return pos;
    std::optional<size_t> best;
    const size_t limit = std::min(toks.size(), pos + 2 + static_cast<size_t>(gap));
    for (size_t q = pos + 1; q < limit; ++q) {
        if (toks[q] != literals[i + 1]) continue;
        const auto end = earliest_end(literals, i + 1, q, toks, gap);
        if (end && (!best || *end < *best)) best = end;
    }
    return best;
}

std::vector<Span> phrase_spans(const std::vector<std::string>& literals,
                               const std::vector<std::string>& toks, int gap) {
    std::vector<Span> spans;
    size_t pos = 0;
    while (pos < toks.size()) {
        // Among candidate starts, pick the match that completes first.
        std::optional<Span> best;
        for (size_t s = pos; s < toks.size(); ++s) {
            if (best && s > best->end) break; // later starts cannot finish sooner
            if (toks[s] != literals[0]) continue;
            const auto end = earliest_end(literals, 0, s, toks, gap);
            if (end && (!best || *end < best->end)) best = Span{s, *end};
        }
        if (!best) break;
        spans.push_back(*best);
        pos = best->end + 1;
    }
    return spans;
}

} // namespace

std::vector<Span> match_spans(const Clause& clause, const NormalizedSequence& seq, int gap) {
    std::vector<Span> spans;
    if (clause.literals.empty()) return spans;
    if (clause.kind == EntryKind::word) {
        for (size_t i = 0; i < seq.content_lemmas.size(); ++i) {
            if (seq.content_lemmas[i] == clause.literals[0]) spans.push_back(Span{i, i});
        }
        return spans;
    }
    return phrase_spans(clause.literals, seq.full_lemmas, gap);
}

long count_clause(const Clause& clause, const NormalizedSequence& seq, int gap) {
    return static_cast<long>(match_spans(clause, seq, gap).size());
}

MatchCounts count_all(const ConstraintSet& set, const NormalizedSequence& seq, int gap) {
    MatchCounts result;
    result.counts.reserve(set.clauses.size());
    for (const auto& clause : set.clauses) {
        result.counts.push_back(count_clause(clause, seq, gap));
    }
    if (set.above) {
        for (const auto& clause : set.above->clauses) {
            result.above_total += count_clause(clause, seq, gap);
        }
    }
    return result;
}

} // namespace lexalign
