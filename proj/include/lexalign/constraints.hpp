#pragma once

#include "lexalign/levels.hpp"
#include "lexalign/vocab.hpp"

#include <memory>
#include <string>
#include <vector>

namespace lexalign {

// One disjunct of the DNF: a word (single literal) or a phrase (ordered
// literals, possibly discontinuous when matched).
struct Clause {
    int id = 0;
    std::vector<std::string> literals;
    EntryKind kind = EntryKind::word;
};

// The compiled constraint disjunction for one band.  `above` holds the
// companion set of all clauses from strictly higher bands and is null
// for band C.  Immutable after compilation.
struct ConstraintSet {
    Band band = Band::A;
    std::vector<Clause> clauses;
    std::shared_ptr<const ConstraintSet> above;

    int m() const { return static_cast<int>(clauses.size()); }
};

// Splits entries into the band's clauses (ids dense, input order) and
// the above-band companion set.  Throws DataError when the band has no
// entries.
ConstraintSet compile_constraints(const std::vector<VocabEntry>& entries, Band band);

// Versioned text artifact for a compiled set.  Round-trips byte-exact.
std::string constraints_to_text(const ConstraintSet& set);
void save_constraints(const ConstraintSet& set, const std::string& path);
ConstraintSet load_constraints(const std::string& path);

} // namespace lexalign

