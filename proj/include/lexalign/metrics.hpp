#pragma once

#include "lexalign/features.hpp"
#include "lexalign/matcher.hpp"
#include "lexalign/normalize.hpp"

#include <array>
#include <string>
#include <vector>

namespace lexalign {

// Matched-clause count over raw generated token total.
double frequency(const std::vector<NormalizedSequence>& outputs, const ConstraintSet& set,
                 int gap = kDefaultPhraseGap);

// Fraction of the set's clauses matched at least once anywhere in outputs.
double diversity(const std::vector<NormalizedSequence>& outputs, const ConstraintSet& set,
                 int gap = kDefaultPhraseGap);

// Total clause matches (the quantity the training maximizes).
long objective(const std::vector<NormalizedSequence>& outputs, const ConstraintSet& set,
               int gap = kDefaultPhraseGap);

struct EvalReport {
    std::array<double, 3> frequency{};   // indexed by band_index
    std::array<double, 3> diversity{};
    std::array<long, 3> objective_counts{};
    Band target = Band::A;
    long objective_total = 0;            // objective for the target band
    long sequences = 0;
    long tokens = 0;
};

EvalReport make_report(const std::vector<NormalizedSequence>& outputs, const BandSets& bands,
                       Band target, int gap = kDefaultPhraseGap);

std::string report_to_csv(const EvalReport& report);
std::string report_to_table(const EvalReport& report);

} // namespace lexalign
