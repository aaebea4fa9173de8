#pragma once

#include "lexalign/constraints.hpp"
#include "lexalign/normalize.hpp"
#include "lexalign/vocab.hpp"

#include <Eigen/Dense>

#include <array>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace lexalign {

// Compiled constraint sets for all three bands over one vocabulary.
struct BandSets {
    std::array<ConstraintSet, 3> sets;

    const ConstraintSet& at(Band band) const { return sets[band_index(band)]; }
    ConstraintSet& at(Band band) { return sets[band_index(band)]; }
};

BandSets compile_all_bands(const std::vector<VocabEntry>& entries);

// Fixed 7-dimensional sentence representation for the linear ranker:
// bias, scaled token count, scaled mean lemma length, per-band vocabulary
// hit ratios, and stopword ratio.
class SentenceFeatureExtractor {
public:
    static constexpr int kDim = 7;
    static constexpr const char* kId = "sentfeat-v1";

    SentenceFeatureExtractor(std::shared_ptr<const Normalizer> normalizer,
                             const std::vector<VocabEntry>& entries);

    Eigen::VectorXd extract(const NormalizedSequence& seq) const;
    Eigen::VectorXd extract_text(const std::string& text) const;

    const Normalizer& normalizer() const { return *normalizer_; }

private:
    std::shared_ptr<const Normalizer> normalizer_;
    std::array<std::set<std::string>, 3> band_word_lemmas_;
};

} // namespace lexalign
