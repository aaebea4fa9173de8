#include "lexalign/features.hpp"

namespace lexalign {

BandSets compile_all_bands(const std::vector<VocabEntry>& entries) {
    BandSets all;
    for (Band band : kAllBands) {
        all.at(band) = compile_constraints(entries, band);
    }
    return all;
}

SentenceFeatureExtractor::SentenceFeatureExtractor(
    std::shared_ptr<const Normalizer> normalizer, const std::vector<VocabEntry>& entries)
    : normalizer_(std::move(normalizer)) {
    for (const auto& entry : entries) {
        if (entry.kind != EntryKind::word) continue;
        band_word_lemmas_[band_index(band_of(entry.level))].insert(entry.lemmas[0]);
    }
}

Eigen::VectorXd SentenceFeatureExtractor::extract(const NormalizedSequence& seq) const {
    Eigen::VectorXd f(kDim);
    const double full = static_cast<double>(seq.full_lemmas.size());
    const double content = static_cast<double>(seq.content_lemmas.size());

    double length_sum = 0.0;
    for (const auto& tok : seq.full_lemmas) length_sum += static_cast<double>(tok.size());

    std::array<double, 3> hits = {0.0, 0.0, 0.0};
    for (const auto& lemma : seq.content_lemmas) {
        for (size_t b = 0; b < 3; ++b) {
            if (band_word_lemmas_[b].count(lemma)) hits[b] += 1.0;
        }
    }

    f(0) = 1.0;
    f(1) = static_cast<double>(seq.token_count) / 20.0;
    f(2) = (full > 0.0 ? length_sum / full : 0.0) / 10.0;
    f(3) = hits[0] / std::max(content, 1.0);
    f(4) = hits[1] / std::max(content, 1.0);
    f(5) = hits[2] / std::max(content, 1.0);
    f(6) = (full - content) / std::max(full, 1.0);
    return f;
}

Eigen::VectorXd SentenceFeatureExtractor::extract_text(const std::string& text) const {
    return extract(normalizer_->normalize(text));
}

} // namespace lexalign
