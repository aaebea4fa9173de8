#pragma once

#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace lexalign {

// Lemmatized view of one surface sentence.  content_lemmas is
// full_lemmas with stopwords removed; token_count counts surface tokens
// that are not pure punctuation.
struct NormalizedSequence {
    std::vector<std::string> full_lemmas;
    std::vector<std::string> content_lemmas;
    long token_count = 0;
};

// Deterministic normalizer: ASCII lowercasing, edge punctuation
// stripping, exception-table lookup, then ordered suffix rules
// (-ies/-ied -> -y, -es family, -s, -eed, -ed, -ing with doubling and
// e-restoration repair).  Stopword removal applies to lemmas, after
// lemmatization.
class Normalizer {
public:
    Normalizer(std::vector<std::string> stopword_lemmas,
               std::unordered_map<std::string, std::string> exceptions);

    // stopword file: one token per line; exception file: form<TAB>lemma,
    // '#' comment lines ignored in both.
    static Normalizer from_files(const std::string& stopword_path,
                                 const std::string& exception_path);

    NormalizedSequence normalize(const std::string& text) const;
    std::string lemmatize(const std::string& token) const;
    bool is_stopword(const std::string& lemma) const;
    size_t stopword_count() const { return stopwords_.size(); }

private:
    std::unordered_set<std::string> stopwords_;
    std::unordered_map<std::string, std::string> exceptions_;
};

} // namespace lexalign

