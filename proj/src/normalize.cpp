#include "lexalign/normalize.hpp"

#include "lexalign/error.hpp"
#include "lexalign/textio.hpp"

#include <algorithm>
#include <cctype>

namespace lexalign {

namespace {

bool is_word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '\'' ||
           static_cast<unsigned char>(c) >= 0x80;
}

// Strip punctuation off both edges; interior characters are kept.
std::string strip_edges(const std::string& token) {
    size_t begin = 0;
    size_t end = token.size();
    while (begin < end && !is_word_char(token[begin])) ++begin;
    while (end > begin && !is_word_char(token[end - 1])) --end;
    return token.substr(begin, end - begin);
}

bool is_vowel_at(const std::string& w, size_t i) {
    const char c = w[i];
    if (c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u') return true;
    // y counts as a vowel when it follows a consonant
    if (c == 'y' && i > 0) return !is_vowel_at(w, i - 1);
    return false;
}

bool has_vowel(const std::string& w) {
    for (size_t i = 0; i < w.size(); ++i) {
        if (is_vowel_at(w, i)) return true;
    }
    return false;
}

// Porter measure: the number of vowel->consonant transitions.
int measure(const std::string& w) {
    int m = 0;
    bool prev_vowel = false;
    for (size_t i = 0; i < w.size(); ++i) {
        const bool v = is_vowel_at(w, i);
        if (prev_vowel && !v) ++m;
        prev_vowel = v;
    }
    return m;
}

bool ends_with(const std::string& w, const std::string& suffix) {
    return w.size() >= suffix.size() &&
           w.compare(w.size() - suffix.size(), suffix.size(), suffix) == 0;
}

bool ends_cvc(const std::string& w) {
    const size_t n = w.size();
    if (n < 3) return false;
    if (is_vowel_at(w, n - 3) || !is_vowel_at(w, n - 2) || is_vowel_at(w, n - 1)) return false;
    const char last = w[n - 1];
    return last != 'w' && last != 'x' && last != 'y';
}

bool is_double_consonant(const std::string& w) {
    const size_t n = w.size();
    if (n < 2 || w[n - 1] != w[n - 2]) return false;
    return !is_vowel_at(w, n - 1);
}

// Repair a stem after -ed/-ing removal: restore the dropped e or undo
// consonant doubling.
std::string repair_stem(std::string stem) {
    if (ends_with(stem, "at") || ends_with(stem, "bl") || ends_with(stem, "iz")) {
        return stem + "e";
    }
    if (is_double_consonant(stem)) {
        const char last = stem.back();
        if (last != 'l' && last != 's' && last != 'z') {
            stem.pop_back();
            return stem;
        }
        return stem;
    }
    if (measure(stem) == 1 && ends_cvc(stem)) {
        return stem + "e";
    }
    return stem;
}

} // namespace

Normalizer::Normalizer(std::vector<std::string> stopword_lemmas,
                       std::unordered_map<std::string, std::string> exceptions)
    : exceptions_(std::move(exceptions)) {
    for (const auto& s : stopword_lemmas) stopwords_.insert(to_lower_ascii(s));
}

Normalizer Normalizer::from_files(const std::string& stopword_path,
                                  const std::string& exception_path) {
    std::vector<std::string> stops;
    for (const auto& raw : read_lines(stopword_path)) {
        const std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        stops.push_back(line);
    }
    std::unordered_map<std::string, std::string> exceptions;
    size_t lineno = 0;
    for (const auto& raw : read_lines(exception_path)) {
        ++lineno;
        const std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        const auto cols = split_char(line, '\t');
        if (cols.size() != 2 || trim(cols[0]).empty() || trim(cols[1]).empty()) {
            throw DataError("malformed lemma exception at " + exception_path + ":" +
                            std::to_string(lineno) + " (expected form<TAB>lemma)");
        }
        exceptions[to_lower_ascii(trim(cols[0]))] = to_lower_ascii(trim(cols[1]));
    }
    return Normalizer(std::move(stops), std::move(exceptions));
}

std::string Normalizer::lemmatize(const std::string& token) const {
    const std::string w = to_lower_ascii(token);
    if (auto it = exceptions_.find(w); it != exceptions_.end()) return it->second;

    const size_t n = w.size();
    if (n >= 5 && ends_with(w, "ies")) return w.substr(0, n - 3) + "y";
    if (n >= 5 && ends_with(w, "ied")) return w.substr(0, n - 3) + "y";
    if (ends_with(w, "sses")) return w.substr(0, n - 2);
    if (n >= 5 && (ends_with(w, "shes") || ends_with(w, "ches"))) return w.substr(0, n - 2);
    if (n >= 4 && (ends_with(w, "xes") || ends_with(w, "zes") || ends_with(w, "oes"))) {
        return w.substr(0, n - 2);
    }
    if (n >= 4 && w.back() == 's' && !ends_with(w, "ss") && !ends_with(w, "us") &&
        !ends_with(w, "is")) {
        return w.substr(0, n - 1);
    }
    if (n >= 4 && ends_with(w, "eed")) {
        if (measure(w.substr(0, n - 3)) > 0) return w.substr(0, n - 1);
        return w;
    }
    if (n >= 4 && ends_with(w, "ed")) {
        std::string stem = w.substr(0, n - 2);
        if (has_vowel(stem)) return repair_stem(std::move(stem));
        return w;
    }
    if (n >= 5 && ends_with(w, "ing")) {
        std::string stem = w.substr(0, n - 3);
        if (has_vowel(stem)) return repair_stem(std::move(stem));
        return w;
    }
    return w;
}

bool Normalizer::is_stopword(const std::string& lemma) const {
    return stopwords_.count(lemma) > 0;
}

NormalizedSequence Normalizer::normalize(const std::string& text) const {
    if (trim(text).empty()) throw DataError("cannot normalize empty text");
    NormalizedSequence seq;
    for (const auto& raw : split_ws(text)) {
        const std::string stripped = strip_edges(raw);
        if (stripped.empty()) continue; // pure punctuation
        ++seq.token_count;
        std::string lemma = lemmatize(stripped);
        const bool stop = is_stopword(lemma);
        seq.full_lemmas.push_back(std::move(lemma));
        if (!stop) seq.content_lemmas.push_back(seq.full_lemmas.back());
    }
    if (seq.full_lemmas.empty()) {
        throw DataError("text contains no word tokens: " + text);
    }
    return seq;
}

} // namespace lexalign
