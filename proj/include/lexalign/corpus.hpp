#pragma once

#include "lexalign/levels.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace lexalign {

// Seeded synthetic environment: banded word lists plus sentence templates.
// Slots {A}, {B}, {C} in a template draw uniformly from that band's words.
struct MicroLanguageSpec {
    uint64_t seed = 7;
    std::vector<std::string> stopwords;
    std::array<std::vector<std::string>, 3> band_words;       // indexed by band_index
    std::array<std::vector<std::string>, 3> simple_templates; // per target band
    std::vector<std::string> complex_templates;

    const std::vector<std::string>& words(Band band) const {
        return band_words[band_index(band)];
    }
    const std::vector<std::string>& templates(Band band) const {
        return simple_templates[band_index(band)];
    }
};

MicroLanguageSpec load_micro_spec(const std::string& path);
void save_micro_spec(const MicroLanguageSpec& spec, const std::string& path);

struct ParallelPair {
    std::string complex_text;
    std::string simple_text;
    Band band = Band::A;
};

// Deterministic corpus of distinct (complex, simple) pairs, bands cycling
// A, B, C so counts stay balanced within one.
std::vector<ParallelPair> generate_corpus(const MicroLanguageSpec& spec, long n);

// TSV: complex<TAB>simple<TAB>band.
std::vector<ParallelPair> load_corpus(const std::string& path);
void save_corpus(const std::vector<ParallelPair>& pairs, const std::string& path);

} // namespace lexalign
