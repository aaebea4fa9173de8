#pragma once

#include "lexalign/levels.hpp"

#include <string>
#include <vector>

namespace lexalign {

enum class EntryKind { word, phrase };

// One leveled dictionary entry.  kind is word exactly when lemmas has a
// single token.
struct VocabEntry {
    std::string surface;
    std::vector<std::string> lemmas;
    Level level = Level::A1;
    EntryKind kind = EntryKind::word;
};

// Reads the vocabulary TSV: surface<TAB>lemma_tokens<TAB>level<TAB>kind,
// '#' comment lines ignored.  Rows sharing a lemma sequence collapse to
// one entry at the lowest level seen, keeping the first row's position.
std::vector<VocabEntry> load_vocabulary(const std::string& path);

} // namespace lexalign

