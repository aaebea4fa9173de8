#include "lexalign/vocab.hpp"

#include "lexalign/error.hpp"
#include "lexalign/textio.hpp"

#include <map>

namespace lexalign {

std::vector<VocabEntry> load_vocabulary(const std::string& path) {
    std::vector<VocabEntry> entries;
    // lemma sequence -> index into entries
    std::map<std::vector<std::string>, size_t> seen;

    size_t lineno = 0;
    for (const auto& raw : read_lines(path)) {
        ++lineno;
        const std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        const std::string where = path + ":" + std::to_string(lineno);

        const auto cols = split_char(raw, '\t');
        if (cols.size() != 4) {
            throw DataError("malformed row at " + where + ": expected 4 tab-separated fields, got " +
                            std::to_string(cols.size()));
        }

        VocabEntry entry;
        entry.surface = trim(cols[0]);
        if (entry.surface.empty()) {
            throw DataError("malformed row at " + where + ": empty surface field");
        }
        for (const auto& tok : split_ws(cols[1])) {
            entry.lemmas.push_back(to_lower_ascii(tok));
        }
        if (entry.lemmas.empty()) {
            throw DataError("malformed row at " + where + ": empty lemma field");
        }

        const auto level = parse_level(trim(cols[2]));
        if (!level) {
            throw DataError("unknown level code '" + trim(cols[2]) + "' at " + where);
        }
        entry.level = *level;

        const std::string kind = trim(cols[3]);
        if (kind == "word") {
            entry.kind = EntryKind::word;
        } else if (kind == "phrase") {
            entry.kind = EntryKind::phrase;
        } else {
            throw DataError("malformed row at " + where + ": kind field must be word or phrase, got '" +
                            kind + "'");
        }
        if ((entry.kind == EntryKind::word) != (entry.lemmas.size() == 1)) {
            throw DataError("malformed row at " + where +
                            ": kind field inconsistent with lemma count");
        }

        auto it = seen.find(entry.lemmas);
        if (it == seen.end()) {
            seen.emplace(entry.lemmas, entries.size());
            entries.push_back(std::move(entry));
        } else if (level_rank(entry.level) < level_rank(entries[it->second].level)) {
            // same lemma sequence at several levels: keep the lowest
            entries[it->second].level = entry.level;
        }
    }
    return entries;
}

} // namespace lexalign
