#include "lexalign/constraints.hpp"

#include "lexalign/error.hpp"
#include "lexalign/textio.hpp"

#include <set>
#include <sstream>

namespace lexalign {

namespace {

std::vector<Clause> collect_clauses(const std::vector<VocabEntry>& entries,
                                    int min_rank, int max_rank) {
    std::vector<Clause> clauses;
    std::set<std::vector<std::string>> seen;
    for (const auto& entry : entries) {
        const int rank = level_rank(entry.level);
        if (rank < min_rank || rank > max_rank) continue;
        if (!seen.insert(entry.lemmas).second) continue; // duplicate literal sequence
        Clause clause;
        clause.id = static_cast<int>(clauses.size());
        clause.literals = entry.lemmas;
        clause.kind = entry.kind;
        clauses.push_back(std::move(clause));
    }
    return clauses;
}

void write_clause_line(std::ostringstream& out, const char* tag, const Clause& clause) {
    out << tag << ' ' << clause.id << ' '
        << (clause.kind == EntryKind::word ? "word" : "phrase");
    for (const auto& lit : clause.literals) out << ' ' << lit;
    out << '\n';
}

Clause parse_clause_line(const std::vector<std::string>& tokens, const std::string& where) {
    if (tokens.size() < 4) throw DataError("truncated clause line at " + where);
    Clause clause;
    clause.id = static_cast<int>(parse_long(tokens[1], where));
    if (tokens[2] == "word") {
        clause.kind = EntryKind::word;
    } else if (tokens[2] == "phrase") {
        clause.kind = EntryKind::phrase;
    } else {
        throw DataError("bad clause kind '" + tokens[2] + "' at " + where);
    }
    clause.literals.assign(tokens.begin() + 3, tokens.end());
    return clause;
}

} // namespace

ConstraintSet compile_constraints(const std::vector<VocabEntry>& entries, Band band) {
    const auto [lo, hi] = sublevels(band);
    ConstraintSet set;
    set.band = band;
    set.clauses = collect_clauses(entries, level_rank(lo), level_rank(hi));
    if (set.clauses.empty()) {
        throw DataError("no vocabulary entries for band " + band_name(band));
    }
    if (band != Band::C) {
        auto above = std::make_shared<ConstraintSet>();
        above->band = band; // companion carries the owning band tag
        above->clauses = collect_clauses(entries, level_rank(hi) + 1, level_rank(Level::C2));
        set.above = std::move(above);
    }
    return set;
}

std::string constraints_to_text(const ConstraintSet& set) {
    std::ostringstream out;
    out << "lexalign-constraints-v1\n";
    out << "band " << band_name(set.band) << '\n';
    out << "m " << set.clauses.size() << '\n';
    for (const auto& clause : set.clauses) write_clause_line(out, "clause", clause);
    const size_t above_count = set.above ? set.above->clauses.size() : 0;
    out << "above " << above_count << '\n';
    if (set.above) {
        for (const auto& clause : set.above->clauses) write_clause_line(out, "aclause", clause);
    }
    return out.str();
}

void save_constraints(const ConstraintSet& set, const std::string& path) {
    write_file(path, constraints_to_text(set));
}

ConstraintSet load_constraints(const std::string& path) {
    const auto lines = read_lines(path);
    if (lines.empty() || lines[0] != "lexalign-constraints-v1") {
        throw DataError("not a constraint-set file (bad header): " + path);
    }
    size_t i = 1;
    auto next_tokens = [&](const char* expect) {
        if (i >= lines.size()) throw DataError("truncated constraint-set file: " + path);
        auto tokens = split_ws(lines[i]);
        if (tokens.empty() || tokens[0] != expect) {
            throw DataError("expected '" + std::string(expect) + "' at " + path + ":" +
                            std::to_string(i + 1));
        }
        ++i;
        return tokens;
    };

    ConstraintSet set;
    {
        const auto tokens = next_tokens("band");
        if (tokens.size() != 2) throw DataError("bad band line in " + path);
        const auto band = parse_band(tokens[1]);
        if (!band) throw DataError("unknown band '" + tokens[1] + "' in " + path);
        set.band = *band;
    }
    const long m = parse_long(next_tokens("m")[1], path);
    for (long c = 0; c < m; ++c) {
        const std::string where = path + ":" + std::to_string(i + 1);
        set.clauses.push_back(parse_clause_line(next_tokens("clause"), where));
    }
    const long above_count = parse_long(next_tokens("above")[1], path);
    if (set.band != Band::C || above_count > 0) {
        auto above = std::make_shared<ConstraintSet>();
        above->band = set.band;
        for (long c = 0; c < above_count; ++c) {
            const std::string where = path + ":" + std::to_string(i + 1);
            above->clauses.push_back(parse_clause_line(next_tokens("aclause"), where));
        }
        if (set.band != Band::C) set.above = std::move(above);
    }
    return set;
}

} // namespace lexalign
