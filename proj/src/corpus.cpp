#include "lexalign/corpus.hpp"

#include "lexalign/error.hpp"
#include "lexalign/textio.hpp"

#include <limits>
#include <set>
#include <sstream>

namespace lexalign {

namespace {

std::string join(const std::vector<std::string>& tokens, size_t from) {
    std::string out;
    for (size_t i = from; i < tokens.size(); ++i) {
        if (i > from) out += ' ';
        out += tokens[i];
    }
    return out;
}

int slot_band(const std::string& token) {
    if (token == "{A}") return 0;
    if (token == "{B}") return 1;
    if (token == "{C}") return 2;
    return -1;
}

std::string fill_template(const std::string& tmpl, const MicroLanguageSpec& spec,
                          SplitRng& rng) {
    std::string out;
    for (const auto& token : split_ws(tmpl)) {
        if (!out.empty()) out += ' ';
        const int b = slot_band(token);
        if (b < 0) {
            out += token;
        } else {
            const auto& words = spec.band_words[static_cast<size_t>(b)];
            out += words[rng.index(words.size())];
        }
    }
    return out;
}

long saturating_mul(long a, long b) {
    if (a == 0 || b == 0) return 0;
    if (a > std::numeric_limits<long>::max() / b) return std::numeric_limits<long>::max();
    return a * b;
}

// Distinct sentences one template can expand to.
long template_capacity(const std::string& tmpl, const MicroLanguageSpec& spec) {
    long cap = 1;
    for (const auto& token : split_ws(tmpl)) {
        const int b = slot_band(token);
        if (b >= 0) {
            cap = saturating_mul(cap,
                                 static_cast<long>(spec.band_words[static_cast<size_t>(b)].size()));
        }
    }
    return cap;
}

long side_capacity(const std::vector<std::string>& templates, const MicroLanguageSpec& spec) {
    long cap = 0;
    for (const auto& tmpl : templates) {
        const long t = template_capacity(tmpl, spec);
        if (t > std::numeric_limits<long>::max() - cap) return std::numeric_limits<long>::max();
        cap += t;
    }
    return cap;
}

} // namespace

std::vector<ParallelPair> generate_corpus(const MicroLanguageSpec& spec, long n) {
    if (n < 1) throw DataError("corpus size must be at least 1");
    for (Band band : kAllBands) {
        if (spec.templates(band).empty()) {
            throw DataError("micro-language spec has no simple templates for band " +
                            band_name(band));
        }
        if (spec.words(band).empty()) {
            throw DataError("micro-language spec has no words for band " + band_name(band));
        }
    }
    if (spec.complex_templates.empty()) {
        throw DataError("micro-language spec has no complex templates");
    }

    const long complex_cap = side_capacity(spec.complex_templates, spec);
    for (Band band : kAllBands) {
        // Bands cycle in A,B,C order, so earlier bands take the extra pair.
        const long band_n = n / 3 + (static_cast<long>(band_index(band)) < n % 3 ? 1 : 0);
        const long cap = saturating_mul(side_capacity(spec.templates(band), spec), complex_cap);
        if (band_n > cap) {
            throw DataError("requested " + std::to_string(band_n) + " distinct band-" +
                            band_name(band) + " pairs but templates admit only " +
                            std::to_string(cap));
        }
    }

    SplitRng rng(mix_seed(spec.seed, 0x636f7270u));
    std::vector<ParallelPair> pairs;
    pairs.reserve(static_cast<size_t>(n));
    std::set<std::pair<std::string, std::string>> seen;
    const Band cycle[3] = {Band::A, Band::B, Band::C};
    for (long i = 0; i < n; ++i) {
        const Band band = cycle[i % 3];
        ParallelPair pair;
        pair.band = band;
        bool fresh = false;
        for (int tries = 0; tries < 10000 && !fresh; ++tries) {
            const auto& simple_templates = spec.templates(band);
            pair.simple_text =
                fill_template(simple_templates[rng.index(simple_templates.size())], spec, rng);
            pair.complex_text = fill_template(
                spec.complex_templates[rng.index(spec.complex_templates.size())], spec, rng);
            fresh = seen.insert({pair.complex_text, pair.simple_text}).second;
        }
        if (!fresh) {
            throw DataError("could not draw a fresh band-" + band_name(band) +
                            " pair; template capacity nearly exhausted");
        }
        pairs.push_back(std::move(pair));
    }
    return pairs;
}

MicroLanguageSpec load_micro_spec(const std::string& path) {
    const auto lines = read_lines(path);
    if (lines.empty() || lines[0] != "lexalign-micro-v1") {
        throw DataError("not a micro-language spec (bad header): " + path);
    }
    MicroLanguageSpec spec;
    spec.stopwords.clear();
    bool saw_seed = false;
    for (size_t i = 1; i < lines.size(); ++i) {
        const std::string& line = lines[i];
        if (line.empty() || line[0] == '#') continue;
        const std::string where = path + ":" + std::to_string(i + 1);
        const auto tokens = split_ws(line);
        const std::string& key = tokens[0];
        if (key == "seed" && tokens.size() == 2) {
            spec.seed = static_cast<uint64_t>(parse_long(tokens[1], where));
            saw_seed = true;
        } else if (key == "stopwords") {
            spec.stopwords.assign(tokens.begin() + 1, tokens.end());
        } else if (key == "words" && tokens.size() >= 3) {
            const auto band = parse_band(tokens[1]);
            if (!band) throw DataError("unknown band '" + tokens[1] + "' at " + where);
            spec.band_words[band_index(*band)].assign(tokens.begin() + 2, tokens.end());
        } else if (key == "template" && tokens.size() >= 4 && tokens[1] == "simple") {
            const auto band = parse_band(tokens[2]);
            if (!band) throw DataError("unknown band '" + tokens[2] + "' at " + where);
            spec.simple_templates[band_index(*band)].push_back(join(tokens, 3));
        } else if (key == "template" && tokens.size() >= 3 && tokens[1] == "complex") {
            spec.complex_templates.push_back(join(tokens, 2));
        } else {
            throw DataError("unrecognized micro-language spec line at " + where);
        }
    }
    if (!saw_seed) throw DataError("micro-language spec missing seed: " + path);
    for (Band band : kAllBands) {
        const auto& words = spec.words(band);
        std::set<std::string> unique(words.begin(), words.end());
        if (unique.size() != words.size()) {
            throw DataError("duplicate words within band " + band_name(band) + " in " + path);
        }
        for (Band other : kAllBands) {
            if (other == band) continue;
            for (const auto& w : spec.words(other)) {
                if (unique.count(w)) {
                    throw DataError("word '" + w + "' appears in two bands in " + path);
                }
            }
        }
    }
    return spec;
}

void save_micro_spec(const MicroLanguageSpec& spec, const std::string& path) {
    std::ostringstream out;
    out << "lexalign-micro-v1\n";
    out << "seed " << spec.seed << '\n';
    out << "stopwords";
    for (const auto& w : spec.stopwords) out << ' ' << w;
    out << '\n';
    for (Band band : kAllBands) {
        out << "words " << band_name(band);
        for (const auto& w : spec.words(band)) out << ' ' << w;
        out << '\n';
    }
    for (Band band : kAllBands) {
        for (const auto& tmpl : spec.templates(band)) {
            out << "template simple " << band_name(band) << ' ' << tmpl << '\n';
        }
    }
    for (const auto& tmpl : spec.complex_templates) {
        out << "template complex " << tmpl << '\n';
    }
    write_file(path, out.str());
}

std::vector<ParallelPair> load_corpus(const std::string& path) {
    std::vector<ParallelPair> pairs;
    const auto lines = read_lines(path);
    for (size_t i = 0; i < lines.size(); ++i) {
        const std::string& line = lines[i];
        if (line.empty() || line[0] == '#') continue;
        const std::string where = path + ":" + std::to_string(i + 1);
        const auto cols = split_char(line, '\t');
        if (cols.size() != 3) {
            throw DataError("expected 3 tab-separated columns at " + where);
        }
        ParallelPair pair;
        pair.complex_text = trim(cols[0]);
        pair.simple_text = trim(cols[1]);
        if (pair.complex_text.empty() || pair.simple_text.empty()) {
            throw DataError("empty sentence at " + where);
        }
        const auto band = parse_band(trim(cols[2]));
        if (!band) throw DataError("unknown band '" + cols[2] + "' at " + where);
        pair.band = *band;
        pairs.push_back(std::move(pair));
    }
    if (pairs.empty()) throw DataError("no pairs in corpus file " + path);
    return pairs;
}

void save_corpus(const std::vector<ParallelPair>& pairs, const std::string& path) {
    std::ostringstream out;
    for (const auto& pair : pairs) {
        out << pair.complex_text << '\t' << pair.simple_text << '\t' << band_name(pair.band)
            << '\n';
    }
    write_file(path, out.str());
}

} // namespace lexalign
