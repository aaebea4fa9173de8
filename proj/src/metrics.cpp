#include "lexalign/metrics.hpp"

#include "lexalign/error.hpp"
#include "lexalign/textio.hpp"

#include <iomanip>
#include <sstream>

namespace lexalign {

namespace {

long token_total(const std::vector<NormalizedSequence>& outputs) {
    long total = 0;
    for (const auto& seq : outputs) total += seq.token_count;
    return total;
}

} // namespace

double frequency(const std::vector<NormalizedSequence>& outputs, const ConstraintSet& set,
                 int gap) {
    if (outputs.empty()) throw DataError("frequency needs at least one output sequence");
    const long tokens = token_total(outputs);
    if (tokens == 0) throw DataError("frequency undefined over zero generated tokens");
    long matched = 0;
    for (const auto& seq : outputs) {
        matched += count_all(set, seq, gap).total();
    }
    return static_cast<double>(matched) / static_cast<double>(tokens);
}

double diversity(const std::vector<NormalizedSequence>& outputs, const ConstraintSet& set,
                 int gap) {
    if (outputs.empty()) throw DataError("diversity needs at least one output sequence");
    if (set.clauses.empty()) throw DataError("diversity undefined for an empty clause set");
    std::vector<bool> hit(set.clauses.size(), false);
    for (const auto& seq : outputs) {
        const auto counts = count_all(set, seq, gap);
        for (size_t j = 0; j < counts.counts.size(); ++j) {
            if (counts.counts[j] > 0) hit[j] = true;
        }
    }
    long distinct = 0;
    for (bool h : hit) distinct += h ? 1 : 0;
    return static_cast<double>(distinct) / static_cast<double>(set.clauses.size());
}

long objective(const std::vector<NormalizedSequence>& outputs, const ConstraintSet& set,
               int gap) {
    long total = 0;
    for (const auto& seq : outputs) total += count_all(set, seq, gap).total();
    return total;
}

EvalReport make_report(const std::vector<NormalizedSequence>& outputs, const BandSets& bands,
                       Band target, int gap) {
    EvalReport report;
    report.target = target;
    report.sequences = static_cast<long>(outputs.size());
    report.tokens = token_total(outputs);
    for (Band band : kAllBands) {
        const size_t i = band_index(band);
        report.frequency[i] = frequency(outputs, bands.at(band), gap);
        report.diversity[i] = diversity(outputs, bands.at(band), gap);
        report.objective_counts[i] = objective(outputs, bands.at(band), gap);
    }
    report.objective_total = report.objective_counts[band_index(target)];
    return report;
}

std::string report_to_csv(const EvalReport& report) {
    std::ostringstream out;
    out << "band,frequency,diversity,objective\n";
    for (Band band : kAllBands) {
        const size_t i = band_index(band);
        out << band_name(band) << ',' << format_double(report.frequency[i]) << ','
            << format_double(report.diversity[i]) << ',' << report.objective_counts[i]
            << '\n';
    }
    return out.str();
}

std::string report_to_table(const EvalReport& report) {
    std::ostringstream out;
    out << "band  frequency  diversity  objective\n";
    for (Band band : kAllBands) {
        const size_t i = band_index(band);
        std::ostringstream freq, div;
        freq << std::fixed << std::setprecision(4) << report.frequency[i];
        div << std::fixed << std::setprecision(4) << report.diversity[i];
        out << band_name(band) << "     " << std::setw(9) << freq.str() << "  "
            << std::setw(9) << div.str() << "  " << std::setw(9)
            << report.objective_counts[i] << '\n';
    }
    out << "sequences " << report.sequences << ", tokens " << report.tokens << ", target "
        << band_name(report.target) << ", target objective " << report.objective_total
        << '\n';
    return out.str();
}

} // namespace lexalign
