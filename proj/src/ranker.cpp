#include "lexalign/ranker.hpp"

#include "lexalign/error.hpp"
#include "lexalign/textio.hpp"

#include <cmath>
#include <sstream>

namespace lexalign {

std::vector<LabeledSentence> load_labeled(const std::string& path) {
    std::vector<LabeledSentence> out;
    const auto lines = read_lines(path);
    for (size_t i = 0; i < lines.size(); ++i) {
        const std::string& line = lines[i];
        if (line.empty() || line[0] == '#') continue;
        const std::string where = path + ":" + std::to_string(i + 1);
        const auto cols = split_char(line, '\t');
        if (cols.size() != 2) {
            throw DataError("expected 2 tab-separated columns at " + where);
        }
        LabeledSentence s;
        s.text = trim(cols[0]);
        if (s.text.empty()) throw DataError("empty sentence text at " + where);
        const auto level = parse_level(trim(cols[1]));
        if (!level) throw DataError("unknown level '" + cols[1] + "' at " + where);
        s.level = *level;
        out.push_back(std::move(s));
    }
    if (out.empty()) throw DataError("no labeled sentences in " + path);
    return out;
}

void save_labeled(const std::vector<LabeledSentence>& sentences, const std::string& path) {
    std::ostringstream out;
    for (const auto& s : sentences) {
        out << s.text << '\t' << level_name(s.level) << '\n';
    }
    write_file(path, out.str());
}

std::vector<SentencePair> build_pairs(const std::vector<LabeledSentence>& sentences,
                                      Band target, int pairs_per_target, uint64_t seed) {
    std::vector<LabeledSentence> in_band;
    std::vector<LabeledSentence> out_band;
    for (const auto& s : sentences) {
        (band_of(s.level) == target ? in_band : out_band).push_back(s);
    }
    if (in_band.empty()) {
        throw DataError("no sentences in target band " + band_name(target));
    }
    if (out_band.empty()) {
        throw DataError("no sentences outside target band " + band_name(target));
    }
    SplitRng rng(mix_seed(seed, 0x72616e6bu));
    std::vector<SentencePair> pairs;
    pairs.reserve(in_band.size() * static_cast<size_t>(pairs_per_target));
    for (const auto& tgt : in_band) {
        for (int k = 0; k < pairs_per_target; ++k) {
            pairs.emplace_back(tgt, out_band[rng.index(out_band.size())]);
        }
    }
    return pairs;
}

double logistic(double x) {
    if (x >= 0.0) {
        return 1.0 / (1.0 + std::exp(-x));
    }
    const double e = std::exp(x);
    return e / (1.0 + e);
}

namespace {

// -log sigma(x), stable for large negative x.
double softplus_neg(double x) {
    if (x > 0.0) return std::log1p(std::exp(-x));
    return -x + std::log1p(std::exp(x));
}

double mean_pair_loss(const std::vector<Eigen::VectorXd>& diffs,
                      const Eigen::VectorXd& theta) {
    double total = 0.0;
    for (const auto& d : diffs) total += softplus_neg(theta.dot(d));
    return total / static_cast<double>(diffs.size());
}

} // namespace

TrainedRanker train_ranker_features(
    const std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>>& feature_pairs,
    const RankerConfig& config) {
    if (feature_pairs.empty()) throw DataError("ranker training needs at least one pair");
    const Eigen::Index dim = feature_pairs.front().first.size();
    std::vector<Eigen::VectorXd> diffs;
    diffs.reserve(feature_pairs.size());
    for (const auto& [fi, fj] : feature_pairs) {
        if (fi.size() != dim || fj.size() != dim) {
            throw DataError("inconsistent feature dimensions in ranker training pairs");
        }
        diffs.push_back(fi - fj);
    }

    TrainedRanker result;
    result.model.extractor_id = SentenceFeatureExtractor::kId;
    result.model.config = config;
    Eigen::VectorXd theta = Eigen::VectorXd::Zero(dim);

    double loss = mean_pair_loss(diffs, theta);
    double step = config.learning_rate;
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        Eigen::VectorXd grad = Eigen::VectorXd::Zero(dim);
        for (const auto& d : diffs) {
            grad -= (1.0 - logistic(theta.dot(d))) * d;
        }
        grad /= static_cast<double>(diffs.size());

        // Halve the step until the loss stops increasing.
        bool moved = false;
        for (int tries = 0; tries < 40; ++tries) {
            const Eigen::VectorXd candidate = theta - step * grad;
            const double candidate_loss = mean_pair_loss(diffs, candidate);
            if (!std::isfinite(candidate_loss)) {
                throw NumericError("non-finite ranker loss during training");
            }
            if (candidate_loss <= loss) {
                theta = candidate;
                loss = candidate_loss;
                moved = true;
                break;
            }
            step *= 0.5;
        }
        result.losses.push_back(loss);
        if (!moved) break; // converged: no descent direction at machine precision
    }
    result.model.theta = theta;
    return result;
}

TrainedRanker train_ranker(const std::vector<SentencePair>& pairs,
                           const SentenceFeatureExtractor& extractor,
                           const RankerConfig& config) {
    std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>> feature_pairs;
    feature_pairs.reserve(pairs.size());
    for (const auto& [si, sj] : pairs) {
        feature_pairs.emplace_back(extractor.extract_text(si.text),
                                   extractor.extract_text(sj.text));
    }
    return train_ranker_features(feature_pairs, config);
}

double sentence_reward(const RankerModel& model, const Eigen::VectorXd& features) {
    return logistic(model.raw_score(features));
}

double sentence_reward_text(const RankerModel& model,
                            const SentenceFeatureExtractor& extractor,
                            const std::string& text) {
    return sentence_reward(model, extractor.extract_text(text));
}

void save_ranker(const RankerModel& model, const std::string& path) {
    std::ostringstream out;
    out << "lexalign-ranker-v1\n";
    out << "extractor " << model.extractor_id << '\n';
    out << "dim " << model.theta.size() << '\n';
    out << "theta";
    for (Eigen::Index i = 0; i < model.theta.size(); ++i) {
        out << ' ' << format_double(model.theta(i));
    }
    out << '\n';
    out << "lr " << format_double(model.config.learning_rate) << '\n';
    out << "epochs " << model.config.epochs << '\n';
    out << "seed " << model.config.seed << '\n';
    write_file(path, out.str());
}

RankerModel load_ranker(const std::string& path, const std::string& expected_extractor_id) {
    const auto lines = read_lines(path);
    if (lines.empty() || lines[0] != "lexalign-ranker-v1") {
        throw DataError("not a ranker checkpoint (bad header): " + path);
    }
    RankerModel model;
    long dim = -1;
    for (size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const std::string where = path + ":" + std::to_string(i + 1);
        const auto tokens = split_ws(lines[i]);
        const std::string& key = tokens[0];
        if (key == "extractor" && tokens.size() == 2) {
            model.extractor_id = tokens[1];
        } else if (key == "dim" && tokens.size() == 2) {
            dim = parse_long(tokens[1], where);
        } else if (key == "theta") {
            model.theta.resize(static_cast<Eigen::Index>(tokens.size()) - 1);
            for (size_t k = 1; k < tokens.size(); ++k) {
                model.theta(static_cast<Eigen::Index>(k - 1)) = parse_double(tokens[k], where);
            }
        } else if (key == "lr" && tokens.size() == 2) {
            model.config.learning_rate = parse_double(tokens[1], where);
        } else if (key == "epochs" && tokens.size() == 2) {
            model.config.epochs = static_cast<int>(parse_long(tokens[1], where));
        } else if (key == "seed" && tokens.size() == 2) {
            model.config.seed = static_cast<uint64_t>(parse_long(tokens[1], where));
        } else {
            throw DataError("unrecognized ranker checkpoint line at " + where);
        }
    }
    if (model.extractor_id.empty() || dim < 0 || model.theta.size() != dim) {
        throw DataError("incomplete ranker checkpoint: " + path);
    }
    if (model.extractor_id != expected_extractor_id) {
        throw DataError("ranker checkpoint extractor '" + model.extractor_id +
                        "' does not match expected '" + expected_extractor_id + "'");
    }
    return model;
}

} // namespace lexalign
