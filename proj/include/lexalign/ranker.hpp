#pragma once

#include "lexalign/features.hpp"
#include "lexalign/levels.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace lexalign {

struct LabeledSentence {
    std::string text;
    Level level = Level::A1;
};

// TSV: text<TAB>level, '#' comments ignored.
std::vector<LabeledSentence> load_labeled(const std::string& path);
void save_labeled(const std::vector<LabeledSentence>& sentences, const std::string& path);

struct RankerConfig {
    double learning_rate = 0.5;
    int epochs = 200;
    uint64_t seed = 0;
};

struct RankerModel {
    std::string extractor_id;
    Eigen::VectorXd theta;
    RankerConfig config;

    double raw_score(const Eigen::VectorXd& features) const { return theta.dot(features); }
};

using SentencePair = std::pair<LabeledSentence, LabeledSentence>;

// (target-band, non-target) pairs, each target sentence paired with
// pairs_per_target uniform draws from the non-target pool.
std::vector<SentencePair> build_pairs(const std::vector<LabeledSentence>& sentences,
                                      Band target, int pairs_per_target, uint64_t seed);

struct TrainedRanker {
    RankerModel model;
    std::vector<double> losses;  // mean per-pair loss per epoch, non-increasing
};

// Pairwise logistic ranking loss, full-batch gradient descent with step
// halving so the recorded loss never increases.
TrainedRanker train_ranker_features(
    const std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>>& feature_pairs,
    const RankerConfig& config);

TrainedRanker train_ranker(const std::vector<SentencePair>& pairs,
                           const SentenceFeatureExtractor& extractor,
                           const RankerConfig& config);

double logistic(double x);

// r_l = logistic(theta . features), in (0, 1).
double sentence_reward(const RankerModel& model, const Eigen::VectorXd& features);
double sentence_reward_text(const RankerModel& model,
                            const SentenceFeatureExtractor& extractor,
                            const std::string& text);

void save_ranker(const RankerModel& model, const std::string& path);
RankerModel load_ranker(const std::string& path, const std::string& expected_extractor_id);

} // namespace lexalign
