#pragma once

#include "lexalign/features.hpp"
#include "lexalign/normalize.hpp"
#include "lexalign/policy.hpp"
#include "lexalign/ranker.hpp"
#include "lexalign/reward.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace lexalign {

struct RewardWeights {
    double lambda = 1.5;
    double gamma = 1.0;
};

struct PPOConfig {
    double clip_epsilon = 0.2;
    double learning_rate = 3e-5;
    int epochs = 30;
    int rollouts_per_epoch = 24;
    int minibatch = 64;          // token-level
    int passes = 4;
    double value_loss_weight = 0.5;
    double discount = 1.0;
    double gae_lambda = 0.95;
    double grad_clip = 1.0;
    double kl_ceiling = 20.0;    // nats per sequence, diagnostic bound
    uint64_t seed = 0;
};

struct TrainerConfig {
    RewardWeights weights;
    PPOConfig ppo;
    DynamicRewardConfig reward;
    GenerationConfig generation;
    bool use_kl = true;
    bool use_sentence_reward = true;
};

struct TrainLogRecord {
    int epoch = 0;
    double mean_reward = 0.0;   // combined reward R, before KL regularization
    double mean_kl = 0.0;       // per-sequence policy/reference log ratio
    long objective = 0;         // clause matches on the target set this epoch
    double loss_policy = 0.0;
    double loss_value = 0.0;
    std::vector<double> usage;  // p snapshot after the epoch's refresh
    double first_minibatch_ratio_dev = 0.0;  // max |ratio-1| before any update
    bool aborted = false;
    std::string note;
};

double combined_reward(double h, double r_l, const RewardWeights& weights);

// R' = R - sum_t (logp_policy - logp_ref); errors on mismatched vectors.
double regularized_reward(double r, const Rollout& rollout);

// One Algorithm-1 iteration: rollouts, reward assembly, clipped-surrogate
// minibatch updates of the band adapter and value head, then the usage
// refresh. Non-finite numbers abort the update and restore the parameters.
TrainLogRecord run_epoch(PolicyModel& policy, Band band,
                         const std::vector<std::vector<int>>& prompts,
                         const ConstraintSet& set, const Normalizer& normalizer,
                         const RankerModel* ranker,
                         const SentenceFeatureExtractor* extractor,
                         ClauseUsageStats& stats, const TrainerConfig& config, int epoch);

struct TrainSetup {
    const BandSets* bands = nullptr;
    const Normalizer* normalizer = nullptr;
    const SentenceFeatureExtractor* extractor = nullptr;
    std::array<const RankerModel*, 3> rankers{};              // per band, null skips r_l
    std::array<std::vector<std::vector<int>>, 3> prompts;     // token prompts per band
};

struct BandTraining {
    Band band = Band::A;
    std::vector<TrainLogRecord> log;
};

struct TrainOutcome {
    PolicyModel model;
    std::vector<BandTraining> bands;
};

// Trains each requested band's adapter independently until the epoch budget
// or until mean reward moves less than 1% across five epochs.
TrainOutcome train(const PolicyModel& init, const std::vector<Band>& train_bands,
                   const TrainSetup& setup, const TrainerConfig& config);

void write_trainlog_csv(const std::vector<TrainLogRecord>& records, const std::string& path);

} // namespace lexalign
