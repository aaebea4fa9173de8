#pragma once

#include "lexalign/corpus.hpp"
#include "lexalign/features.hpp"
#include "lexalign/metrics.hpp"
#include "lexalign/normalize.hpp"
#include "lexalign/policy.hpp"
#include "lexalign/ppo.hpp"
#include "lexalign/ranker.hpp"

#include <array>
#include <memory>
#include <string>
#include <vector>

namespace lexalign {

// Policy token table: reserved ids, then stopwords and the band word
// lists in spec order.
TokenVocab vocab_from_spec(const MicroLanguageSpec& spec);

// Full task sequences (prompt prefix, complex, separator, simple, EOS)
// for backbone pretraining.
std::vector<std::vector<int>> pretrain_sequences(const TokenVocab& vocab,
                                                 const std::vector<ParallelPair>& pairs);

// Every complex side as a generation prompt; prompts are band-agnostic.
std::vector<std::vector<int>> prompts_from_pairs(const TokenVocab& vocab,
                                                 const std::vector<ParallelPair>& pairs);

// Simple sides labeled at the first sub-level of their band.
std::vector<LabeledSentence> labeled_from_pairs(const std::vector<ParallelPair>& pairs);

// Everything the desk-scale experiments need, loaded and compiled once.
struct ToyEnvironment {
    MicroLanguageSpec spec;
    std::vector<VocabEntry> entries;
    std::shared_ptr<const Normalizer> normalizer;
    BandSets bands;
    std::shared_ptr<const SentenceFeatureExtractor> extractor;
    TokenVocab vocab;
    std::vector<ParallelPair> pairs;
};

ToyEnvironment build_toy_environment(const std::string& micro_spec_path,
                                     const std::string& vocab_path,
                                     const std::string& stopword_path,
                                     const std::string& exception_path, long corpus_n,
                                     const std::string& corpus_path = "");

struct EvalOutputs {
    std::vector<std::string> texts;
    std::vector<NormalizedSequence> seqs;
};

// One generation per prompt; empty generations are dropped.
EvalOutputs sample_outputs(const PolicyModel& model, Band band,
                           const std::vector<std::vector<int>>& prompts,
                           const GenerationConfig& config, const Normalizer& normalizer);

std::array<RankerModel, 3> train_band_rankers(const std::vector<LabeledSentence>& labeled,
                                              const SentenceFeatureExtractor& extractor,
                                              const RankerConfig& config,
                                              int pairs_per_target, uint64_t seed);

long distinct_matched(const std::vector<NormalizedSequence>& seqs, const ConstraintSet& set,
                      int gap = kDefaultPhraseGap);

struct AblationCell {
    std::string name;
    RewardMode mode = RewardMode::dynamic;
    bool sentence_reward = true;
    std::array<EvalReport, 3> reports;                     // per trained band
    std::array<std::vector<TrainLogRecord>, 3> logs;
    std::array<long, 3> distinct_clauses{};                // against the trained band's set
};

// {constant, dynamic} x {with, without sentence reward}, all three bands
// per cell, shared seeds and shared pretrained start.
std::vector<AblationCell> run_ablation_grid(const ToyEnvironment& env,
                                            const PolicyModel& pretrained,
                                            const std::array<const RankerModel*, 3>& rankers,
                                            const TrainerConfig& base,
                                            const GenerationConfig& eval_gen);

std::string ablation_to_csv(const std::vector<AblationCell>& cells);
std::string ablation_to_table(const std::vector<AblationCell>& cells);

} // namespace lexalign
