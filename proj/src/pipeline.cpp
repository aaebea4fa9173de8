#include "lexalign/pipeline.hpp"

#include "lexalign/error.hpp"
#include "lexalign/matcher.hpp"
#include "lexalign/textio.hpp"

#include <iomanip>
#include <sstream>

namespace lexalign {

TokenVocab vocab_from_spec(const MicroLanguageSpec& spec) {
    std::vector<std::string> words = spec.stopwords;
    for (Band band : kAllBands) {
        for (const auto& w : spec.words(band)) words.push_back(w);
    }
    return TokenVocab(words);
}

std::vector<std::vector<int>> pretrain_sequences(const TokenVocab& vocab,
                                                 const std::vector<ParallelPair>& pairs) {
    std::vector<std::vector<int>> seqs;
    seqs.reserve(pairs.size());
    for (const auto& pair : pairs) {
        std::vector<int> ids;
        ids.push_back(TokenVocab::kPrompt);
        for (int t : vocab.encode(pair.complex_text)) ids.push_back(t);
        ids.push_back(TokenVocab::kSep);
        for (int t : vocab.encode(pair.simple_text)) ids.push_back(t);
        ids.push_back(TokenVocab::kEos);
        if (static_cast<int>(ids.size()) > kMaxSeqLen) {
            throw DataError("corpus pair expands to " + std::to_string(ids.size()) +
                            " tokens, over the context bound of " +
                            std::to_string(kMaxSeqLen));
        }
        seqs.push_back(std::move(ids));
    }
    return seqs;
}

std::vector<std::vector<int>> prompts_from_pairs(const TokenVocab& vocab,
                                                 const std::vector<ParallelPair>& pairs) {
    std::vector<std::vector<int>> prompts;
    prompts.reserve(pairs.size());
    for (const auto& pair : pairs) {
        prompts.push_back(build_prompt_ids(vocab, pair.complex_text));
    }
    return prompts;
}

std::vector<LabeledSentence> labeled_from_pairs(const std::vector<ParallelPair>& pairs) {
    std::vector<LabeledSentence> labeled;
    labeled.reserve(pairs.size());
    for (const auto& pair : pairs) {
        labeled.push_back({pair.simple_text, sublevels(pair.band).first});
    }
    return labeled;
}

ToyEnvironment build_toy_environment(const std::string& micro_spec_path,
                                     const std::string& vocab_path,
                                     const std::string& stopword_path,
                                     const std::string& exception_path, long corpus_n,
                                     const std::string& corpus_path) {
    ToyEnvironment env;
    env.spec = load_micro_spec(micro_spec_path);
    env.entries = load_vocabulary(vocab_path);
    env.normalizer = std::make_shared<Normalizer>(
        Normalizer::from_files(stopword_path, exception_path));
    env.bands = compile_all_bands(env.entries);
    env.extractor = std::make_shared<SentenceFeatureExtractor>(env.normalizer, env.entries);
    env.vocab = vocab_from_spec(env.spec);
    env.pairs = corpus_path.empty() ? generate_corpus(env.spec, corpus_n)
                                    : load_corpus(corpus_path);
    return env;
}

EvalOutputs sample_outputs(const PolicyModel& model, Band band,
                           const std::vector<std::vector<int>>& prompts,
                           const GenerationConfig& config, const Normalizer& normalizer) {
    EvalOutputs outputs;
    for (size_t i = 0; i < prompts.size(); ++i) {
        GenerationConfig gen = config;
        gen.seed = mix_seed(config.seed, 0x65766c6fu, i);
        const Rollout roll = generate(model, band, prompts[i], gen);
        const std::string text = model.vocab.decode(roll.seq);
        if (text.empty()) continue;
        outputs.texts.push_back(text);
        outputs.seqs.push_back(normalizer.normalize(text));
    }
    return outputs;
}

std::array<RankerModel, 3> train_band_rankers(const std::vector<LabeledSentence>& labeled,
                                              const SentenceFeatureExtractor& extractor,
                                              const RankerConfig& config,
                                              int pairs_per_target, uint64_t seed) {
    std::array<RankerModel, 3> rankers;
    for (Band band : kAllBands) {
        const auto pairs = build_pairs(labeled, band, pairs_per_target,
                                       mix_seed(seed, static_cast<uint64_t>(band_index(band))));
        rankers[band_index(band)] = train_ranker(pairs, extractor, config).model;
    }
    return rankers;
}

long distinct_matched(const std::vector<NormalizedSequence>& seqs, const ConstraintSet& set,
                      int gap) {
    std::vector<bool> hit(set.clauses.size(), false);
    for (const auto& seq : seqs) {
        const auto counts = count_all(set, seq, gap);
        for (size_t j = 0; j < counts.counts.size(); ++j) {
            if (counts.counts[j] > 0) hit[j] = true;
        }
    }
    long distinct = 0;
    for (bool h : hit) distinct += h ? 1 : 0;
    return distinct;
}

std::vector<AblationCell> run_ablation_grid(const ToyEnvironment& env,
                                            const PolicyModel& pretrained,
                                            const std::array<const RankerModel*, 3>& rankers,
                                            const TrainerConfig& base,
                                            const GenerationConfig& eval_gen) {
    struct Condition {
        const char* name;
        RewardMode mode;
        bool sentence;
    };
    const Condition grid[4] = {
        {"dynamic+sentence", RewardMode::dynamic, true},
        {"dynamic", RewardMode::dynamic, false},
        {"constant+sentence", RewardMode::constant, true},
        {"constant", RewardMode::constant, false},
    };

    TrainSetup setup;
    setup.bands = &env.bands;
    setup.normalizer = env.normalizer.get();
    setup.extractor = env.extractor.get();
    setup.rankers = rankers;
    const auto prompts = prompts_from_pairs(env.vocab, env.pairs);
    for (Band band : kAllBands) setup.prompts[band_index(band)] = prompts;

    std::vector<AblationCell> cells;
    for (const auto& condition : grid) {
        TrainerConfig config = base;
        config.reward.mode = condition.mode;
        config.use_sentence_reward = condition.sentence;

        AblationCell cell;
        cell.name = condition.name;
        cell.mode = condition.mode;
        cell.sentence_reward = condition.sentence;

        const TrainOutcome outcome =
            train(pretrained, {Band::A, Band::B, Band::C}, setup, config);
        for (const auto& training : outcome.bands) {
            const size_t i = band_index(training.band);
            cell.logs[i] = training.log;
            const EvalOutputs outputs = sample_outputs(outcome.model, training.band, prompts,
                                                       eval_gen, *env.normalizer);
            cell.reports[i] = make_report(outputs.seqs, env.bands, training.band,
                                          config.reward.phrase_gap);
            cell.distinct_clauses[i] = distinct_matched(
                outputs.seqs, env.bands.at(training.band), config.reward.phrase_gap);
        }
        cells.push_back(std::move(cell));
    }
    return cells;
}

std::string ablation_to_csv(const std::vector<AblationCell>& cells) {
    std::ostringstream out;
    out << "condition,band,frequency,diversity,objective,distinct_clauses\n";
    for (const auto& cell : cells) {
        for (Band band : kAllBands) {
            const size_t i = band_index(band);
            out << cell.name << ',' << band_name(band) << ','
                << format_double(cell.reports[i].frequency[i]) << ','
                << format_double(cell.reports[i].diversity[i]) << ','
                << cell.reports[i].objective_counts[i] << ',' << cell.distinct_clauses[i]
                << '\n';
        }
    }
    return out.str();
}

std::string ablation_to_table(const std::vector<AblationCell>& cells) {
    std::ostringstream out;
    out << std::left << std::setw(20) << "condition" << std::setw(6) << "band"
        << std::setw(11) << "frequency" << std::setw(11) << "diversity" << std::setw(10)
        << "objective" << "distinct\n";
    for (const auto& cell : cells) {
        for (Band band : kAllBands) {
            const size_t i = band_index(band);
            std::ostringstream freq, div;
            freq << std::fixed << std::setprecision(4) << cell.reports[i].frequency[i];
            div << std::fixed << std::setprecision(4) << cell.reports[i].diversity[i];
            out << std::left << std::setw(20) << cell.name << std::setw(6) << band_name(band)
                << std::setw(11) << freq.str() << std::setw(11) << div.str() << std::setw(10)
                << cell.reports[i].objective_counts[i] << cell.distinct_clauses[i] << '\n';
        }
    }
    return out.str();
}

} // namespace lexalign
