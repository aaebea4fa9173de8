// lexalign: constraint-aligned sentence simplification toolkit.
//
// Subcommands cover the full pipeline: compiling leveled vocabularies
// into constraint sets, training the pairwise sentence ranker, running
// the adapter-based RL loop, generating simplifications, scoring output
// files, and reproducing the reward-design ablation grid.

#include "CLI11.hpp"

#include "lexalign/constraints.hpp"
#include "lexalign/corpus.hpp"
#include "lexalign/error.hpp"
#include "lexalign/features.hpp"
#include "lexalign/metrics.hpp"
#include "lexalign/normalize.hpp"
#include "lexalign/pipeline.hpp"
#include "lexalign/policy.hpp"
#include "lexalign/ppo.hpp"
#include "lexalign/ranker.hpp"
#include "lexalign/reward.hpp"
#include "lexalign/textio.hpp"
#include "lexalign/vocab.hpp"

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

namespace {

using namespace lexalign;

Band band_from_flag(const std::string& code) {
    auto band = parse_band(code);
    if (!band) throw UsageError("unknown band '" + code + "' (expected A, B, or C)");
    return *band;
}

RewardMode mode_from_flag(const std::string& code) {
    if (code == "constant") return RewardMode::constant;
    if (code == "dynamic") return RewardMode::dynamic;
    throw UsageError("unknown reward mode '" + code + "' (expected constant or dynamic)");
}

void require_file(const std::string& path, const std::string& what) {
    if (path.empty()) throw UsageError("missing path for " + what);
    if (!std::filesystem::is_regular_file(path))
        throw DataError(what + " not found: " + path);
}

void require_writable(const std::string& path, const std::string& what) {
    if (path.empty()) throw UsageError("missing path for " + what);
    auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty() && !std::filesystem::is_directory(parent))
        throw DataError("output directory for " + what + " does not exist: " +
                        parent.string());
}

// train.csv -> train-A.csv
std::string path_with_band(const std::string& path, Band band) {
    std::filesystem::path p(path);
    auto stem = p.stem().string();
    auto ext = p.extension().string();
    p.replace_filename(stem + "-" + band_name(band) + ext);
    return p.string();
}

// Shared inputs of the toy-environment subcommands.
struct EnvArgs {
    std::string micro_spec;
    std::string vocab;
    std::string stopwords;
    std::string exceptions;
    std::string corpus;
    long corpus_size = 60;
};

void add_env_flags(CLI::App* cmd, EnvArgs& args) {
    cmd->add_option("--micro-spec", args.micro_spec, "Micro-language spec file")->required();
    cmd->add_option("--vocab", args.vocab, "Leveled vocabulary TSV")->required();
    cmd->add_option("--stopwords", args.stopwords, "Stopword list, one per line")->required();
    cmd->add_option("--exceptions", args.exceptions, "Lemma exception TSV")->required();
    cmd->add_option("--corpus", args.corpus,
                    "Precomputed parallel corpus TSV (default: generate from the spec)");
    cmd->add_option("--corpus-size", args.corpus_size,
                    "Pairs to generate when no corpus file is given");
}

ToyEnvironment environment_from_args(const EnvArgs& args) {
    require_file(args.micro_spec, "micro-language spec");
    require_file(args.vocab, "vocabulary file");
    require_file(args.stopwords, "stopword file");
    require_file(args.exceptions, "lemma exception file");
    if (!args.corpus.empty()) require_file(args.corpus, "corpus file");
    return build_toy_environment(args.micro_spec, args.vocab, args.stopwords,
                                 args.exceptions, args.corpus_size, args.corpus);
}

// RL hyperparameters, all defaulted to the reference configuration.
struct RlArgs {
    std::string reward_mode = "dynamic";
    bool no_kl = false;
    bool no_sentence_reward = false;
    double alpha = 1.2;
    double lambda = 1.5;
    double gamma = 1.0;
    double phrase_multiplier = 1.5;
    double penalty = -1.0;
    int gap = kDefaultPhraseGap;
    int top_k = 8;
    int max_tokens = 24;
    double temperature = 1.0;
    double lr = 3e-5;
    double clip = 0.2;
    double gae_lambda = 0.95;
    int epochs = 30;
    int rollouts = 24;
    int passes = 4;
    int minibatch = 64;
    double value_weight = 0.5;
    double grad_clip = 1.0;
    double kl_ceiling = 20.0;
    uint64_t seed = 0;
    double pretrain_lr = 0.02;
    int pretrain_epochs = 300;
    uint64_t pretrain_seed = 1;
    int ranker_pairs = 6;
    int ranker_epochs = 200;
    double ranker_lr = 0.5;
};

void add_rl_flags(CLI::App* cmd, RlArgs& args) {
    cmd->add_option("--reward-mode", args.reward_mode,
                    "Constraint reward shape: constant or dynamic");
    cmd->add_flag("--no-kl", args.no_kl, "Drop the reference KL penalty from the reward");
    cmd->add_flag("--no-sentence-reward", args.no_sentence_reward,
                  "Drop the ranker term from the reward");
    cmd->add_option("--alpha", args.alpha, "Usage decay rate of the dynamic reward");
    cmd->add_option("--lambda", args.lambda, "Weight of the constraint reward");
    cmd->add_option("--gamma", args.gamma, "Weight of the sentence reward");
    cmd->add_option("--phrase-multiplier", args.phrase_multiplier,
                    "Base reward factor for phrase clauses");
    cmd->add_option("--penalty", args.penalty, "Per-match above-level penalty");
    cmd->add_option("--gap", args.gap, "Maximum token gap inside phrase matches");
    cmd->add_option("--top-k", args.top_k, "Sampling pool size during rollouts");
    cmd->add_option("--max-tokens", args.max_tokens, "Generation budget per rollout");
    cmd->add_option("--temperature", args.temperature, "Sampling temperature");
    cmd->add_option("--lr", args.lr, "Adam learning rate for the PPO updates");
    cmd->add_option("--clip", args.clip, "PPO ratio clip epsilon");
    cmd->add_option("--gae-lambda", args.gae_lambda, "GAE smoothing parameter");
    cmd->add_option("--epochs", args.epochs, "Training epochs per band");
    cmd->add_option("--rollouts", args.rollouts, "Rollouts per epoch");
    cmd->add_option("--passes", args.passes, "Optimization passes per epoch");
    cmd->add_option("--minibatch", args.minibatch, "Token minibatch size");
    cmd->add_option("--value-weight", args.value_weight, "Value loss weight");
    cmd->add_option("--grad-clip", args.grad_clip, "Global gradient norm bound");
    cmd->add_option("--kl-ceiling", args.kl_ceiling,
                    "Per-sequence KL bound logged as breached when exceeded");
    cmd->add_option("--seed", args.seed, "Master seed for rollouts and updates");
    cmd->add_option("--pretrain-lr", args.pretrain_lr, "Backbone pretraining learning rate");
    cmd->add_option("--pretrain-epochs", args.pretrain_epochs, "Backbone pretraining epochs");
    cmd->add_option("--pretrain-seed", args.pretrain_seed, "Backbone pretraining seed");
    cmd->add_option("--ranker-pairs", args.ranker_pairs, "Ranking pairs per target sentence");
    cmd->add_option("--ranker-epochs", args.ranker_epochs, "Ranker training epochs");
    cmd->add_option("--ranker-lr", args.ranker_lr, "Ranker learning rate");
}

TrainerConfig trainer_from_args(const RlArgs& args) {
    TrainerConfig config;
    config.weights.lambda = args.lambda;
    config.weights.gamma = args.gamma;
    config.reward.alpha = args.alpha;
    config.reward.phrase_multiplier = args.phrase_multiplier;
    config.reward.above_level_penalty = args.penalty;
    config.reward.mode = mode_from_flag(args.reward_mode);
    config.reward.phrase_gap = args.gap;
    config.generation.top_k = args.top_k;
    config.generation.max_tokens = args.max_tokens;
    config.generation.temperature = args.temperature;
    config.ppo.clip_epsilon = args.clip;
    config.ppo.learning_rate = args.lr;
    config.ppo.epochs = args.epochs;
    config.ppo.rollouts_per_epoch = args.rollouts;
    config.ppo.minibatch = args.minibatch;
    config.ppo.passes = args.passes;
    config.ppo.value_loss_weight = args.value_weight;
    config.ppo.gae_lambda = args.gae_lambda;
    config.ppo.grad_clip = args.grad_clip;
    config.ppo.kl_ceiling = args.kl_ceiling;
    config.ppo.seed = args.seed;
    config.use_kl = !args.no_kl;
    config.use_sentence_reward = !args.no_sentence_reward;
    return config;
}

std::array<RankerModel, 3> rankers_from_env(const ToyEnvironment& env, const RlArgs& args) {
    RankerConfig config;
    config.learning_rate = args.ranker_lr;
    config.epochs = args.ranker_epochs;
    config.seed = args.seed;
    auto labeled = labeled_from_pairs(env.pairs);
    return train_band_rankers(labeled, *env.extractor, config, args.ranker_pairs, args.seed);
}

int cmd_compile_vocab(const std::string& vocab_path, const std::string& band_code,
                      const std::string& out_path) {
    require_file(vocab_path, "vocabulary file");
    require_writable(out_path, "constraint artifact");
    Band band = band_from_flag(band_code);
    auto entries = load_vocabulary(vocab_path);
    auto set = compile_constraints(entries, band);
    save_constraints(set, out_path);
    long words = 0;
    long phrases = 0;
    for (const auto& clause : set.clauses)
        (clause.kind == EntryKind::word ? words : phrases) += 1;
    std::cout << "band " << band_name(band) << ": m=" << set.m() << " clauses (" << words
              << " word, " << phrases << " phrase)";
    if (set.above)
        std::cout << "; above-level set: " << set.above->m() << " clauses";
    std::cout << "\nwrote " << out_path << "\n";
    return 0;
}

int cmd_train_ranker(const std::string& data_path, const std::string& vocab_path,
                     const std::string& stopword_path, const std::string& exception_path,
                     const std::string& target_code, const std::string& out_path,
                     int pairs_per_target, double lr, int epochs, uint64_t seed) {
    require_file(data_path, "labeled sentence file");
    require_file(vocab_path, "vocabulary file");
    require_file(stopword_path, "stopword file");
    require_file(exception_path, "lemma exception file");
    require_writable(out_path, "ranker checkpoint");
    Band target = band_from_flag(target_code);

    auto normalizer = std::make_shared<const Normalizer>(
        Normalizer::from_files(stopword_path, exception_path));
    auto entries = load_vocabulary(vocab_path);
    SentenceFeatureExtractor extractor(normalizer, entries);

    auto labeled = load_labeled(data_path);
    auto pairs = build_pairs(labeled, target, pairs_per_target, seed);
    RankerConfig config;
    config.learning_rate = lr;
    config.epochs = epochs;
    config.seed = seed;
    auto trained = train_ranker(pairs, extractor, config);
    save_ranker(trained.model, out_path);

    std::cout << "target band " << band_name(target) << ": " << pairs.size() << " pairs, "
              << trained.losses.size() << " epochs, loss "
              << format_double(trained.losses.front()) << " -> "
              << format_double(trained.losses.back()) << "\n";
    std::cout << "wrote " << out_path << "\n";
    return 0;
}

int cmd_train_policy(const EnvArgs& env_args, const RlArgs& rl_args,
                     const std::vector<std::string>& band_codes, const std::string& init_path,
                     const std::string& out_path, const std::string& log_path) {
    require_writable(out_path, "policy checkpoint");
    if (!log_path.empty()) require_writable(log_path, "training log");
    if (!init_path.empty()) require_file(init_path, "initial checkpoint");

    std::vector<Band> bands;
    if (band_codes.empty()) {
        bands.assign(kAllBands.begin(), kAllBands.end());
    } else {
        for (const auto& code : band_codes) bands.push_back(band_from_flag(code));
    }

    auto env = environment_from_args(env_args);

    PolicyModel start;
    if (init_path.empty()) {
        PretrainConfig pcfg;
        pcfg.learning_rate = rl_args.pretrain_lr;
        pcfg.max_epochs = rl_args.pretrain_epochs;
        pcfg.seed = rl_args.pretrain_seed;
        auto sequences = pretrain_sequences(env.vocab, env.pairs);
        start = pretrain_reference(env.vocab, sequences, pcfg);
        std::cout << "pretrained backbone on " << sequences.size() << " sequences, perplexity "
                  << format_double(perplexity(start, sequences)) << "\n";
    } else {
        start = load_policy(init_path);
        if (start.vocab.tokens() != env.vocab.tokens())
            throw DataError("checkpoint vocabulary does not match the environment: " +
                            init_path);
    }

    auto config = trainer_from_args(rl_args);

    std::array<RankerModel, 3> rankers;
    TrainSetup setup;
    setup.bands = &env.bands;
    setup.normalizer = env.normalizer.get();
    setup.extractor = env.extractor.get();
    if (config.use_sentence_reward) {
        rankers = rankers_from_env(env, rl_args);
        for (Band band : kAllBands)
            setup.rankers[band_index(band)] = &rankers[band_index(band)];
    }
    auto prompts = prompts_from_pairs(env.vocab, env.pairs);
    for (Band band : kAllBands) setup.prompts[band_index(band)] = prompts;

    auto outcome = train(start, bands, setup, config);

    // The checkpoint advertises exactly the bands this run trained.
    std::array<bool, 3> trained{};
    for (Band band : bands) trained[band_index(band)] = true;
    for (Band band : kAllBands)
        if (!trained[band_index(band)]) outcome.model.adapters[band_index(band)].reset();

    save_policy(outcome.model, out_path);
    for (const auto& run : outcome.bands) {
        const auto& last = run.log.back();
        std::cout << "band " << band_name(run.band) << ": " << run.log.size()
                  << " epochs, mean reward " << format_double(last.mean_reward)
                  << ", mean KL " << format_double(last.mean_kl) << ", objective "
                  << last.objective << "\n";
        if (!log_path.empty()) {
            auto band_log = path_with_band(log_path, run.band);
            write_trainlog_csv(run.log, band_log);
            std::cout << "wrote " << band_log << "\n";
        }
    }
    std::cout << "wrote " << out_path << "\n";
    return 0;
}

int cmd_simplify(const std::string& checkpoint_path, const std::string& band_code,
                 const std::string& input_path, const std::string& output_path,
                 uint64_t seed, int top_k, int max_tokens, double temperature) {
    require_file(checkpoint_path, "policy checkpoint");
    require_file(input_path, "input sentence file");
    if (!output_path.empty()) require_writable(output_path, "output sentence file");
    Band band = band_from_flag(band_code);

    auto model = load_policy(checkpoint_path);
    model.adapter(band);  // fail fast on a checkpoint without this band

    GenerationConfig config;
    config.top_k = top_k;
    config.max_tokens = max_tokens;
    config.temperature = temperature;

    auto lines = read_lines(input_path);
    std::string out;
    for (size_t i = 0; i < lines.size(); ++i) {
        std::string text;
        if (!trim(lines[i]).empty()) {
            auto prompt = build_prompt_ids(model.vocab, lines[i]);
            config.seed = mix_seed(seed, 0x73696d70u, i);
            auto rollout = generate(model, band, prompt, config);
            text = model.vocab.decode(rollout.seq);
        }
        out += text;
        out += '\n';
    }
    if (output_path.empty()) {
        std::cout << out;
    } else {
        write_file(output_path, out);
        std::cout << "wrote " << lines.size() << " lines to " << output_path << "\n";
    }
    return 0;
}

int cmd_evaluate(const std::string& outputs_path, const std::array<std::string, 3>& set_paths,
                 const std::string& stopword_path, const std::string& exception_path,
                 const std::string& target_code, const std::string& csv_path, int gap) {
    require_file(outputs_path, "outputs file");
    for (Band band : kAllBands)
        require_file(set_paths[band_index(band)],
                     std::string("constraint artifact for band ") + band_name(band));
    require_file(stopword_path, "stopword file");
    require_file(exception_path, "lemma exception file");
    if (!csv_path.empty()) require_writable(csv_path, "report CSV");
    Band target = band_from_flag(target_code);

    BandSets bands;
    for (Band band : kAllBands) {
        auto set = load_constraints(set_paths[band_index(band)]);
        if (set.band != band)
            throw DataError("constraint artifact " + set_paths[band_index(band)] +
                            " holds band " + band_name(set.band) + ", expected " +
                            band_name(band));
        bands.at(band) = std::move(set);
    }

    auto normalizer = Normalizer::from_files(stopword_path, exception_path);
    std::vector<NormalizedSequence> seqs;
    for (const auto& line : read_lines(outputs_path)) {
        if (trim(line).empty()) continue;
        seqs.push_back(normalizer.normalize(line));
    }

    auto report = make_report(seqs, bands, target, gap);
    std::cout << report_to_table(report);
    if (!csv_path.empty()) {
        write_file(csv_path, report_to_csv(report));
        std::cout << "wrote " << csv_path << "\n";
    }
    return 0;
}

int cmd_ablate(const EnvArgs& env_args, const RlArgs& rl_args, const std::string& out_path,
               uint64_t eval_seed) {
    require_writable(out_path, "ablation CSV");
    auto env = environment_from_args(env_args);

    PretrainConfig pcfg;
    pcfg.learning_rate = rl_args.pretrain_lr;
    pcfg.max_epochs = rl_args.pretrain_epochs;
    pcfg.seed = rl_args.pretrain_seed;
    auto sequences = pretrain_sequences(env.vocab, env.pairs);
    auto pretrained = pretrain_reference(env.vocab, sequences, pcfg);

    auto rankers = rankers_from_env(env, rl_args);
    std::array<const RankerModel*, 3> ranker_ptrs{};
    for (Band band : kAllBands) ranker_ptrs[band_index(band)] = &rankers[band_index(band)];

    auto base = trainer_from_args(rl_args);
    GenerationConfig eval_gen = base.generation;
    eval_gen.seed = eval_seed;

    auto cells = run_ablation_grid(env, pretrained, ranker_ptrs, base, eval_gen);
    write_file(out_path, ablation_to_csv(cells));
    std::cout << ablation_to_table(cells);
    std::cout << "shared training seed " << rl_args.seed << ", evaluation seed " << eval_seed
              << "\n";
    std::cout << "wrote " << out_path << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Proficiency-aligned sentence simplification toolkit"};
    app.require_subcommand(1);

    // compile-vocab
    std::string cv_vocab, cv_band, cv_out;
    auto* compile = app.add_subcommand("compile-vocab",
                                       "Compile a leveled vocabulary into a constraint set");
    compile->add_option("--vocab", cv_vocab, "Leveled vocabulary TSV")->required();
    compile->add_option("--band", cv_band, "Target band: A, B, or C")->required();
    compile->add_option("--out", cv_out, "Constraint artifact path")->required();

    // train-ranker
    std::string tr_data, tr_vocab, tr_stop, tr_exc, tr_target, tr_out;
    int tr_pairs = 6;
    double tr_lr = 0.5;
    int tr_epochs = 200;
    uint64_t tr_seed = 0;
    auto* train_ranker_cmd =
        app.add_subcommand("train-ranker", "Train the pairwise sentence-level ranker");
    train_ranker_cmd->add_option("--data", tr_data, "Labeled sentences TSV (text, level)")
        ->required();
    train_ranker_cmd->add_option("--vocab", tr_vocab, "Leveled vocabulary TSV")->required();
    train_ranker_cmd->add_option("--stopwords", tr_stop, "Stopword list")->required();
    train_ranker_cmd->add_option("--exceptions", tr_exc, "Lemma exception TSV")->required();
    train_ranker_cmd->add_option("--target", tr_target, "Target band: A, B, or C")->required();
    train_ranker_cmd->add_option("--out", tr_out, "Ranker checkpoint path")->required();
    train_ranker_cmd->add_option("--pairs-per-target", tr_pairs,
                                 "Pairs drawn per target sentence");
    train_ranker_cmd->add_option("--lr", tr_lr, "Learning rate");
    train_ranker_cmd->add_option("--epochs", tr_epochs, "Maximum epochs");
    train_ranker_cmd->add_option("--seed", tr_seed, "Pair sampling seed");

    // train-policy
    EnvArgs tp_env;
    RlArgs tp_rl;
    std::vector<std::string> tp_bands;
    std::string tp_init, tp_out, tp_log;
    auto* train_policy_cmd =
        app.add_subcommand("train-policy", "Run the RL loop over one or more band adapters");
    add_env_flags(train_policy_cmd, tp_env);
    add_rl_flags(train_policy_cmd, tp_rl);
    train_policy_cmd->add_option("--band", tp_bands,
                                 "Band to train (repeatable; default: all three)");
    train_policy_cmd->add_option("--init", tp_init,
                                 "Start from this checkpoint instead of pretraining");
    train_policy_cmd->add_option("--out", tp_out, "Policy checkpoint path")->required();
    train_policy_cmd->add_option("--log", tp_log,
                                 "Training log CSV path (one file per band)");

    // simplify
    std::string si_ckpt, si_band, si_in, si_out;
    uint64_t si_seed = 0;
    int si_top_k = 8;
    int si_max_tokens = 24;
    double si_temp = 1.0;
    auto* simplify_cmd =
        app.add_subcommand("simplify", "Generate simplifications for a sentence file");
    simplify_cmd->add_option("--checkpoint", si_ckpt, "Policy checkpoint")->required();
    simplify_cmd->add_option("--band", si_band, "Target band: A, B, or C")->required();
    simplify_cmd->add_option("--input", si_in, "Input sentences, one per line")->required();
    simplify_cmd->add_option("--output", si_out, "Output path (default: standard output)");
    simplify_cmd->add_option("--seed", si_seed, "Sampling seed");
    simplify_cmd->add_option("--top-k", si_top_k, "Sampling pool size");
    simplify_cmd->add_option("--max-tokens", si_max_tokens, "Generation budget");
    simplify_cmd->add_option("--temperature", si_temp, "Sampling temperature");

    // evaluate
    std::string ev_outputs, ev_a, ev_b, ev_c, ev_stop, ev_exc, ev_target, ev_csv;
    int ev_gap = kDefaultPhraseGap;
    auto* evaluate_cmd =
        app.add_subcommand("evaluate", "Score an outputs file against all three bands");
    evaluate_cmd->add_option("--outputs", ev_outputs, "Generated sentences, one per line")
        ->required();
    evaluate_cmd->add_option("--constraints-a", ev_a, "Band A constraint artifact")->required();
    evaluate_cmd->add_option("--constraints-b", ev_b, "Band B constraint artifact")->required();
    evaluate_cmd->add_option("--constraints-c", ev_c, "Band C constraint artifact")->required();
    evaluate_cmd->add_option("--stopwords", ev_stop, "Stopword list")->required();
    evaluate_cmd->add_option("--exceptions", ev_exc, "Lemma exception TSV")->required();
    evaluate_cmd->add_option("--target", ev_target, "Band whose objective to total")
        ->required();
    evaluate_cmd->add_option("--csv", ev_csv, "Also write the report as CSV");
    evaluate_cmd->add_option("--gap", ev_gap, "Maximum token gap inside phrase matches");

    // ablate
    EnvArgs ab_env;
    RlArgs ab_rl;
    std::string ab_out;
    uint64_t ab_eval_seed = 99;
    auto* ablate_cmd = app.add_subcommand(
        "ablate", "Reproduce the reward-design grid: reward shape x sentence reward");
    add_env_flags(ablate_cmd, ab_env);
    add_rl_flags(ablate_cmd, ab_rl);
    ablate_cmd->add_option("--eval-seed", ab_eval_seed, "Sampling seed for the grid evaluation");
    ablate_cmd->add_option("--out", ab_out, "Grid CSV path")->required();

    try {
        app.parse(argc, argv);
        if (compile->parsed()) return cmd_compile_vocab(cv_vocab, cv_band, cv_out);
        if (train_ranker_cmd->parsed())
            return cmd_train_ranker(tr_data, tr_vocab, tr_stop, tr_exc, tr_target, tr_out,
                                    tr_pairs, tr_lr, tr_epochs, tr_seed);
        if (train_policy_cmd->parsed())
            return cmd_train_policy(tp_env, tp_rl, tp_bands, tp_init, tp_out, tp_log);
        if (simplify_cmd->parsed())
            return cmd_simplify(si_ckpt, si_band, si_in, si_out, si_seed, si_top_k,
                                si_max_tokens, si_temp);
        if (evaluate_cmd->parsed())
            return cmd_evaluate(ev_outputs, {ev_a, ev_b, ev_c}, ev_stop, ev_exc, ev_target,
                                ev_csv, ev_gap);
        if (ablate_cmd->parsed()) return cmd_ablate(ab_env, ab_rl, ab_out, ab_eval_seed);
        throw lexalign::UsageError("no subcommand given");
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    } catch (const lexalign::UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const lexalign::DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 2;
    } catch (const lexalign::NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
