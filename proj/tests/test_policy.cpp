#include "doctest.h"

#include "lexalign/error.hpp"
#include "lexalign/pipeline.hpp"
#include "lexalign/policy.hpp"
#include "lexalign/textio.hpp"

#include "test_util.hpp"

#include <cmath>
#include <map>
#include <string>
#include <vector>

using namespace lexalign;

namespace {

TokenVocab six_words() {
    return TokenVocab({"w0", "w1", "w2", "w3", "w4", "w5"});
}

// Random-init model: zero training epochs leave the seeded init untouched.
PolicyModel random_init_model(const TokenVocab& vocab, uint64_t seed) {
    PretrainConfig config;
    config.max_epochs = 0;
    config.seed = seed;
    return pretrain_reference(vocab, {{4, 5, 3}}, config);
}

std::vector<std::vector<int>> repeated_sequence(int copies) {
    std::vector<std::vector<int>> corpus;
    for (int i = 0; i < copies; ++i) corpus.push_back({4, 5, 6, 7, 8, 3});
    return corpus;
}

} // namespace

TEST_CASE("token vocabulary reserves four special ids") {
    const auto vocab = six_words();
    CHECK(vocab.size() == 10);
    CHECK(vocab.token(TokenVocab::kPad) == "<pad>");
    CHECK(vocab.token(TokenVocab::kPrompt) == "<prompt>");
    CHECK(vocab.token(TokenVocab::kSep) == "<sep>");
    CHECK(vocab.token(TokenVocab::kEos) == "<eos>");
    CHECK(vocab.token(4) == "w0");
    CHECK(vocab.token(9) == "w5");
    CHECK(vocab.id("w3") == 7);
    CHECK(vocab.is_special(0));
    CHECK(!vocab.is_special(4));

    CHECK(vocab.encode("W0 w5  w1") == std::vector<int>{4, 9, 5});
    CHECK(vocab.decode({1, 4, 2, 9, 3}) == "w0 w5");
    CHECK(vocab.decode({1, 2, 3}) == "");

    CHECK_THROWS_AS(vocab.id("unknown"), DataError);
    CHECK_THROWS_AS(vocab.encode("w0 mystery"), DataError);
    CHECK_THROWS_AS(vocab.token(10), DataError);
    CHECK_THROWS_AS(vocab.token(-1), DataError);
    CHECK_THROWS_AS(TokenVocab({"dup", "dup"}), DataError);
    CHECK_THROWS_AS(TokenVocab({"<eos>"}), DataError);
}

TEST_CASE("prompt ids wrap the complex sentence in prompt and separator") {
    const auto vocab = six_words();
    CHECK(build_prompt_ids(vocab, "w2 w0") == std::vector<int>{1, 6, 4, 2});
    CHECK(build_prompt_ids(vocab, "") == std::vector<int>{1, 2});
}

TEST_CASE("log_softmax normalizes and validates temperature") {
    Eigen::VectorXd logits(4);
    logits << 1.0, -2.0, 0.5, 3.0;
    const auto logp = log_softmax(logits, 1.0);
    CHECK(std::abs(logp.array().exp().sum() - 1.0) <= 1e-12);
    CHECK(logp.maxCoeff() < 0.0);

    // Hotter sampling flattens the distribution: the top log-prob falls,
    // the bottom one rises.
    const auto hot = log_softmax(logits, 4.0);
    CHECK(hot.maxCoeff() < logp.maxCoeff());
    CHECK(hot.minCoeff() > logp.minCoeff());
    CHECK(std::abs(hot.array().exp().sum() - 1.0) <= 1e-12);

    CHECK_THROWS_AS(log_softmax(logits, 0.0), NumericError);
    CHECK_THROWS_AS(log_softmax(logits, -1.0), NumericError);
}

TEST_CASE("pretraining memorizes a single repeated sequence") {
    const auto vocab = six_words();
    PretrainConfig config;
    config.learning_rate = 0.02;
    config.max_epochs = 300;
    config.seed = 1;
    const auto model = pretrain_reference(vocab, repeated_sequence(8), config);
    const double ppx = perplexity(model, repeated_sequence(1));
    CHECK(ppx >= 1.0);
    CHECK(ppx < 1.2);
    // Value head and adapters come back inert.
    CHECK(model.value_w.norm() == 0.0);
    CHECK(model.value_b == 0.0);
    for (Band band : kAllBands) {
        CHECK(model.adapter(band).up.norm() == 0.0);
    }
}

TEST_CASE("pretraining validates its corpus") {
    const auto vocab = six_words();
    CHECK_THROWS_AS(pretrain_reference(vocab, {}, PretrainConfig{}), DataError);
    std::vector<std::vector<int>> with_empty{{4, 5}, {}};
    CHECK_THROWS_AS(pretrain_reference(vocab, with_empty, PretrainConfig{}), DataError);
    std::vector<std::vector<int>> oov{{4, 99}};
    CHECK_THROWS_AS(pretrain_reference(vocab, oov, PretrainConfig{}), DataError);
    CHECK_THROWS_AS(perplexity(random_init_model(vocab, 1), {}), DataError);
}

TEST_CASE("pretraining is deterministic") {
    const auto vocab = six_words();
    PretrainConfig config;
    config.max_epochs = 3;
    const auto a = pretrain_reference(vocab, repeated_sequence(4), config);
    const auto b = pretrain_reference(vocab, repeated_sequence(4), config);
    CHECK(backbone_hash(a) == backbone_hash(b));
    CHECK((a.embed - b.embed).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("zero adapters leave the policy equal to the reference") {
    const auto model = random_init_model(six_words(), 3);
    for (const std::vector<int>& history :
         {std::vector<int>{}, std::vector<int>{1, 4, 5}, std::vector<int>{1, 4, 5, 6, 7, 8}}) {
        const auto h = model.hidden(history);
        const auto ref = model.reference_logits(h);
        for (Band band : kAllBands) {
            CHECK((model.band_logits(h, band) - ref).cwiseAbs().maxCoeff() == 0.0);
        }
    }
}

TEST_CASE("held-out perplexity stays near training perplexity") {
    const auto spec = load_micro_spec(data_path("micro_language.txt"));
    const auto vocab = vocab_from_spec(spec);
    const auto pairs = generate_corpus(spec, 150);
    const auto seqs = pretrain_sequences(vocab, pairs);
    std::vector<std::vector<int>> train_seqs(seqs.begin(), seqs.begin() + 120);
    std::vector<std::vector<int>> held_out(seqs.begin() + 120, seqs.end());

    PretrainConfig config;
    config.learning_rate = 0.02;
    config.max_epochs = 80;
    const auto model = pretrain_reference(vocab, train_seqs, config);
    const double train_ppx = perplexity(model, train_seqs);
    const double held_ppx = perplexity(model, held_out);
    CHECK(train_ppx < 6.0); // far below the 76-token uniform baseline
    CHECK(held_ppx <= 2.0 * train_ppx);
}

TEST_CASE("generation is deterministic and respects its budget") {
    const auto model = random_init_model(six_words(), 9);
    const std::vector<int> prompt{1, 4, 5, 2};
    GenerationConfig config;
    config.top_k = 4;
    config.max_tokens = 12;
    config.seed = 42;

    const auto a = generate(model, Band::A, prompt, config);
    const auto b = generate(model, Band::A, prompt, config);
    CHECK(a.seq == b.seq);
    CHECK(a.logp_policy == b.logp_policy);
    CHECK(a.logp_ref == b.logp_ref);
    CHECK(a.terminal == b.terminal);

    CHECK(a.prompt == prompt);
    CHECK(!a.seq.empty());
    CHECK(a.seq.size() <= 12);
    CHECK(a.logp_policy.size() == a.seq.size());
    CHECK(a.logp_ref.size() == a.seq.size());
    for (double lp : a.logp_policy) CHECK(lp <= 0.0);
    for (double lp : a.logp_ref) CHECK(lp <= 0.0);
    if (a.terminal) {
        CHECK(a.seq.back() == TokenVocab::kEos);
    } else {
        CHECK(a.seq.size() == 12);
    }
    for (size_t i = 0; i + 1 < a.seq.size(); ++i) {
        CHECK(a.seq[i] != TokenVocab::kEos);
    }
}

TEST_CASE("greedy decoding ignores the seed") {
    const auto model = random_init_model(six_words(), 10);
    const std::vector<int> prompt{1, 6, 2};
    GenerationConfig config;
    config.top_k = 1;
    config.max_tokens = 8;
    config.seed = 1;
    const auto a = generate(model, Band::B, prompt, config);
    config.seed = 999;
    const auto b = generate(model, Band::B, prompt, config);
    CHECK(a.seq == b.seq);
}

TEST_CASE("generation validates prompt length and sampling knobs") {
    const auto model = random_init_model(six_words(), 11);
    GenerationConfig config;
    std::vector<int> long_prompt(64, 4);
    CHECK_THROWS_AS(generate(model, Band::A, long_prompt, config), DataError);

    std::vector<int> near_limit(63, 4);
    near_limit[0] = 1;
    const auto roll = generate(model, Band::A, near_limit, config);
    CHECK(roll.seq.size() == 1); // only one slot left under the context bound

    GenerationConfig bad = config;
    bad.top_k = 0;
    CHECK_THROWS_AS(generate(model, Band::A, {1, 2}, bad), DataError);
    bad = config;
    bad.max_tokens = 0;
    CHECK_THROWS_AS(generate(model, Band::A, {1, 2}, bad), DataError);

    PolicyModel no_adapters = model;
    no_adapters.adapters[band_index(Band::C)].reset();
    CHECK_THROWS_AS(generate(no_adapters, Band::C, {1, 2}, config), DataError);
}

TEST_CASE("sampling frequencies track the softmax distribution") {
    const auto model = random_init_model(six_words(), 12);
    const std::vector<int> prompt{1};
    const auto h = model.hidden(prompt);
    const auto logp = log_softmax(model.band_logits(h, Band::A), 1.0);

    GenerationConfig config;
    config.top_k = model.vocab.size();
    config.max_tokens = 1;
    std::map<int, int> counts;
    const int trials = 10000;
    for (int i = 0; i < trials; ++i) {
        config.seed = static_cast<uint64_t>(i);
        const auto roll = generate(model, Band::A, prompt, config);
        REQUIRE(roll.seq.size() == 1);
        counts[roll.seq[0]] += 1;
    }
    for (int id = 0; id < model.vocab.size(); ++id) {
        const double expected = std::exp(logp(id));
        const double observed = counts.count(id) ? counts[id] / double(trials) : 0.0;
        CHECK(std::abs(observed - expected) < 0.03);
    }
}

TEST_CASE("scoring a rollout reproduces its sampled log-probabilities") {
    const auto model = random_init_model(six_words(), 13);
    const std::vector<int> prompt{1, 5, 2};
    GenerationConfig config;
    config.top_k = 6;
    config.max_tokens = 10;
    config.seed = 7;
    const auto roll = generate(model, Band::C, prompt, config);
    REQUIRE(!roll.seq.empty());

    const auto pol = policy_logprobs(model, Band::C, prompt, roll.seq, config.temperature);
    const auto ref = reference_logprobs(model, prompt, roll.seq, config.temperature);
    REQUIRE(pol.size() == roll.seq.size());
    REQUIRE(ref.size() == roll.seq.size());
    for (size_t t = 0; t < roll.seq.size(); ++t) {
        CHECK(pol[t] == roll.logp_policy[t]);
        CHECK(ref[t] == roll.logp_ref[t]);
        CHECK(pol[t] == ref[t]); // adapters are zero at init
    }

    CHECK_THROWS_AS(policy_logprobs(model, Band::C, prompt, {4, 99}, 1.0), DataError);
    CHECK_THROWS_AS(reference_logprobs(model, prompt, {-1}, 1.0), DataError);
}

TEST_CASE("value estimates are one per generated token and start at zero") {
    const auto model = random_init_model(six_words(), 14);
    const std::vector<int> prompt{1, 4, 2};
    const std::vector<int> seq{5, 6, 3};
    const auto values = value_estimates(model, prompt, seq);
    REQUIRE(values.size() == seq.size());
    for (double v : values) CHECK(v == 0.0);
}

TEST_CASE("adapters steer only their own band") {
    auto model = random_init_model(six_words(), 15);
    const std::vector<int> prompt{1, 7, 2};
    GenerationConfig config;
    config.top_k = 5;
    config.max_tokens = 8;
    config.seed = 21;
    const auto before_b = generate(model, Band::B, prompt, config);
    const auto before_c = generate(model, Band::C, prompt, config);
    const std::vector<int> probe{4, 5, 6};
    const auto before_probe = policy_logprobs(model, Band::A, prompt, probe, 1.0);

    model.adapter(Band::A).up(0, 0) = 5.0;

    const auto after_b = generate(model, Band::B, prompt, config);
    const auto after_c = generate(model, Band::C, prompt, config);
    CHECK(after_b.seq == before_b.seq);
    CHECK(after_b.logp_policy == before_b.logp_policy);
    CHECK(after_c.seq == before_c.seq);
    CHECK(after_c.logp_policy == before_c.logp_policy);

    const auto after_probe = policy_logprobs(model, Band::A, prompt, probe, 1.0);
    bool changed = false;
    for (size_t t = 0; t < probe.size(); ++t) {
        if (after_probe[t] != before_probe[t]) changed = true;
    }
    CHECK(changed);
}

TEST_CASE("the backbone hash ignores adapters and the value head") {
    auto model = random_init_model(six_words(), 16);
    const uint64_t h0 = backbone_hash(model);
    model.adapter(Band::A).up(0, 0) = 3.0;
    model.adapter(Band::B).down(0, 0) = -2.0;
    model.value_w(0) = 1.0;
    model.value_b = 0.25;
    CHECK(backbone_hash(model) == h0);
    model.w2(0, 0) += 1.0;
    CHECK(backbone_hash(model) != h0);
}

TEST_CASE("policy checkpoints round-trip byte-exactly") {
    auto model = random_init_model(six_words(), 17);
    model.adapter(Band::A).up(2, 1) = 0.75;
    model.value_w(3) = -0.5;
    model.value_b = 0.125;
    model.adapters[band_index(Band::B)].reset(); // partial adapter coverage survives

    const auto path = tmp_path("policy.ckpt");
    save_policy(model, path);
    const auto bytes = read_file(path);
    const auto loaded = load_policy(path);

    CHECK(loaded.context == model.context);
    CHECK(loaded.embed_dim == model.embed_dim);
    CHECK(loaded.hidden_dim == model.hidden_dim);
    CHECK(loaded.rank == model.rank);
    CHECK(loaded.vocab.tokens() == model.vocab.tokens());
    CHECK(backbone_hash(loaded) == backbone_hash(model));
    CHECK(loaded.adapters[0].has_value());
    CHECK(!loaded.adapters[1].has_value());
    CHECK(loaded.adapters[2].has_value());
    CHECK((loaded.adapter(Band::A).up - model.adapter(Band::A).up).cwiseAbs().maxCoeff() ==
          0.0);
    CHECK((loaded.value_w - model.value_w).cwiseAbs().maxCoeff() == 0.0);
    CHECK(loaded.value_b == model.value_b);

    const auto repath = tmp_path("policy_resave.ckpt");
    save_policy(loaded, repath);
    CHECK(read_file(repath) == bytes);

    // The reloaded model behaves identically.
    GenerationConfig config;
    config.seed = 5;
    const auto a = generate(model, Band::A, {1, 4, 2}, config);
    const auto b = generate(loaded, Band::A, {1, 4, 2}, config);
    CHECK(a.seq == b.seq);
    CHECK(a.logp_policy == b.logp_policy);
}

TEST_CASE("policy loading rejects malformed checkpoints") {
    const auto bad = tmp_path("policy_bad.ckpt");
    write_file(bad, "wrong-header\n");
    CHECK_THROWS_AS(load_policy(bad), DataError);

    write_file(bad, "lexalign-policy-v1\nvocab 2\ntoken 0 <pad>\ntoken 5 <eos>\n");
    CHECK_THROWS_AS(load_policy(bad), DataError); // out-of-order token ids

    write_file(bad, "lexalign-policy-v1\nvocab 1\ntoken 0 <pad>\n");
    CHECK_THROWS_AS(load_policy(bad), DataError); // too small for reserved ids

    const auto model = random_init_model(six_words(), 18);
    const auto good = tmp_path("policy_good.ckpt");
    save_policy(model, good);
    const auto text = read_file(good);
    const auto cut = text.find("tensor value_w");
    REQUIRE(cut != std::string::npos);
    write_file(bad, text.substr(0, cut));
    CHECK_THROWS_AS(load_policy(bad), DataError); // missing required tensors
}
