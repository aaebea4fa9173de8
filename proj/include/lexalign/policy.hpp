#pragma once

#include "lexalign/levels.hpp"
#include "lexalign/textio.hpp"

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lexalign {

inline constexpr int kMaxSeqLen = 64;

// Token table with four reserved ids ahead of the word tokens.
class TokenVocab {
public:
    static constexpr int kPad = 0;
    static constexpr int kPrompt = 1;
    static constexpr int kSep = 2;
    static constexpr int kEos = 3;
    static constexpr int kNumSpecials = 4;

    TokenVocab() = default;
    // words: non-special tokens in the order that fixes their ids.
    explicit TokenVocab(const std::vector<std::string>& words);

    int size() const { return static_cast<int>(tokens_.size()); }
    const std::string& token(int id) const;
    int id(const std::string& token) const;  // DataError on unknown token
    bool is_special(int id) const { return id >= 0 && id < kNumSpecials; }

    std::vector<int> encode(const std::string& text) const;
    std::string decode(const std::vector<int>& ids) const;  // skips specials

    const std::vector<std::string>& tokens() const { return tokens_; }

private:
    std::vector<std::string> tokens_;
    std::map<std::string, int> ids_;
};

// [prompt-prefix] complex tokens [separator]
std::vector<int> build_prompt_ids(const TokenVocab& vocab, const std::string& complex_text);

struct Adapter {
    Eigen::MatrixXd up;    // V x r, zero at init so the delta vanishes
    Eigen::MatrixXd down;  // r x H
};

// Windowed feedforward language model: the last `context` token embeddings
// feed one tanh layer; the output projection carries one additive low-rank
// delta per band. The backbone stays frozen through RL.
struct PolicyModel {
    int context = 4;
    int embed_dim = 16;
    int hidden_dim = 32;
    int rank = 4;
    TokenVocab vocab;

    Eigen::MatrixXd embed;  // V x d
    Eigen::MatrixXd w1;     // H x (context*d)
    Eigen::VectorXd b1;     // H
    Eigen::MatrixXd w2;     // V x H
    Eigen::VectorXd b2;     // V

    std::array<std::optional<Adapter>, 3> adapters;  // indexed by band_index

    Eigen::VectorXd value_w;  // H
    double value_b = 0.0;

    const Adapter& adapter(Band band) const;  // DataError when absent
    Adapter& adapter(Band band);

    // Hidden state for the window of the last `context` ids (shorter
    // histories are left-padded with the pad token).
    Eigen::VectorXd hidden(const std::vector<int>& history) const;
    Eigen::VectorXd reference_logits(const Eigen::VectorXd& h) const;
    Eigen::VectorXd band_logits(const Eigen::VectorXd& h, Band band) const;
    double value(const Eigen::VectorXd& h) const;
};

struct GenerationConfig {
    int top_k = 8;
    int max_tokens = 24;
    double temperature = 1.0;
    uint64_t seed = 0;
};

struct Rollout {
    std::vector<int> prompt;
    std::vector<int> seq;               // generated ids, EOS included when reached
    std::vector<double> logp_policy;    // full-softmax log-probs at sampling time
    std::vector<double> logp_ref;
    bool terminal = false;              // EOS emitted
};

struct PretrainConfig {
    double learning_rate = 0.02;
    int max_epochs = 300;
    int minibatch = 64;
    double val_fraction = 0.1;
    uint64_t seed = 1;
};

// Maximum-likelihood next-token training of the backbone; adapters and the
// value head come back zeroed so policy and reference start identical.
PolicyModel pretrain_reference(const TokenVocab& vocab,
                               const std::vector<std::vector<int>>& corpus,
                               const PretrainConfig& config);

Eigen::VectorXd log_softmax(const Eigen::VectorXd& logits, double temperature);

Rollout generate(const PolicyModel& model, Band band, const std::vector<int>& prompt,
                 const GenerationConfig& config);

std::vector<double> policy_logprobs(const PolicyModel& model, Band band,
                                    const std::vector<int>& prompt,
                                    const std::vector<int>& seq, double temperature = 1.0);

std::vector<double> reference_logprobs(const PolicyModel& model,
                                       const std::vector<int>& prompt,
                                       const std::vector<int>& seq,
                                       double temperature = 1.0);

// Value-head output at each state preceding a generated token.
std::vector<double> value_estimates(const PolicyModel& model, const std::vector<int>& prompt,
                                    const std::vector<int>& seq);

// Mean exp(NLL) of next-token prediction under the reference backbone.
double perplexity(const PolicyModel& model, const std::vector<std::vector<int>>& corpus);

void save_policy(const PolicyModel& model, const std::string& path);
PolicyModel load_policy(const std::string& path);

// Digest of the frozen tensors' exact text serialization.
uint64_t backbone_hash(const PolicyModel& model);

} // namespace lexalign
