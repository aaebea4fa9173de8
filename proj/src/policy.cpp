#include "lexalign/policy.hpp"

#include "lexalign/error.hpp"
#include "lexalign/optim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace lexalign {

namespace {

const char* kSpecialNames[TokenVocab::kNumSpecials] = {"<pad>", "<prompt>", "<sep>", "<eos>"};

} // namespace

TokenVocab::TokenVocab(const std::vector<std::string>& words) {
    for (int s = 0; s < kNumSpecials; ++s) tokens_.push_back(kSpecialNames[s]);
    for (const auto& w : words) tokens_.push_back(w);
    for (size_t i = 0; i < tokens_.size(); ++i) {
        if (!ids_.emplace(tokens_[i], static_cast<int>(i)).second) {
            throw DataError("duplicate token '" + tokens_[i] + "' in vocabulary");
        }
    }
}

const std::string& TokenVocab::token(int id) const {
    if (id < 0 || id >= size()) {
        throw DataError("token id " + std::to_string(id) + " outside vocabulary of size " +
                        std::to_string(size()));
    }
    return tokens_[static_cast<size_t>(id)];
}

int TokenVocab::id(const std::string& token) const {
    const auto it = ids_.find(token);
    if (it == ids_.end()) throw DataError("token '" + token + "' not in vocabulary");
    return it->second;
}

std::vector<int> TokenVocab::encode(const std::string& text) const {
    std::vector<int> out;
    for (const auto& tok : split_ws(to_lower_ascii(text))) out.push_back(id(tok));
    return out;
}

std::string TokenVocab::decode(const std::vector<int>& ids) const {
    std::string out;
    for (int i : ids) {
        if (is_special(i)) continue;
        if (!out.empty()) out += ' ';
        out += token(i);
    }
    return out;
}

std::vector<int> build_prompt_ids(const TokenVocab& vocab, const std::string& complex_text) {
    std::vector<int> ids;
    ids.push_back(TokenVocab::kPrompt);
    for (int t : vocab.encode(complex_text)) ids.push_back(t);
    ids.push_back(TokenVocab::kSep);
    return ids;
}

const Adapter& PolicyModel::adapter(Band band) const {
    const auto& slot = adapters[band_index(band)];
    if (!slot) throw DataError("no adapter for band " + band_name(band) + " in this model");
    return *slot;
}

Adapter& PolicyModel::adapter(Band band) {
    auto& slot = adapters[band_index(band)];
    if (!slot) throw DataError("no adapter for band " + band_name(band) + " in this model");
    return *slot;
}

Eigen::VectorXd PolicyModel::hidden(const std::vector<int>& history) const {
    Eigen::VectorXd x(static_cast<Eigen::Index>(context) * embed_dim);
    for (int i = 0; i < context; ++i) {
        const long pos = static_cast<long>(history.size()) - context + i;
        const int tok = pos >= 0 ? history[static_cast<size_t>(pos)] : TokenVocab::kPad;
        if (tok < 0 || tok >= vocab.size()) {
            throw DataError("token id " + std::to_string(tok) + " outside vocabulary");
        }
        x.segment(static_cast<Eigen::Index>(i) * embed_dim, embed_dim) = embed.row(tok);
    }
    return ((w1 * x + b1).array().tanh()).matrix();
}

Eigen::VectorXd PolicyModel::reference_logits(const Eigen::VectorXd& h) const {
    return w2 * h + b2;
}

Eigen::VectorXd PolicyModel::band_logits(const Eigen::VectorXd& h, Band band) const {
    const Adapter& a = adapter(band);
    return w2 * h + b2 + a.up * (a.down * h);
}

double PolicyModel::value(const Eigen::VectorXd& h) const {
    return value_w.dot(h) + value_b;
}

Eigen::VectorXd log_softmax(const Eigen::VectorXd& logits, double temperature) {
    if (!(temperature > 0.0)) throw NumericError("temperature must be positive");
    Eigen::VectorXd z = logits / temperature;
    const double zmax = z.maxCoeff();
    const double lse = std::log((z.array() - zmax).exp().sum()) + zmax;
    return (z.array() - lse).matrix();
}

namespace {

void fill_normal(Eigen::MatrixXd& m, SplitRng& rng, double scale) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = scale * rng.normal();
    }
}

double corpus_nll(const PolicyModel& model, const std::vector<std::vector<int>>& seqs) {
    double nll = 0.0;
    long positions = 0;
    std::vector<int> history;
    for (const auto& seq : seqs) {
        history.clear();
        for (int target : seq) {
            const Eigen::VectorXd h = model.hidden(history);
            const Eigen::VectorXd logp = log_softmax(model.reference_logits(h), 1.0);
            nll -= logp(target);
            ++positions;
            history.push_back(target);
        }
    }
    if (positions == 0) throw DataError("perplexity over an empty corpus");
    return nll / static_cast<double>(positions);
}

} // namespace

double perplexity(const PolicyModel& model, const std::vector<std::vector<int>>& corpus) {
    return std::exp(corpus_nll(model, corpus));
}

PolicyModel pretrain_reference(const TokenVocab& vocab,
                               const std::vector<std::vector<int>>& corpus,
                               const PretrainConfig& config) {
    if (corpus.empty()) throw DataError("pretraining corpus is empty");
    for (const auto& seq : corpus) {
        if (seq.empty()) throw DataError("pretraining corpus contains an empty sequence");
        for (int t : seq) {
            if (t < 0 || t >= vocab.size()) {
                throw DataError("pretraining token id " + std::to_string(t) +
                                " outside vocabulary");
            }
        }
    }

    PolicyModel model;
    model.vocab = vocab;
    const int V = vocab.size();
    const int d = model.embed_dim;
    const int H = model.hidden_dim;
    const int kd = model.context * d;

    SplitRng rng(mix_seed(config.seed, 0x70726530u));
    model.embed.resize(V, d);
    fill_normal(model.embed, rng, 0.1);
    model.w1.resize(H, kd);
    fill_normal(model.w1, rng, 1.0 / std::sqrt(static_cast<double>(kd)));
    model.b1 = Eigen::VectorXd::Zero(H);
    model.w2.resize(V, H);
    fill_normal(model.w2, rng, 1.0 / std::sqrt(static_cast<double>(H)));
    model.b2 = Eigen::VectorXd::Zero(V);
    for (Band band : kAllBands) {
        Adapter a;
        a.up = Eigen::MatrixXd::Zero(V, model.rank);
        a.down.resize(model.rank, H);
        fill_normal(a.down, rng, 0.01);
        model.adapters[band_index(band)] = std::move(a);
    }
    model.value_w = Eigen::VectorXd::Zero(H);
    model.value_b = 0.0;

    // Deterministic validation split; tiny corpora validate on themselves.
    std::vector<size_t> order(corpus.size());
    std::iota(order.begin(), order.end(), 0);
    for (size_t i = order.size(); i > 1; --i) {
        std::swap(order[i - 1], order[rng.index(i)]);
    }
    const size_t val_n = corpus.size() >= 5
                             ? static_cast<size_t>(static_cast<double>(corpus.size()) *
                                                   config.val_fraction)
                             : 0;
    std::vector<std::vector<int>> train_seqs;
    std::vector<std::vector<int>> val_seqs;
    for (size_t i = 0; i < order.size(); ++i) {
        (i < val_n ? val_seqs : train_seqs).push_back(corpus[order[i]]);
    }
    if (val_seqs.empty()) val_seqs = train_seqs;

    struct Position {
        size_t seq;
        size_t t;
    };
    std::vector<Position> positions;
    for (size_t s = 0; s < train_seqs.size(); ++s) {
        for (size_t t = 0; t < train_seqs[s].size(); ++t) positions.push_back({s, t});
    }

    AdamConfig adam{config.learning_rate};
    AdamState opt_embed, opt_w1, opt_b1, opt_w2, opt_b2;
    opt_embed.init(V, d);
    opt_w1.init(H, kd);
    opt_b1.init(H, 1);
    opt_w2.init(V, H);
    opt_b2.init(V, 1);

    double best_ppx = perplexity(model, val_seqs);
    int stall = 0;
    for (int epoch = 0; epoch < config.max_epochs; ++epoch) {
        for (size_t i = positions.size(); i > 1; --i) {
            std::swap(positions[i - 1], positions[rng.index(i)]);
        }
        for (size_t start = 0; start < positions.size();
             start += static_cast<size_t>(config.minibatch)) {
            const size_t stop =
                std::min(positions.size(), start + static_cast<size_t>(config.minibatch));
            Eigen::MatrixXd g_embed = Eigen::MatrixXd::Zero(V, d);
            Eigen::MatrixXd g_w1 = Eigen::MatrixXd::Zero(H, kd);
            Eigen::VectorXd g_b1 = Eigen::VectorXd::Zero(H);
            Eigen::MatrixXd g_w2 = Eigen::MatrixXd::Zero(V, H);
            Eigen::VectorXd g_b2 = Eigen::VectorXd::Zero(V);
            for (size_t i = start; i < stop; ++i) {
                const auto& seq = train_seqs[positions[i].seq];
                const size_t t = positions[i].t;
                Eigen::VectorXd x(kd);
                std::vector<int> window_ids(static_cast<size_t>(model.context));
                for (int j = 0; j < model.context; ++j) {
                    const long pos = static_cast<long>(t) - model.context + j;
                    const int tok = pos >= 0 ? seq[static_cast<size_t>(pos)] : TokenVocab::kPad;
                    window_ids[static_cast<size_t>(j)] = tok;
                    x.segment(static_cast<Eigen::Index>(j) * d, d) = model.embed.row(tok);
                }
                const Eigen::VectorXd a = model.w1 * x + model.b1;
                const Eigen::VectorXd h = a.array().tanh().matrix();
                const Eigen::VectorXd logp = log_softmax(model.w2 * h + model.b2, 1.0);
                Eigen::VectorXd dz = logp.array().exp().matrix();
                dz(seq[t]) -= 1.0;
                g_w2 += dz * h.transpose();
                g_b2 += dz;
                const Eigen::VectorXd dh = model.w2.transpose() * dz;
                const Eigen::VectorXd da =
                    (dh.array() * (1.0 - h.array().square())).matrix();
                g_w1 += da * x.transpose();
                g_b1 += da;
                const Eigen::VectorXd dx = model.w1.transpose() * da;
                for (int j = 0; j < model.context; ++j) {
                    g_embed.row(window_ids[static_cast<size_t>(j)]) +=
                        dx.segment(static_cast<Eigen::Index>(j) * d, d);
                }
            }
            const double scale = 1.0 / static_cast<double>(stop - start);
            opt_embed.step(model.embed, Eigen::MatrixXd(g_embed * scale), adam);
            opt_w1.step(model.w1, Eigen::MatrixXd(g_w1 * scale), adam);
            opt_b1.step(model.b1, Eigen::VectorXd(g_b1 * scale), adam);
            opt_w2.step(model.w2, Eigen::MatrixXd(g_w2 * scale), adam);
            opt_b2.step(model.b2, Eigen::VectorXd(g_b2 * scale), adam);
        }
        const double ppx = perplexity(model, val_seqs);
        if (!std::isfinite(ppx)) throw NumericError("non-finite validation perplexity");
        if (ppx < best_ppx * 0.99) {
            best_ppx = ppx;
            stall = 0;
        } else {
            best_ppx = std::min(best_ppx, ppx);
            if (++stall >= 3) break;
        }
    }
    return model;
}

namespace {

std::vector<int> top_k_ids(const Eigen::VectorXd& logits, int k) {
    std::vector<int> ids(static_cast<size_t>(logits.size()));
    std::iota(ids.begin(), ids.end(), 0);
    const auto better = [&](int a, int b) {
        if (logits(a) != logits(b)) return logits(a) > logits(b);
        return a < b;
    };
    const size_t keep = std::min<size_t>(static_cast<size_t>(std::max(1, k)), ids.size());
    std::partial_sort(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(keep), ids.end(),
                      better);
    ids.resize(keep);
    return ids;
}

} // namespace

Rollout generate(const PolicyModel& model, Band band, const std::vector<int>& prompt,
                 const GenerationConfig& config) {
    if (static_cast<int>(prompt.size()) >= kMaxSeqLen) {
        throw DataError("prompt of " + std::to_string(prompt.size()) +
                        " tokens exceeds the context bound of " + std::to_string(kMaxSeqLen));
    }
    if (config.top_k < 1) throw DataError("top_k must be at least 1");
    if (config.max_tokens < 1) throw DataError("max_tokens must be at least 1");
    model.adapter(band);  // fail fast when the band has no adapter

    Rollout rollout;
    rollout.prompt = prompt;
    SplitRng rng(mix_seed(config.seed, 0x67656e72u));
    std::vector<int> history = prompt;
    const int budget =
        std::min(config.max_tokens, kMaxSeqLen - static_cast<int>(prompt.size()));
    for (int step = 0; step < budget; ++step) {
        const Eigen::VectorXd h = model.hidden(history);
        const Eigen::VectorXd logp_full =
            log_softmax(model.band_logits(h, band), config.temperature);
        const auto candidates = top_k_ids(logp_full, config.top_k);
        double mass = 0.0;
        for (int c : candidates) mass += std::exp(logp_full(c));
        const double u = rng.unit() * mass;
        double cum = 0.0;
        int chosen = candidates.back();
        for (int c : candidates) {
            cum += std::exp(logp_full(c));
            if (u < cum) {
                chosen = c;
                break;
            }
        }
        rollout.seq.push_back(chosen);
        rollout.logp_policy.push_back(logp_full(chosen));
        rollout.logp_ref.push_back(
            log_softmax(model.reference_logits(h), config.temperature)(chosen));
        history.push_back(chosen);
        if (chosen == TokenVocab::kEos) {
            rollout.terminal = true;
            break;
        }
    }
    return rollout;
}

namespace {

std::vector<double> walk_logprobs(const PolicyModel& model, const std::vector<int>& prompt,
                                  const std::vector<int>& seq, double temperature,
                                  const std::optional<Band>& band) {
    std::vector<double> out;
    out.reserve(seq.size());
    std::vector<int> history = prompt;
    for (int tok : seq) {
        if (tok < 0 || tok >= model.vocab.size()) {
            throw DataError("sequence token id " + std::to_string(tok) +
                            " outside vocabulary");
        }
        const Eigen::VectorXd h = model.hidden(history);
        const Eigen::VectorXd logits =
            band ? model.band_logits(h, *band) : model.reference_logits(h);
        out.push_back(log_softmax(logits, temperature)(tok));
        history.push_back(tok);
    }
    return out;
}

} // namespace

std::vector<double> policy_logprobs(const PolicyModel& model, Band band,
                                    const std::vector<int>& prompt,
                                    const std::vector<int>& seq, double temperature) {
    return walk_logprobs(model, prompt, seq, temperature, band);
}

std::vector<double> reference_logprobs(const PolicyModel& model,
                                       const std::vector<int>& prompt,
                                       const std::vector<int>& seq, double temperature) {
    return walk_logprobs(model, prompt, seq, temperature, std::nullopt);
}

std::vector<double> value_estimates(const PolicyModel& model, const std::vector<int>& prompt,
                                    const std::vector<int>& seq) {
    std::vector<double> out;
    out.reserve(seq.size());
    std::vector<int> history = prompt;
    for (int tok : seq) {
        out.push_back(model.value(model.hidden(history)));
        history.push_back(tok);
    }
    return out;
}

namespace {

void append_matrix(std::ostringstream& out, const std::string& header,
                   const Eigen::MatrixXd& m) {
    out << header << ' ' << m.rows() << ' ' << m.cols() << '\n';
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (c > 0) out << ' ';
            out << format_double(m(r, c));
        }
        out << '\n';
    }
}

std::string backbone_text(const PolicyModel& model) {
    std::ostringstream out;
    append_matrix(out, "tensor embed", model.embed);
    append_matrix(out, "tensor w1", model.w1);
    append_matrix(out, "tensor b1", model.b1.transpose());
    append_matrix(out, "tensor w2", model.w2);
    append_matrix(out, "tensor b2", model.b2.transpose());
    return out.str();
}

Eigen::MatrixXd read_matrix(const std::vector<std::string>& lines, size_t& i, long rows,
                            long cols, const std::string& path) {
    Eigen::MatrixXd m(rows, cols);
    for (long r = 0; r < rows; ++r, ++i) {
        if (i >= lines.size()) throw DataError("truncated tensor block in " + path);
        const std::string where = path + ":" + std::to_string(i + 1);
        const auto values = split_ws(lines[i]);
        if (static_cast<long>(values.size()) != cols) {
            throw DataError("expected " + std::to_string(cols) + " values at " + where);
        }
        for (long c = 0; c < cols; ++c) {
            m(r, c) = parse_double(values[static_cast<size_t>(c)], where);
        }
    }
    return m;
}

} // namespace

void save_policy(const PolicyModel& model, const std::string& path) {
    std::ostringstream out;
    out << "lexalign-policy-v1\n";
    out << "context " << model.context << '\n';
    out << "embed_dim " << model.embed_dim << '\n';
    out << "hidden " << model.hidden_dim << '\n';
    out << "rank " << model.rank << '\n';
    out << "vocab " << model.vocab.size() << '\n';
    const auto& tokens = model.vocab.tokens();
    for (size_t i = 0; i < tokens.size(); ++i) {
        out << "token " << i << ' ' << tokens[i] << '\n';
    }
    out << backbone_text(model);
    for (Band band : kAllBands) {
        const auto& slot = model.adapters[band_index(band)];
        if (!slot) continue;
        append_matrix(out, "adapter " + band_name(band) + " up", slot->up);
        append_matrix(out, "adapter " + band_name(band) + " down", slot->down);
    }
    append_matrix(out, "tensor value_w", model.value_w.transpose());
    Eigen::MatrixXd vb(1, 1);
    vb(0, 0) = model.value_b;
    append_matrix(out, "tensor value_b", vb);
    write_file(path, out.str());
}

PolicyModel load_policy(const std::string& path) {
    const auto lines = read_lines(path);
    if (lines.empty() || lines[0] != "lexalign-policy-v1") {
        throw DataError("not a policy checkpoint (bad header): " + path);
    }
    PolicyModel model;
    std::vector<std::string> tokens;
    bool saw_embed = false, saw_w1 = false, saw_b1 = false, saw_w2 = false, saw_b2 = false;
    bool saw_value_w = false, saw_value_b = false;
    long vocab_size = -1;

    size_t i = 1;
    while (i < lines.size()) {
        if (lines[i].empty()) {
            ++i;
            continue;
        }
        const std::string where = path + ":" + std::to_string(i + 1);
        const auto fields = split_ws(lines[i]);
        const std::string& key = fields[0];
        ++i;
        if (key == "context" && fields.size() == 2) {
            model.context = static_cast<int>(parse_long(fields[1], where));
        } else if (key == "embed_dim" && fields.size() == 2) {
            model.embed_dim = static_cast<int>(parse_long(fields[1], where));
        } else if (key == "hidden" && fields.size() == 2) {
            model.hidden_dim = static_cast<int>(parse_long(fields[1], where));
        } else if (key == "rank" && fields.size() == 2) {
            model.rank = static_cast<int>(parse_long(fields[1], where));
        } else if (key == "vocab" && fields.size() == 2) {
            vocab_size = parse_long(fields[1], where);
        } else if (key == "token" && fields.size() == 3) {
            const long id = parse_long(fields[1], where);
            if (id != static_cast<long>(tokens.size())) {
                throw DataError("out-of-order token id at " + where);
            }
            tokens.push_back(fields[2]);
        } else if (key == "tensor" && fields.size() == 4) {
            const std::string& name = fields[1];
            const long rows = parse_long(fields[2], where);
            const long cols = parse_long(fields[3], where);
            const Eigen::MatrixXd m = read_matrix(lines, i, rows, cols, path);
            if (name == "embed") {
                model.embed = m;
                saw_embed = true;
            } else if (name == "w1") {
                model.w1 = m;
                saw_w1 = true;
            } else if (name == "b1") {
                model.b1 = m.row(0).transpose();
                saw_b1 = true;
            } else if (name == "w2") {
                model.w2 = m;
                saw_w2 = true;
            } else if (name == "b2") {
                model.b2 = m.row(0).transpose();
                saw_b2 = true;
            } else if (name == "value_w") {
                model.value_w = m.row(0).transpose();
                saw_value_w = true;
            } else if (name == "value_b") {
                model.value_b = m(0, 0);
                saw_value_b = true;
            } else {
                throw DataError("unknown tensor '" + name + "' at " + where);
            }
        } else if (key == "adapter" && fields.size() == 5) {
            const auto band = parse_band(fields[1]);
            if (!band) throw DataError("unknown band '" + fields[1] + "' at " + where);
            const std::string& part = fields[2];
            const long rows = parse_long(fields[3], where);
            const long cols = parse_long(fields[4], where);
            const Eigen::MatrixXd m = read_matrix(lines, i, rows, cols, path);
            auto& slot = model.adapters[band_index(*band)];
            if (!slot) slot = Adapter{};
            if (part == "up") {
                slot->up = m;
            } else if (part == "down") {
                slot->down = m;
            } else {
                throw DataError("unknown adapter part '" + part + "' at " + where);
            }
        } else {
            throw DataError("unrecognized checkpoint line at " + where);
        }
    }

    if (vocab_size < 0 || static_cast<long>(tokens.size()) != vocab_size) {
        throw DataError("vocabulary table size mismatch in " + path);
    }
    if (static_cast<size_t>(TokenVocab::kNumSpecials) > tokens.size()) {
        throw DataError("vocabulary too small for reserved tokens in " + path);
    }
    model.vocab = TokenVocab(
        std::vector<std::string>(tokens.begin() + TokenVocab::kNumSpecials, tokens.end()));
    for (int s = 0; s < TokenVocab::kNumSpecials; ++s) {
        if (model.vocab.token(s) != tokens[static_cast<size_t>(s)]) {
            throw DataError("reserved token mismatch in " + path);
        }
    }
    if (!(saw_embed && saw_w1 && saw_b1 && saw_w2 && saw_b2 && saw_value_w && saw_value_b)) {
        throw DataError("checkpoint missing required tensor blocks: " + path);
    }
    for (const auto& slot : model.adapters) {
        if (slot && (slot->up.size() == 0 || slot->down.size() == 0)) {
            throw DataError("incomplete adapter block in " + path);
        }
    }
    return model;
}

uint64_t backbone_hash(const PolicyModel& model) {
    const std::string text = backbone_text(model);
    uint64_t hash = 1469598103934665603ull;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    return hash;
}

} // namespace lexalign
