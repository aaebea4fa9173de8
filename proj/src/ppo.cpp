#include "lexalign/ppo.hpp"

#include "lexalign/error.hpp"
#include "lexalign/matcher.hpp"
#include "lexalign/optim.hpp"
#include "lexalign/textio.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace lexalign {

double combined_reward(double h, double r_l, const RewardWeights& weights) {
    return weights.lambda * h + weights.gamma * r_l;
}

double regularized_reward(double r, const Rollout& rollout) {
    if (rollout.logp_policy.size() != rollout.logp_ref.size()) {
        throw DataError("rollout log-prob vectors differ in length");
    }
    double log_ratio = 0.0;
    for (size_t t = 0; t < rollout.logp_policy.size(); ++t) {
        log_ratio += rollout.logp_policy[t] - rollout.logp_ref[t];
    }
    return r - log_ratio;
}

namespace {

struct TokenSample {
    size_t rollout = 0;
    size_t t = 0;
    int action = 0;
    double logp_old = 0.0;
    double advantage = 0.0;
    double ret = 0.0;
    Eigen::VectorXd hidden;  // backbone output, constant through the epoch
};

struct AdapterSnapshot {
    Adapter adapter;
    Eigen::VectorXd value_w;
    double value_b = 0.0;
};

double global_grad_norm(const Eigen::MatrixXd& g_up, const Eigen::MatrixXd& g_down,
                        const Eigen::VectorXd& g_vw, double g_vb) {
    return std::sqrt(g_up.squaredNorm() + g_down.squaredNorm() + g_vw.squaredNorm() +
                     g_vb * g_vb);
}

} // namespace

TrainLogRecord run_epoch(PolicyModel& policy, Band band,
                         const std::vector<std::vector<int>>& prompts,
                         const ConstraintSet& set, const Normalizer& normalizer,
                         const RankerModel* ranker,
                         const SentenceFeatureExtractor* extractor,
                         ClauseUsageStats& stats, const TrainerConfig& config, int epoch) {
    if (prompts.empty()) throw DataError("run_epoch needs at least one prompt");
    if (stats.p.size() != set.clauses.size()) {
        throw DataError("usage stats do not match the constraint set");
    }

    TrainLogRecord record;
    record.epoch = epoch;

    const int n_roll = std::max(1, config.ppo.rollouts_per_epoch);
    std::vector<Rollout> rollouts;
    rollouts.reserve(static_cast<size_t>(n_roll));
    for (int i = 0; i < n_roll; ++i) {
        const size_t idx = (static_cast<size_t>(epoch) * static_cast<size_t>(n_roll) +
                            static_cast<size_t>(i)) %
                           prompts.size();
        GenerationConfig gen = config.generation;
        gen.seed = mix_seed(config.ppo.seed, static_cast<uint64_t>(epoch),
                            static_cast<uint64_t>(i));
        rollouts.push_back(generate(policy, band, prompts[idx], gen));
    }

    // Score every rollout with the usage stats carried in from last epoch.
    std::vector<long> epoch_counts(set.clauses.size(), 0);
    std::vector<double> terminal_rewards(rollouts.size(), 0.0);
    double reward_sum = 0.0;
    double kl_sum = 0.0;
    bool finite = true;
    for (size_t k = 0; k < rollouts.size(); ++k) {
        const Rollout& roll = rollouts[k];
        const std::string decoded = policy.vocab.decode(roll.seq);
        MatchCounts counts;
        counts.counts.assign(set.clauses.size(), 0);
        double r_l = 0.0;
        if (!decoded.empty()) {
            const NormalizedSequence seq = normalizer.normalize(decoded);
            counts = count_all(set, seq, config.reward.phrase_gap);
            if (config.use_sentence_reward && ranker && extractor) {
                r_l = sentence_reward(*ranker, extractor->extract(seq));
            }
        }
        for (size_t j = 0; j < epoch_counts.size(); ++j) epoch_counts[j] += counts.counts[j];
        record.objective += counts.total();

        const double h_reward = lexical_reward_from_counts(counts, set, stats, config.reward);
        const double r = combined_reward(h_reward, r_l, config.weights);
        const double r_prime = config.use_kl ? regularized_reward(r, roll) : r;
        terminal_rewards[k] = r_prime;
        reward_sum += r;
        double log_ratio = 0.0;
        for (size_t t = 0; t < roll.logp_policy.size(); ++t) {
            log_ratio += roll.logp_policy[t] - roll.logp_ref[t];
        }
        kl_sum += log_ratio;
        if (!std::isfinite(r_prime) || !std::isfinite(log_ratio)) finite = false;
    }
    record.mean_reward = reward_sum / static_cast<double>(rollouts.size());
    record.mean_kl = kl_sum / static_cast<double>(rollouts.size());

    if (!finite) {
        record.aborted = true;
        record.note = "non-finite reward or KL; epoch skipped";
        stats = update_usage(stats, epoch_counts);
        record.usage = stats.p;
        return record;
    }

    // Terminal reward spread over tokens by GAE against the value head.
    std::vector<TokenSample> tokens;
    for (size_t k = 0; k < rollouts.size(); ++k) {
        const Rollout& roll = rollouts[k];
        const size_t len = roll.seq.size();
        const std::vector<double> values = value_estimates(policy, roll.prompt, roll.seq);
        std::vector<double> adv(len, 0.0);
        double gae = 0.0;
        for (size_t t = len; t-- > 0;) {
            const double next_value = (t + 1 < len) ? values[t + 1] : 0.0;
            const double step_reward = (t + 1 == len) ? terminal_rewards[k] : 0.0;
            const double delta = step_reward + config.ppo.discount * next_value - values[t];
            gae = delta + config.ppo.discount * config.ppo.gae_lambda * gae;
            adv[t] = gae;
        }
        std::vector<int> history = roll.prompt;
        for (size_t t = 0; t < len; ++t) {
            TokenSample sample;
            sample.rollout = k;
            sample.t = t;
            sample.action = roll.seq[t];
            sample.logp_old = roll.logp_policy[t];
            sample.advantage = adv[t];
            sample.ret = adv[t] + values[t];
            sample.hidden = policy.hidden(history);
            tokens.push_back(std::move(sample));
            history.push_back(roll.seq[t]);
        }
    }

    double adv_mean = 0.0;
    for (const auto& tok : tokens) adv_mean += tok.advantage;
    adv_mean /= static_cast<double>(tokens.size());
    double adv_var = 0.0;
    for (const auto& tok : tokens) {
        adv_var += (tok.advantage - adv_mean) * (tok.advantage - adv_mean);
    }
    const double adv_std = std::sqrt(adv_var / static_cast<double>(tokens.size()));
    for (auto& tok : tokens) {
        tok.advantage = (tok.advantage - adv_mean) / std::max(adv_std, 1e-8);
    }

    Adapter& adapter = policy.adapter(band);
    const AdapterSnapshot snapshot{adapter, policy.value_w, policy.value_b};

    AdamConfig adam{config.ppo.learning_rate};
    AdamState opt_up, opt_down, opt_vw;
    AdamScalarState opt_vb;
    opt_up.init(adapter.up.rows(), adapter.up.cols());
    opt_down.init(adapter.down.rows(), adapter.down.cols());
    opt_vw.init(policy.value_w.size(), 1);

    SplitRng rng(mix_seed(config.ppo.seed, static_cast<uint64_t>(epoch), 0x70706fu));
    std::vector<size_t> order(tokens.size());
    std::iota(order.begin(), order.end(), 0);

    const double inv_temp = 1.0 / config.generation.temperature;
    double policy_loss_sum = 0.0;
    double value_loss_sum = 0.0;
    long loss_terms = 0;
    bool first_minibatch = true;

    for (int pass = 0; pass < config.ppo.passes && !record.aborted; ++pass) {
        for (size_t i = order.size(); i > 1; --i) {
            std::swap(order[i - 1], order[rng.index(i)]);
        }
        const size_t batch = static_cast<size_t>(std::max(1, config.ppo.minibatch));
        for (size_t start = 0; start < order.size() && !record.aborted; start += batch) {
            const size_t stop = std::min(order.size(), start + batch);
            Eigen::MatrixXd g_up = Eigen::MatrixXd::Zero(adapter.up.rows(), adapter.up.cols());
            Eigen::MatrixXd g_down =
                Eigen::MatrixXd::Zero(adapter.down.rows(), adapter.down.cols());
            Eigen::VectorXd g_vw = Eigen::VectorXd::Zero(policy.value_w.size());
            double g_vb = 0.0;

            for (size_t i = start; i < stop; ++i) {
                const TokenSample& tok = tokens[order[i]];
                const Eigen::VectorXd logits = policy.band_logits(tok.hidden, band);
                const Eigen::VectorXd logp =
                    log_softmax(logits, config.generation.temperature);
                const double lp_new = logp(tok.action);
                const double ratio = std::exp(lp_new - tok.logp_old);
                if (first_minibatch) {
                    record.first_minibatch_ratio_dev =
                        std::max(record.first_minibatch_ratio_dev, std::abs(ratio - 1.0));
                }
                const double clipped = std::clamp(ratio, 1.0 - config.ppo.clip_epsilon,
                                                  1.0 + config.ppo.clip_epsilon);
                const double surr_raw = ratio * tok.advantage;
                const double surr_clip = clipped * tok.advantage;
                policy_loss_sum += -std::min(surr_raw, surr_clip);

                // The clipped branch has zero gradient in the ratio.
                const double coeff =
                    (surr_raw <= surr_clip) ? -tok.advantage * ratio : 0.0;
                if (coeff != 0.0) {
                    Eigen::VectorXd g_z = logp.array().exp().matrix() * (-coeff * inv_temp);
                    g_z(tok.action) += coeff * inv_temp;
                    // z = (w2 + up*down) h: only the adapter term is trainable.
                    const Eigen::VectorXd down_h = adapter.down * tok.hidden;
                    g_up += g_z * down_h.transpose();
                    g_down += (adapter.up.transpose() * g_z) * tok.hidden.transpose();
                }

                const double v = policy.value(tok.hidden);
                const double v_err = v - tok.ret;
                value_loss_sum += 0.5 * v_err * v_err;
                const double dv = config.ppo.value_loss_weight * v_err;
                g_vw += dv * tok.hidden;
                g_vb += dv;
                ++loss_terms;
            }
            first_minibatch = false;

            const double inv_batch = 1.0 / static_cast<double>(stop - start);
            g_up *= inv_batch;
            g_down *= inv_batch;
            g_vw *= inv_batch;
            g_vb *= inv_batch;

            const double norm = global_grad_norm(g_up, g_down, g_vw, g_vb);
            if (!std::isfinite(norm)) {
                adapter = snapshot.adapter;
                policy.value_w = snapshot.value_w;
                policy.value_b = snapshot.value_b;
                record.aborted = true;
                record.note = "non-finite gradient; parameters restored";
                break;
            }
            if (norm > config.ppo.grad_clip && norm > 0.0) {
                const double scale = config.ppo.grad_clip / norm;
                g_up *= scale;
                g_down *= scale;
                g_vw *= scale;
                g_vb *= scale;
            }
            opt_up.step(adapter.up, g_up, adam);
            opt_down.step(adapter.down, g_down, adam);
            opt_vw.step(policy.value_w, g_vw, adam);
            opt_vb.step(policy.value_b, g_vb, adam);
        }
    }

    if (loss_terms > 0) {
        record.loss_policy = policy_loss_sum / static_cast<double>(loss_terms);
        record.loss_value = value_loss_sum / static_cast<double>(loss_terms);
    }
    if (!std::isfinite(record.loss_policy) || !std::isfinite(record.loss_value)) {
        adapter = snapshot.adapter;
        policy.value_w = snapshot.value_w;
        policy.value_b = snapshot.value_b;
        record.aborted = true;
        record.note = "non-finite loss; parameters restored";
    }

    // Eq. 4 refresh happens exactly once, at the epoch boundary.
    stats = update_usage(stats, epoch_counts);
    record.usage = stats.p;
    return record;
}

TrainOutcome train(const PolicyModel& init, const std::vector<Band>& train_bands,
                   const TrainSetup& setup, const TrainerConfig& config) {
    if (!setup.bands || !setup.normalizer) {
        throw UsageError("trainer setup needs constraint sets and a normalizer");
    }
    TrainOutcome out{init, {}};
    for (Band band : train_bands) {
        const auto& prompts = setup.prompts[static_cast<size_t>(band_index(band))];
        if (prompts.empty()) {
            throw DataError("no prompts for band " + band_name(band));
        }
        const ConstraintSet& set = setup.bands->at(band);
        ClauseUsageStats stats = ClauseUsageStats::fresh(set.clauses.size());
        // Fresh baseline per band keeps the band runs independent.
        out.model.value_w.setZero();
        out.model.value_b = 0.0;
        BandTraining training;
        training.band = band;
        for (int epoch = 0; epoch < config.ppo.epochs; ++epoch) {
            TrainLogRecord record = run_epoch(
                out.model, band, prompts, set, *setup.normalizer,
                setup.rankers[static_cast<size_t>(band_index(band))], setup.extractor,
                stats, config, epoch);
            training.log.push_back(std::move(record));

            const auto& log = training.log;
            if (log.size() >= 6) {
                bool settled = true;
                for (size_t i = log.size() - 5; i < log.size(); ++i) {
                    const double prev = log[i - 1].mean_reward;
                    const double change = std::abs(log[i].mean_reward - prev) /
                                          std::max(std::abs(prev), 1e-9);
                    if (change >= 0.01 || log[i].aborted) {
                        settled = false;
                        break;
                    }
                }
                if (settled) break;
            }
        }
        out.bands.push_back(std::move(training));
    }
    return out;
}

void write_trainlog_csv(const std::vector<TrainLogRecord>& records, const std::string& path) {
    std::ostringstream out;
    out << "epoch,mean_reward,mean_kl,objective,loss_policy,loss_value\n";
    for (const auto& rec : records) {
        out << rec.epoch << ',' << format_double(rec.mean_reward) << ','
            << format_double(rec.mean_kl) << ',' << rec.objective << ','
            << format_double(rec.loss_policy) << ',' << format_double(rec.loss_value) << '\n';
    }
    write_file(path, out.str());
}

} // namespace lexalign
