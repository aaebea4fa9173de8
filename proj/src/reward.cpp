#include "lexalign/reward.hpp"

#include "lexalign/error.hpp"

#include <cmath>
#include <string>

namespace lexalign {

double base_r(EntryKind kind, RewardMode mode, const ClauseUsageStats& stats,
              int clause_id, const DynamicRewardConfig& config) {
    const double kind_factor = (kind == EntryKind::phrase) ? config.phrase_multiplier : 1.0;
    if (mode == RewardMode::constant) return kind_factor;
    if (clause_id < 0 || static_cast<size_t>(clause_id) >= stats.p.size()) {
        throw DataError("clause id " + std::to_string(clause_id) +
                        " out of range for usage stats of size " +
                        std::to_string(stats.p.size()));
    }
    const double m = static_cast<double>(stats.p.size());
    const double pj = stats.p[static_cast<size_t>(clause_id)];
    // The boundary p_j = 1/m belongs to the decay branch.
    const double shape = (pj < 1.0 / m) ? 1.0 : std::exp(-config.alpha * pj);
    return shape * kind_factor;
}

double lexical_reward_from_counts(const MatchCounts& counts, const ConstraintSet& set,
                                  const ClauseUsageStats& stats,
                                  const DynamicRewardConfig& config) {
    double h = 0.0;
    for (const auto& clause : set.clauses) {
        const long c = counts.counts[static_cast<size_t>(clause.id)];
        if (c == 0) continue;
        h += base_r(clause.kind, config.mode, stats, clause.id, config) *
             static_cast<double>(c);
    }
    h += config.above_level_penalty * static_cast<double>(counts.above_total);
    return h;
}

double lexical_reward(const NormalizedSequence& seq, const ConstraintSet& set,
                      const ClauseUsageStats& stats, const DynamicRewardConfig& config) {
    const MatchCounts counts = count_all(set, seq, config.phrase_gap);
    return lexical_reward_from_counts(counts, set, stats, config);
}

ClauseUsageStats update_usage(const ClauseUsageStats& stats,
                              const std::vector<long>& epoch_rollout_counts) {
    if (epoch_rollout_counts.size() != stats.p.size()) {
        throw DataError("usage update size mismatch: stats track " +
                        std::to_string(stats.p.size()) + " clauses, got " +
                        std::to_string(epoch_rollout_counts.size()) + " counts");
    }
    long total = 0;
    for (long c : epoch_rollout_counts) {
        if (c < 0) throw DataError("negative clause count in usage update");
        total += c;
    }
    ClauseUsageStats next;
    next.epoch = stats.epoch + 1;
    next.p.assign(stats.p.size(), 0.0);
    if (total > 0) {
        for (size_t j = 0; j < next.p.size(); ++j) {
            next.p[j] = static_cast<double>(epoch_rollout_counts[j]) /
                        static_cast<double>(total);
        }
    }
    return next;
}

} // namespace lexalign
