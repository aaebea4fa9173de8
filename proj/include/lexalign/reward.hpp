#pragma once

#include "lexalign/constraints.hpp"
#include "lexalign/matcher.hpp"
#include "lexalign/normalize.hpp"

#include <vector>

namespace lexalign {

enum class RewardMode { constant, dynamic };

struct DynamicRewardConfig {
    double alpha = 1.2;
    double phrase_multiplier = 1.5;
    double above_level_penalty = -1.0;
    RewardMode mode = RewardMode::dynamic;
    int phrase_gap = kDefaultPhraseGap;
};

// Per-clause usage ratios, recomputed once per training epoch.
struct ClauseUsageStats {
    std::vector<double> p;
    int epoch = 0;

    static ClauseUsageStats fresh(size_t num_clauses) {
        ClauseUsageStats stats;
        stats.p.assign(num_clauses, 0.0);
        return stats;
    }
};

// Per-clause base reward before count weighting (Eq. 3 shape in dynamic mode).
double base_r(EntryKind kind, RewardMode mode, const ClauseUsageStats& stats,
              int clause_id, const DynamicRewardConfig& config);

// Constraint reward H for one sequence: sum of base_r * match count per clause,
// plus the above-level penalty times the above-level match total.
double lexical_reward(const NormalizedSequence& seq, const ConstraintSet& set,
                      const ClauseUsageStats& stats, const DynamicRewardConfig& config);

// Same H, but from precomputed match counts.
double lexical_reward_from_counts(const MatchCounts& counts, const ConstraintSet& set,
                                  const ClauseUsageStats& stats,
                                  const DynamicRewardConfig& config);

// Refresh usage ratios from one epoch's aggregate per-clause match totals.
ClauseUsageStats update_usage(const ClauseUsageStats& stats,
                              const std::vector<long>& epoch_rollout_counts);

} // namespace lexalign
