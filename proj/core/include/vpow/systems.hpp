#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "vpow/rational.hpp"

namespace vpow {

// A weighted voting rule: coalition A wins iff the sum of its weights
// reaches the quota. Weights are nonnegative rationals, the quota q
// satisfies 0 < q <= total weight, so the full coalition always wins and
// the empty one never does.
class WeightedVotingSystem {
public:
  WeightedVotingSystem(std::vector<Rat> weights, Rat quota);

  // quota = relative_quota * total weight, with 0 < relative_quota <= 1.
  static WeightedVotingSystem from_relative_quota(std::vector<Rat> weights,
                                                  const Rat& relative_quota);

  long long voters() const { return static_cast<long long>(weights_.size()); }
  const std::vector<Rat>& weights() const { return weights_; }
  const Rat& quota() const { return quota_; }
  const Rat& total_weight() const { return total_; }
  Rat relative_quota() const { return quota_ / total_; }
  bool all_weights_equal() const { return equal_weights_; }

  // Coalitions are given as distinct 1-based voter indices.
  Rat coalition_weight(std::span<const int> coalition) const;
  bool is_winning(std::span<const int> coalition) const;

  // Bit i (from 0) stands for voter i+1. Only for systems of at most 64
  // voters.
  bool is_winning_mask(std::uint64_t mask) const;

private:
  std::vector<Rat> weights_;
  Rat quota_;
  Rat total_;
  bool equal_weights_;
};

// One voter, one vote; more than half the votes win.
WeightedVotingSystem simple_majority(long long n_voters);

// Concentration of the weight vector: sum of squared weight shares,
// (sum w_i^2) / (sum w_i)^2. This is the Herfindahl index, the reciprocal
// of the Laakso-Taagepera effective number of voters. Near 1/n for flat
// weights, near 1 for a dominant voter.
Rat weight_concentration(std::span<const Rat> weights);

// Integer form of a system: weights scaled by the least common multiple of
// their denominators. An integer coalition weight s wins iff
// s >= win_threshold, which is the scaled quota rounded up (equivalent to
// s >= quota * scale since s is integral).
struct ScaledSystem {
  std::vector<Int> weights;
  Int scale;
  Int win_threshold;
};

ScaledSystem scale_weights(const WeightedVotingSystem& system);

// A voting rule given by its full winning family, for rules that are not
// (or not known to be) weighted. Stored as one flag per coalition bitmask,
// which caps the size at kMaxVoters.
class ExplicitVotingSystem {
public:
  static constexpr int kMaxVoters = 24;

  // Validates: the full coalition wins, the empty one does not, and the
  // family is monotone (supersets of winning coalitions win).
  ExplicitVotingSystem(int n_voters, const std::vector<std::uint32_t>& winning_masks);

  // Coalitions as lists of distinct 1-based voter indices.
  static ExplicitVotingSystem from_coalition_lists(
      int n_voters, const std::vector<std::vector<int>>& winning);

  static ExplicitVotingSystem enumerate(const WeightedVotingSystem& system);

  int voters() const { return voters_; }
  bool is_winning_mask(std::uint32_t mask) const {
    return winning_[mask];
  }
  long long winning_count() const;

private:
  int voters_;
  std::vector<bool> winning_;  // indexed by coalition bitmask
};

// If the rule treats all voters alike (winning depends only on coalition
// size), returns the equivalent unit-weight threshold system; otherwise
// nullopt. Monotonicity makes the sizes split cleanly below/above a
// threshold.
std::optional<WeightedVotingSystem> detect_anonymous_rule(
    const ExplicitVotingSystem& system);

}  // namespace vpow
