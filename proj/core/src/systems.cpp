#include "vpow/systems.hpp"

#include <algorithm>
#include <bit>

#include "vpow/error.hpp"

namespace vpow {

WeightedVotingSystem::WeightedVotingSystem(std::vector<Rat> weights, Rat quota)
    : weights_(std::move(weights)), quota_(std::move(quota)), total_(0) {
  if (weights_.empty()) {
    throw Error(ErrorCategory::Validation, "a system needs at least one voter");
  }
  for (const Rat& w : weights_) {
    if (sgn(w) < 0) {
      throw Error(ErrorCategory::Validation,
                  "negative weight " + to_fraction_string(w));
    }
    total_ += w;
  }
  if (sgn(quota_) <= 0) {
    throw Error(ErrorCategory::Validation,
                "quota must be positive, got " + to_fraction_string(quota_));
  }
  if (quota_ > total_) {
    throw Error(ErrorCategory::Validation,
                "quota " + to_fraction_string(quota_) +
                    " exceeds the total weight " + to_fraction_string(total_));
  }
  equal_weights_ = std::all_of(weights_.begin(), weights_.end(),
                               [&](const Rat& w) { return w == weights_[0]; });
}

WeightedVotingSystem WeightedVotingSystem::from_relative_quota(
    std::vector<Rat> weights, const Rat& relative_quota) {
  if (sgn(relative_quota) <= 0 || relative_quota > 1) {
    throw Error(ErrorCategory::Validation,
                "relative quota must lie in (0,1], got " +
                    to_fraction_string(relative_quota));
  }
  Rat total(0);
  for (const Rat& w : weights) total += w;
  return WeightedVotingSystem(std::move(weights), relative_quota * total);
}

namespace {

// Checks 1-based ids for range and duplicates, returning 0-based indices.
std::vector<size_t> checked_indices(std::span<const int> coalition,
                                    size_t n_voters) {
  std::vector<bool> seen(n_voters, false);
  std::vector<size_t> out;
  out.reserve(coalition.size());
  for (int id : coalition) {
    if (id < 1 || static_cast<size_t>(id) > n_voters) {
      throw Error(ErrorCategory::Validation,
                  "voter index " + std::to_string(id) + " outside 1.." +
                      std::to_string(n_voters));
    }
    size_t i = static_cast<size_t>(id) - 1;
    if (seen[i]) {
      throw Error(ErrorCategory::Validation,
                  "duplicate voter index " + std::to_string(id));
    }
    seen[i] = true;
    out.push_back(i);
  }
  return out;
}

}  // namespace

Rat WeightedVotingSystem::coalition_weight(std::span<const int> coalition) const {
  Rat sum(0);
  for (size_t i : checked_indices(coalition, weights_.size())) {
    sum += weights_[i];
  }
  return sum;
}

bool WeightedVotingSystem::is_winning(std::span<const int> coalition) const {
  return coalition_weight(coalition) >= quota_;
}

bool WeightedVotingSystem::is_winning_mask(std::uint64_t mask) const {
  if (weights_.size() > 64) {
    throw Error(ErrorCategory::Domain,
                "bitmask coalitions need at most 64 voters");
  }
  if (weights_.size() < 64 && (mask >> weights_.size()) != 0) {
    throw Error(ErrorCategory::Validation, "coalition mask has stray bits");
  }
  Rat sum(0);
  for (size_t i = 0; i < weights_.size(); ++i) {
    if (mask >> i & 1) sum += weights_[i];
  }
  return sum >= quota_;
}

WeightedVotingSystem simple_majority(long long n_voters) {
  if (n_voters < 1) {
    throw Error(ErrorCategory::Validation, "voter count must be at least 1");
  }
  std::vector<Rat> weights(static_cast<size_t>(n_voters), Rat(1));
  return WeightedVotingSystem(std::move(weights),
                              Rat(static_cast<long>(n_voters / 2) + 1));
}

Rat weight_concentration(std::span<const Rat> weights) {
  Rat total(0), squares(0);
  for (const Rat& w : weights) {
    total += w;
    squares += w * w;
  }
  if (sgn(total) <= 0) {
    throw Error(ErrorCategory::Validation, "total weight must be positive");
  }
  return squares / (total * total);
}

ScaledSystem scale_weights(const WeightedVotingSystem& system) {
  ScaledSystem out;
  out.scale = 1;
  for (const Rat& w : system.weights()) {
    Int den = w.get_den();
    out.scale = lcm(out.scale, den);
  }
  out.weights.reserve(system.weights().size());
  for (const Rat& w : system.weights()) {
    Rat scaled = w * Rat(out.scale);
    out.weights.push_back(scaled.get_num());  // denominator is 1 by choice of scale
  }
  out.win_threshold = ceil_rat(system.quota() * Rat(out.scale));
  return out;
}

ExplicitVotingSystem::ExplicitVotingSystem(
    int n_voters, const std::vector<std::uint32_t>& winning_masks)
    : voters_(n_voters) {
  if (n_voters < 1 || n_voters > kMaxVoters) {
    throw Error(ErrorCategory::Validation,
                "explicit systems support 1.." + std::to_string(kMaxVoters) +
                    " voters, got " + std::to_string(n_voters));
  }
  const std::uint32_t all = (n_voters == 32) ? ~0u : ((1u << n_voters) - 1);
  winning_.assign(std::size_t{1} << n_voters, false);
  for (std::uint32_t mask : winning_masks) {
    if ((mask & ~all) != 0) {
      throw Error(ErrorCategory::Validation, "coalition mask has stray bits");
    }
    winning_[mask] = true;
  }
  if (winning_[0]) {
    throw Error(ErrorCategory::Validation, "the empty coalition must lose");
  }
  if (!winning_[all]) {
    throw Error(ErrorCategory::Validation, "the full coalition must win");
  }
  for (std::uint32_t mask = 0; mask <= all; ++mask) {
    if (!winning_[mask]) continue;
    for (int v = 0; v < n_voters; ++v) {
      std::uint32_t super = mask | (1u << v);
      if (!winning_[super]) {
        throw Error(ErrorCategory::Validation,
                    "winning family is not monotone: adding voter " +
                        std::to_string(v + 1) + " turns a winning coalition " +
                        "into a losing one");
      }
    }
  }
}

ExplicitVotingSystem ExplicitVotingSystem::from_coalition_lists(
    int n_voters, const std::vector<std::vector<int>>& winning) {
  if (n_voters < 1 || n_voters > kMaxVoters) {
    throw Error(ErrorCategory::Validation,
                "explicit systems support 1.." + std::to_string(kMaxVoters) +
                    " voters, got " + std::to_string(n_voters));
  }
  std::vector<std::uint32_t> masks;
  masks.reserve(winning.size());
  for (const std::vector<int>& coalition : winning) {
    std::uint32_t mask = 0;
    for (size_t i : checked_indices(coalition, static_cast<size_t>(n_voters))) {
      mask |= 1u << i;
    }
    masks.push_back(mask);
  }
  return ExplicitVotingSystem(n_voters, masks);
}

ExplicitVotingSystem ExplicitVotingSystem::enumerate(
    const WeightedVotingSystem& system) {
  if (system.voters() > kMaxVoters) {
    throw Error(ErrorCategory::Resource,
                "cannot enumerate the winning family beyond " +
                    std::to_string(kMaxVoters) + " voters");
  }
  const int n = static_cast<int>(system.voters());
  const std::uint32_t count = 1u << n;

  std::vector<std::uint32_t> masks;
  // Gray-code walk: consecutive visited masks differ in one bit, so the
  // coalition weight is maintained with one exact update per step.
  Rat sum(0);
  std::uint32_t gray = 0;
  for (std::uint32_t i = 1; i < count; ++i) {
    std::uint32_t next = i ^ (i >> 1);
    int bit = std::countr_zero(i);
    if (next & (1u << bit)) {
      sum += system.weights()[static_cast<size_t>(bit)];
    } else {
      sum -= system.weights()[static_cast<size_t>(bit)];
    }
    gray = next;
    if (sum >= system.quota()) masks.push_back(gray);
  }
  return ExplicitVotingSystem(n, masks);
}

long long ExplicitVotingSystem::winning_count() const {
  return std::count(winning_.begin(), winning_.end(), true);
}

std::optional<WeightedVotingSystem> detect_anonymous_rule(
    const ExplicitVotingSystem& system) {
  const int n = system.voters();
  const std::uint32_t count = 1u << n;

  // -1 unseen, else 0/1: the common status of all coalitions of that size.
  std::vector<int> status(static_cast<size_t>(n) + 1, -1);
  for (std::uint32_t mask = 0; mask < count; ++mask) {
    int size = std::popcount(mask);
    int winning = system.is_winning_mask(mask) ? 1 : 0;
    if (status[size] == -1) {
      status[size] = winning;
    } else if (status[size] != winning) {
      return std::nullopt;
    }
  }

  int threshold = -1;
  for (int k = 0; k <= n; ++k) {
    if (status[k] == 1) {
      threshold = k;
      break;
    }
  }
  if (threshold < 1) {
    throw Error(ErrorCategory::Internal, "monotone family without a threshold");
  }
  for (int k = threshold; k <= n; ++k) {
    if (status[k] != 1) {
      throw Error(ErrorCategory::Internal,
                  "size statuses not monotone despite a monotone family");
    }
  }

  std::vector<Rat> weights(static_cast<size_t>(n), Rat(1));
  return WeightedVotingSystem(std::move(weights), Rat(threshold));
}

}  // namespace vpow
