#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "vpow/measures.hpp"
#include "vpow/quantity.hpp"
#include "vpow/rational.hpp"
#include "vpow/systems.hpp"

namespace vpow {

struct EngineOptions {
  // Cap for the closed-form path used when all weights are equal; the
  // binomial tables grow like N^2 bits.
  long long max_unit_voters = 5000;
  // Budget for the (size x weight) dynamic-programming table, in cells.
  long long max_table_cells = 60'000'000;
  // Cap for full enumeration of the 2^N coalitions.
  int max_enumeration_voters = 20;
  // Exchangeable analysis assumes a reflection-symmetric measure; set this
  // to force the computation anyway (the sampler's escape hatch).
  bool allow_asymmetric_measure = false;
};

// Exact per-size coalition counts seen from one voter. Index k is the size
// of the coalition A (voter excluded or included as noted); slots outside
// the meaningful range stay zero.
struct SizeProfile {
  long long voters = 0;
  long long voter = 0;  // 1-based
  // A without the voter, |A| = k, A loses, A plus the voter wins. k <= N-1.
  std::vector<Int> swing_plus;
  // A with the voter, |A| = k, A wins. 1 <= k <= N.
  std::vector<Int> win_with;
  // A without the voter, |A| = k, A loses. k <= N-1.
  std::vector<Int> lose_without;

  Int swing_plus_total() const;
};

// Exact count of winning coalitions of each size, k = 0..N.
std::vector<Int> winning_count_by_size(const WeightedVotingSystem& system,
                                       const EngineOptions& options = {});

SizeProfile size_profile(const WeightedVotingSystem& system, long long voter,
                         const EngineOptions& options = {});

// The three decisiveness and three success probabilities of one voter.
struct VoterPower {
  Rat decisive_plus;  // vote no, outcome no, flipping the vote flips it
  Rat decisive_minus;  // vote yes, outcome yes, flipping the vote flips it
  Rat decisive;
  Rat success_plus;   // vote yes, outcome yes
  Rat success_minus;  // vote no, outcome no
  Rat success;
};

struct PowerReport {
  long long voters = 0;
  std::vector<VoterPower> per_voter;
  Rat efficiency;  // probability the proposal passes
};

// Pick one quantity out of a report; voter is 1-based and ignored for E.
const Rat& report_quantity(const PowerReport& report, Quantity quantity,
                           long long voter);

// Exact analysis of a weighted system under an exchangeable voting measure.
// All probabilities come out as exact rationals: coalition counts from a
// dynamic program over (size, scaled weight), combined with the measure's
// size kernel. Voters of equal weight provably get equal power, so the
// per-voter work runs once per distinct weight.
PowerReport analyze(const WeightedVotingSystem& system,
                    const BeliefMeasure& measure,
                    const EngineOptions& options = {});

// Just the probability that a proposal passes; much cheaper than a full
// report for systems with many distinct weights.
Rat efficiency(const WeightedVotingSystem& system, const BeliefMeasure& measure,
               const EngineOptions& options = {});

// Per-size coalition counts for every voter at once, found by walking all
// 2^N coalitions. Independent of the dynamic program by construction (the
// negative-swing counts come from their own definition, not the
// join bijection), which is what makes it a useful oracle.
struct CoalitionCounts {
  long long voters = 0;
  std::vector<Int> win_all;                    // [k]
  std::vector<std::vector<Int>> swing_plus;    // [voter-1][k], voter not in A
  std::vector<std::vector<Int>> swing_minus;   // [voter-1][k], voter in A
  std::vector<std::vector<Int>> win_with;      // [voter-1][k], voter in A
  std::vector<std::vector<Int>> lose_without;  // [voter-1][k], voter not in A
};

CoalitionCounts enumerate_coalition_counts(
    int n_voters, const std::function<bool(std::uint32_t)>& winning,
    const EngineOptions& options = {});

CoalitionCounts enumerate_coalition_counts(const WeightedVotingSystem& system,
                                           const EngineOptions& options = {});

// Reference implementation of analyze() by full enumeration.
PowerReport brute_force_analyze(const WeightedVotingSystem& system,
                                const BeliefMeasure& measure,
                                const EngineOptions& options = {});

PowerReport brute_force_analyze(const ExplicitVotingSystem& system,
                                const BeliefMeasure& measure,
                                const EngineOptions& options = {});

}  // namespace vpow
