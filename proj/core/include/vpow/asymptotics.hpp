#pragma once

#include <optional>
#include <span>
#include <vector>

#include "vpow/engine.hpp"
#include "vpow/measures.hpp"
#include "vpow/quantity.hpp"
#include "vpow/rational.hpp"

namespace vpow::asym {

// Closed forms, limits, approximation rates and concentration bounds for
// the unit-weight threshold rule "a coalition of size k wins iff
// k >= K = ceil(r N)" under the two classic measures: the fair coin (point
// mass at 1/2) and the uniform acceptance rate on [0,1].

// ---- uniform-rate measure: everything in closed form ----

struct UnitRuleUniformValues {
  long long voters = 0;
  long long threshold = 0;  // K
  Rat decisive_plus, decisive_minus, decisive;  // decisive = 1/N exactly
  Rat success_plus, success_minus, success;
  Rat efficiency;
};

UnitRuleUniformValues unit_rule_uniform_values(long long n_voters,
                                               const Rat& relative_quota);
UnitRuleUniformValues unit_rule_uniform_from_threshold(long long n_voters,
                                                       long long threshold);

// (N - ceil(q) + 1) / (N + 1) for an absolute quota 0 < q <= N.
Rat unit_rule_uniform_efficiency(long long n_voters, const Rat& quota);

// ---- fair-coin measure: exact binomial tails ----

Rat unit_rule_coin_efficiency(long long n_voters, long long threshold);
Rat unit_rule_coin_success_plus(long long n_voters, long long threshold);
Rat unit_rule_coin_success_minus(long long n_voters, long long threshold);
// Total decisiveness; the positive and negative halves are equal here.
Rat unit_rule_coin_decisive(long long n_voters, long long threshold);

// ---- floating-point companions for very large populations ----

double log_binomial(long long n, long long k);
// sum over k in [k_lo, k_hi] of C(n,k) / 2^n, evaluated in doubles with the
// negligible far tails dropped.
double coin_tail_probability(long long n, long long k_lo, long long k_hi);

// Known simple-majority rates: decisiveness falls like 2/sqrt(2 pi N) and
// success approaches 1/2 at half that rate.
double simple_majority_coin_decisive_estimate(long long n_voters);
double simple_majority_coin_success_estimate(long long n_voters);

// ---- concentration bounds ----

// exp(-2 deviation^2 / scale); scale must be positive.
double hoeffding_tail(double deviation, double scale);

// Tail bound 2 exp(-2 deviation^2 / concentration) for the deviation of a
// weighted vote share from its mean, in units of the total weight. Decays
// only when the weight concentration does.
double weighted_deviation_bound(double deviation, std::span<const Rat> weights);

// For supermajorities r > 1/2 under the fair coin: the pass probability is
// at most exp(-2 (r - 1/2)^2 N) and the per-voter positive success beyond
// the half chance of agreeing is at most half that with N - 1 in the
// exponent.
double coin_efficiency_bound(const Rat& relative_quota, long long n_voters);
double coin_success_plus_bound(const Rat& relative_quota, long long n_voters);

// ---- infinite-population limits ----

struct LimitPredictions {
  Rat coin_efficiency;        // 1, 1/2 or 0 by the sign of r - 1/2
  Rat coin_success_plus;      // 1/2, 1/4 or 0
  Rat coin_success_minus;     // 0, 1/4 or 1/2
  Rat uniform_efficiency;     // 1 - r
  Rat uniform_success_plus;   // 1/2 - r^2/2
  Rat uniform_success_minus;  // 1/2 - (1-r)^2/2
  // General common-belief limits; they assume no mass sits exactly on r,
  // so the mass found there is reported alongside.
  std::optional<Rat> measure_efficiency;     // measure([r,1])
  std::optional<Rat> measure_success_plus;   // integral of p over [r,1]
  std::optional<Rat> measure_success_minus;  // integral of 1-p over [0,r]
  std::optional<Rat> measure_mass_at_cut;
};

LimitPredictions limit_predictions(const Rat& relative_quota,
                                   const BeliefMeasure* measure = nullptr);

// ---- convergence tables ----

struct ConvergenceRequest {
  Quantity quantity = Quantity::E;
  BeliefMeasure measure = BeliefMeasure::penrose_banzhaf();
  // Threshold floor(N/2)+1 per row instead of ceil(r N).
  bool simple_majority = false;
  Rat relative_quota = make_rat(1, 2);
  std::vector<long long> voter_counts;
  // Rows up to this many voters run the exact engine; beyond it the
  // fair-coin measure falls back to floating binomial tails, the uniform
  // measure keeps its closed forms, and other measures are refused.
  long long exact_voter_cap = 4096;
};

struct ConvergenceRow {
  long long voters = 0;
  double value = 0;
  std::optional<Rat> exact;  // set when the row is exact and small enough to print
  double limit = 0;
  double gap = 0;                  // |value - limit|
  std::optional<double> estimate;  // known approximation rate, when one exists
  std::optional<double> bound;     // proven upper bound on value, when one applies
};

struct ConvergenceTable {
  Quantity quantity = Quantity::E;
  std::vector<ConvergenceRow> rows;
};

ConvergenceTable convergence_table(const ConvergenceRequest& request,
                                   const EngineOptions& options = {});

}  // namespace vpow::asym
