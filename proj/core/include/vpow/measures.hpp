#pragma once

#include <vector>

#include "vpow/rational.hpp"

namespace vpow {

// A belief measure is a probability measure on [0,1] describing the common
// acceptance probability of a random proposal. We support finitely many
// atoms plus finitely many uniform-density segments; that family covers
// every measure the analysis needs and is closed under mixing.
struct Atom {
  Rat location;  // in [0,1]
  Rat mass;      // > 0
};

struct Segment {
  Rat lower;  // 0 <= lower < upper <= 1
  Rat upper;
  Rat mass;  // > 0, spread uniformly over [lower, upper]
};

class BeliefMeasure {
public:
  // Validates: locations and bounds inside [0,1], lower < upper, masses
  // positive, total mass exactly 1. Zero-mass components may be passed and
  // are dropped. Atoms at the same location are merged.
  BeliefMeasure(std::vector<Atom> atoms, std::vector<Segment> segments);

  // Point mass at 1/2: every voter flips a fair coin.
  static BeliefMeasure penrose_banzhaf();
  // Uniform acceptance rate on [0,1].
  static BeliefMeasure shapley_shubik();
  // Half the mass at 0, half at 1: all voters agree, either way.
  static BeliefMeasure unanimity();

  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<Segment>& segments() const { return segments_; }

  // Mass of the single point {p}. Segments contribute nothing.
  Rat mass_at(const Rat& p) const;

  bool is_point_mass_at(const Rat& p) const;
  bool is_uniform_on_unit_interval() const;

private:
  std::vector<Atom> atoms_;        // sorted by location
  std::vector<Segment> segments_;  // sorted by lower bound
};

// True when the measure is invariant under p -> 1-p. The exchangeable
// voting model requires this; the sampler alone can do without it.
bool is_reflection_symmetric(const BeliefMeasure& measure);

// Size kernel: values[k] is the probability weight a coalition of size k
// carries under `measure` with n_voters voters, i.e. the k-th moment
// integral of p^k (1-p)^(n-k). Exact. Satisfies
//   sum_k C(n,k) * values[k] = 1,
// and values[k] = values[n-k] exactly when the measure is
// reflection-symmetric.
struct SizeKernel {
  long long voters = 0;
  std::vector<Rat> values;  // size voters + 1

  const Rat& at(long long coalition_size) const;
};

SizeKernel size_kernel(const BeliefMeasure& measure, long long n_voters);

// Tail quantities of the measure around a cut point r, used by the
// infinite-population limits: mass of [r,1], the mean acceptance rate
// restricted to [r,1], the mean rejection rate restricted to [0,r], and
// the mass sitting exactly on r (the limit statements assume it is zero).
struct TailIntegrals {
  Rat mass_above;              // measure([r, 1])
  Rat acceptance_mean_above;   // integral of p over [r, 1]
  Rat rejection_mean_below;    // integral of (1-p) over [0, r]
  Rat mass_at_cut;             // measure({r})
};

TailIntegrals tail_integrals(const BeliefMeasure& measure, const Rat& cut);

namespace detail {
// Reference implementation of the segment contribution to the size kernel
// via binomial expansion and term-wise integration. Quadratic in the voter
// count; kept for cross-checking the production recurrence.
Rat segment_kernel_reference(const Segment& segment, long long n_voters,
                             long long coalition_size);
}  // namespace detail

}  // namespace vpow
