#pragma once

#include <cstdint>
#include <vector>

#include "vpow/measures.hpp"
#include "vpow/quantity.hpp"
#include "vpow/systems.hpp"

namespace vpow::mc {

// Counter-based splitmix64. Every (seed, stream) pair is its own
// deterministic generator, so sample i can be regenerated in isolation and
// estimates cannot depend on how samples are batched or scheduled.
class SampleRng {
public:
  SampleRng(std::uint64_t seed, std::uint64_t stream)
      : state_(seed + 0x9E3779B97F4A7C15ull * (stream + 1)) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform on [0, 1), 53 random bits.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
  std::uint64_t state_;
};

// Draws acceptance rates from a belief measure and full vote profiles from
// the two-stage model: one common rate per proposal, then independent
// coin flips per voter at that rate.
class ProfileSampler {
public:
  explicit ProfileSampler(const BeliefMeasure& measure);

  double acceptance_rate(SampleRng& rng) const;

  // yes is resized to n_voters; yes[i] is voter i+1's vote.
  void sample_profile(long long n_voters, SampleRng& rng,
                      std::vector<std::uint8_t>& yes) const;

private:
  struct Component {
    double cumulative;  // running mass including this component
    bool is_atom;
    double location;  // atom position, or segment lower bound
    double span;      // 0 for atoms, segment length otherwise
  };
  std::vector<Component> components_;
};

struct EstimateRequest {
  std::vector<Quantity> quantities;  // empty means all seven
  std::vector<long long> voters;     // empty means all, 1-based
  long long samples = 100'000;
  std::uint64_t seed = 1;
};

struct Estimate {
  Quantity quantity = Quantity::E;
  long long voter = 0;  // 1-based; 0 for the system-level E
  double value = 0;
  double std_error = 0;  // binomial, sqrt(v(1-v)/samples)
  long long samples = 0;
  std::uint64_t seed = 0;
};

// Monte Carlo estimates of the report quantities. Deterministic for a
// fixed seed. The measure must be reflection-symmetric unless
// allow_asymmetric_measure is set; sampling itself is well defined either
// way, which is exactly why the escape hatch lives here and not in the
// exact engine.
std::vector<Estimate> estimate(const WeightedVotingSystem& system,
                               const BeliefMeasure& measure,
                               const EstimateRequest& request,
                               bool allow_asymmetric_measure = false);

}  // namespace vpow::mc
