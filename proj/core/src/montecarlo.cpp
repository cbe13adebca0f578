#include "vpow/montecarlo.hpp"

#include <cmath>

#include "vpow/error.hpp"

namespace vpow::mc {

ProfileSampler::ProfileSampler(const BeliefMeasure& measure) {
  double running = 0;
  for (const Atom& atom : measure.atoms()) {
    running += to_double(atom.mass);
    components_.push_back(
        {running, true, to_double(atom.location), 0.0});
  }
  for (const Segment& seg : measure.segments()) {
    running += to_double(seg.mass);
    components_.push_back({running, false, to_double(seg.lower),
                           to_double(seg.upper - seg.lower)});
  }
  // Masses sum to 1 exactly; pin the last cumulative against rounding so
  // selection can never fall off the end.
  components_.back().cumulative = 1.0;
}

double ProfileSampler::acceptance_rate(SampleRng& rng) const {
  const double u = rng.next_unit();
  size_t i = 0;
  while (i + 1 < components_.size() && u >= components_[i].cumulative) ++i;
  const Component& c = components_[i];
  if (c.is_atom) return c.location;
  return c.location + c.span * rng.next_unit();
}

void ProfileSampler::sample_profile(long long n_voters, SampleRng& rng,
                                    std::vector<std::uint8_t>& yes) const {
  const double p = acceptance_rate(rng);
  yes.resize(static_cast<size_t>(n_voters));
  for (auto& vote : yes) vote = rng.next_unit() < p ? 1 : 0;
}

std::vector<Estimate> estimate(const WeightedVotingSystem& system,
                               const BeliefMeasure& measure,
                               const EstimateRequest& request,
                               bool allow_asymmetric_measure) {
  if (!allow_asymmetric_measure && !is_reflection_symmetric(measure)) {
    throw Error(ErrorCategory::Validation,
                "the voting measure is not reflection-symmetric; pass the "
                "asymmetric override to sample anyway");
  }
  if (request.samples < 1) {
    throw Error(ErrorCategory::Validation, "sample count must be at least 1");
  }

  const long long n = system.voters();
  std::vector<long long> voters = request.voters;
  if (voters.empty()) {
    voters.resize(static_cast<size_t>(n));
    for (long long v = 1; v <= n; ++v) voters[static_cast<size_t>(v - 1)] = v;
  }
  for (long long v : voters) {
    if (v < 1 || v > n) {
      throw Error(ErrorCategory::Validation,
                  "voter index " + std::to_string(v) + " outside 1.." +
                      std::to_string(n));
    }
  }
  std::vector<Quantity> quantities = request.quantities;
  if (quantities.empty()) {
    quantities.assign(std::begin(kAllQuantities), std::end(kAllQuantities));
  }

  // Machine-word weights keep the inner loop exact and fast.
  ScaledSystem scaled = scale_weights(system);
  Int total(0);
  for (const Int& w : scaled.weights) total += w;
  if (!total.fits_slong_p() || !scaled.win_threshold.fits_slong_p()) {
    throw Error(ErrorCategory::Resource,
                "scaled weights exceed the machine-word range; reduce the "
                "weight denominators");
  }
  std::vector<long long> weights;
  weights.reserve(scaled.weights.size());
  for (const Int& w : scaled.weights) weights.push_back(w.get_si());
  const long long threshold = scaled.win_threshold.get_si();

  std::vector<Quantity> per_voter_quantities;
  for (Quantity q : quantities) {
    if (q != Quantity::E) per_voter_quantities.push_back(q);
  }

  // hits[voter slot][quantity slot]; E kept separately.
  std::vector<std::vector<long long>> hits(
      voters.size(), std::vector<long long>(per_voter_quantities.size(), 0));
  long long e_hits = 0;

  ProfileSampler sampler(measure);
  std::vector<std::uint8_t> yes;
  for (long long i = 0; i < request.samples; ++i) {
    SampleRng rng(request.seed, static_cast<std::uint64_t>(i));
    sampler.sample_profile(n, rng, yes);
    long long sum = 0;
    for (long long j = 0; j < n; ++j) {
      if (yes[static_cast<size_t>(j)]) sum += weights[static_cast<size_t>(j)];
    }
    const bool win = sum >= threshold;
    if (win) ++e_hits;

    for (size_t slot = 0; slot < voters.size(); ++slot) {
      const size_t j = static_cast<size_t>(voters[slot] - 1);
      const bool in = yes[j] != 0;
      const long long w = weights[j];
      for (size_t qs = 0; qs < per_voter_quantities.size(); ++qs) {
        bool hit = false;
        switch (per_voter_quantities[qs]) {
          case Quantity::DPlus:
            hit = !in && !win && sum + w >= threshold;
            break;
          case Quantity::DMinus:
            hit = in && win && sum - w < threshold;
            break;
          case Quantity::D:
            hit = in ? (win && sum - w < threshold)
                     : (!win && sum + w >= threshold);
            break;
          case Quantity::SPlus:
            hit = in && win;
            break;
          case Quantity::SMinus:
            hit = !in && !win;
            break;
          case Quantity::S:
            hit = in == win;
            break;
          case Quantity::E:
            break;
        }
        if (hit) ++hits[slot][qs];
      }
    }
  }

  const double samples = static_cast<double>(request.samples);
  auto finish = [&](Quantity q, long long voter, long long count) {
    Estimate est;
    est.quantity = q;
    est.voter = voter;
    est.value = static_cast<double>(count) / samples;
    est.std_error = std::sqrt(est.value * (1 - est.value) / samples);
    est.samples = request.samples;
    est.seed = request.seed;
    return est;
  };

  std::vector<Estimate> out;
  for (Quantity q : quantities) {
    if (q == Quantity::E) {
      out.push_back(finish(Quantity::E, 0, e_hits));
      continue;
    }
    for (size_t slot = 0; slot < voters.size(); ++slot) {
      size_t qs = 0;
      while (per_voter_quantities[qs] != q) ++qs;
      out.push_back(finish(q, voters[slot], hits[slot][qs]));
    }
  }
  return out;
}

}  // namespace vpow::mc
