#include "vpow/engine.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include "vpow/error.hpp"

namespace vpow {

namespace {

// Scaled weights and threshold small enough for machine arithmetic. The
// dynamic program indexes arrays by integer weight sums, so this is a hard
// requirement for the weighted path (not for the unit-weight path).
struct MachineScaled {
  std::vector<long long> weights;
  long long threshold = 0;  // integer sum s wins iff s >= threshold
};

MachineScaled machine_scale(const WeightedVotingSystem& system) {
  ScaledSystem scaled = scale_weights(system);
  Int total(0);
  for (const Int& w : scaled.weights) total += w;
  if (!total.fits_slong_p() || !scaled.win_threshold.fits_slong_p()) {
    throw Error(ErrorCategory::Resource,
                "scaled weights exceed the machine-word range; reduce the "
                "weight denominators");
  }
  MachineScaled out;
  out.weights.reserve(scaled.weights.size());
  for (const Int& w : scaled.weights) {
    out.weights.push_back(w.get_si());
  }
  out.threshold = scaled.win_threshold.get_si();
  return out;
}

Int to_int(const Int& v) { return v; }
Int to_int(unsigned long long v) {
  return Int(static_cast<unsigned long>(v));
}

// ---- joint (coalition size, clamped weight sum) tables ----
//
// cells[k * width + c] counts subsets of the included voters with exactly
// k members and integer weight c, where the final column c = threshold
// absorbs every sum >= threshold (all queries break at or below the
// threshold, so heavier sums need no distinction).

template <typename Count>
std::vector<Count> build_table(const std::vector<long long>& weights,
                               long long threshold, long long rows,
                               long long skip_index,
                               const EngineOptions& options) {
  const long long width = threshold + 1;
  if ((rows + 1) * width > options.max_table_cells) {
    throw Error(ErrorCategory::Resource,
                "count table would need " + std::to_string((rows + 1) * width) +
                    " cells; the budget is " +
                    std::to_string(options.max_table_cells));
  }
  std::vector<Count> cells(static_cast<size_t>((rows + 1) * width), Count(0));
  cells[0] = Count(1);
  long long used = 0;
  for (long long i = 0; i < static_cast<long long>(weights.size()); ++i) {
    if (i == skip_index) continue;
    const long long w = weights[static_cast<size_t>(i)];
    ++used;
    for (long long k = std::min(used, rows); k >= 1; --k) {
      const Count* src = &cells[static_cast<size_t>((k - 1) * width)];
      Count* dst = &cells[static_cast<size_t>(k * width)];
      for (long long c = 0; c <= threshold; ++c) {
        if (src[c] == 0) continue;
        dst[std::min(c + w, threshold)] += src[c];
      }
    }
  }
  return cells;
}

// Undo one voter's contribution, exactly inverting build_table's update.
// Row k - 1 is fully restored before row k uses it, hence the ascending
// order.
template <typename Count>
void remove_voter(std::vector<Count>& cells, long long threshold,
                  long long rows, long long weight) {
  const long long width = threshold + 1;
  for (long long k = 1; k <= rows; ++k) {
    const Count* src = &cells[static_cast<size_t>((k - 1) * width)];
    Count* dst = &cells[static_cast<size_t>(k * width)];
    for (long long c = 0; c <= threshold; ++c) {
      if (src[c] == 0) continue;
      dst[std::min(c + weight, threshold)] -= src[c];
    }
  }
}

// Reads one voter's per-size counts out of a table built over the other
// voters. Column c < threshold holds the exact sum c; the clamp column
// holds every sum >= threshold.
template <typename Count>
void extract_profile(const std::vector<Count>& cells, long long threshold,
                     long long n, long long voter_weight, SizeProfile& out) {
  const long long width = threshold + 1;
  const long long lo = std::max(0LL, threshold - voter_weight);
  out.swing_plus.assign(static_cast<size_t>(n) + 1, Int(0));
  out.win_with.assign(static_cast<size_t>(n) + 1, Int(0));
  out.lose_without.assign(static_cast<size_t>(n) + 1, Int(0));

  std::vector<Int> tail_from_lo(static_cast<size_t>(n), Int(0));
  for (long long k = 0; k <= n - 1; ++k) {
    const Count* row = &cells[static_cast<size_t>(k * width)];
    Int in_window(0), below_threshold(0), from_lo(0);
    for (long long c = 0; c <= threshold; ++c) {
      if (row[c] == 0) continue;
      Int v = to_int(row[c]);
      if (c >= lo) from_lo += v;
      if (c < threshold) {
        below_threshold += v;
        if (c >= lo) in_window += v;
      }
    }
    // A loses (sum < threshold) but A plus the voter wins (sum >= lo).
    out.swing_plus[static_cast<size_t>(k)] = in_window;
    out.lose_without[static_cast<size_t>(k)] = below_threshold;
    tail_from_lo[static_cast<size_t>(k)] = from_lo;
  }
  // |A| = k with the voter inside means k - 1 others, who together with the
  // voter's weight reach the threshold exactly when their sum >= lo.
  for (long long k = 1; k <= n; ++k) {
    out.win_with[static_cast<size_t>(k)] =
        tail_from_lo[static_cast<size_t>(k - 1)];
  }
}

template <typename Count>
std::vector<Int> extract_win_all(const std::vector<Count>& cells,
                                 long long threshold, long long n) {
  const long long width = threshold + 1;
  std::vector<Int> win_all(static_cast<size_t>(n) + 1, Int(0));
  for (long long k = 0; k <= n; ++k) {
    win_all[static_cast<size_t>(k)] =
        to_int(cells[static_cast<size_t>(k * width + threshold)]);
  }
  return win_all;
}

// ---- the unit-weight closed path ----

// With equal weights, winning depends on the coalition size alone: size k
// wins iff k >= member_threshold.
long long member_threshold(const WeightedVotingSystem& system) {
  Int k = ceil_rat(system.quota() / system.weights()[0]);
  return k.get_si();  // 1 <= k <= N, so it fits
}

void check_unit_cap(long long n, const EngineOptions& options) {
  if (n > options.max_unit_voters) {
    throw Error(ErrorCategory::Resource,
                "equal-weight closed path capped at " +
                    std::to_string(options.max_unit_voters) + " voters");
  }
}

SizeProfile unit_profile(long long n, long long threshold) {
  SizeProfile out;
  out.voters = n;
  out.swing_plus.assign(static_cast<size_t>(n) + 1, Int(0));
  out.win_with.assign(static_cast<size_t>(n) + 1, Int(0));
  out.lose_without.assign(static_cast<size_t>(n) + 1, Int(0));
  const unsigned long m = static_cast<unsigned long>(n - 1);
  out.swing_plus[static_cast<size_t>(threshold - 1)] =
      binomial(m, static_cast<unsigned long>(threshold - 1));
  for (long long k = threshold; k <= n; ++k) {
    out.win_with[static_cast<size_t>(k)] =
        binomial(m, static_cast<unsigned long>(k - 1));
  }
  for (long long k = 0; k <= threshold - 1; ++k) {
    out.lose_without[static_cast<size_t>(k)] =
        binomial(m, static_cast<unsigned long>(k));
  }
  return out;
}

std::vector<Int> unit_win_all(long long n, long long threshold) {
  std::vector<Int> win_all(static_cast<size_t>(n) + 1, Int(0));
  for (long long k = threshold; k <= n; ++k) {
    win_all[static_cast<size_t>(k)] =
        binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  }
  return win_all;
}

// ---- combining counts with the measure's size kernel ----

VoterPower combine_profile(const SizeProfile& profile, const SizeKernel& kernel) {
  const long long n = kernel.voters;
  VoterPower p{Rat(0), Rat(0), Rat(0), Rat(0), Rat(0), Rat(0)};
  for (long long k = 0; k <= n - 1; ++k) {
    const Int& swings = profile.swing_plus[static_cast<size_t>(k)];
    if (swings == 0) continue;
    Rat count(swings);
    p.decisive_plus += count * kernel.values[static_cast<size_t>(k)];
    // Adding the voter maps these coalitions one-to-one onto the
    // negative-swing ones of size k + 1.
    p.decisive_minus += count * kernel.values[static_cast<size_t>(k + 1)];
  }
  for (long long k = 1; k <= n; ++k) {
    const Int& c = profile.win_with[static_cast<size_t>(k)];
    if (c != 0) p.success_plus += Rat(c) * kernel.values[static_cast<size_t>(k)];
  }
  for (long long k = 0; k <= n - 1; ++k) {
    const Int& c = profile.lose_without[static_cast<size_t>(k)];
    if (c != 0) p.success_minus += Rat(c) * kernel.values[static_cast<size_t>(k)];
  }
  p.decisive = p.decisive_plus + p.decisive_minus;
  p.success = p.success_plus + p.success_minus;
  return p;
}

Rat combine_win_all(const std::vector<Int>& win_all, const SizeKernel& kernel) {
  Rat e(0);
  for (size_t k = 0; k < win_all.size(); ++k) {
    if (win_all[k] != 0) e += Rat(win_all[k]) * kernel.values[k];
  }
  return e;
}

void check_measure(const BeliefMeasure& measure, const EngineOptions& options) {
  if (!options.allow_asymmetric_measure && !is_reflection_symmetric(measure)) {
    throw Error(ErrorCategory::Validation,
                "the voting measure is not reflection-symmetric; exchangeable "
                "analysis assumes symmetry");
  }
}

template <typename Count>
PowerReport analyze_weighted(const WeightedVotingSystem& system,
                             const SizeKernel& kernel,
                             const EngineOptions& options) {
  const long long n = system.voters();
  MachineScaled scaled = machine_scale(system);

  PowerReport report;
  report.voters = n;
  report.per_voter.resize(static_cast<size_t>(n));

  std::vector<Count> global =
      build_table<Count>(scaled.weights, scaled.threshold, n, -1, options);
  report.efficiency =
      combine_win_all(extract_win_all(global, scaled.threshold, n), kernel);

  // Exchangeability makes equal-weight voters interchangeable, so one
  // profile per distinct weight suffices.
  std::map<long long, std::vector<size_t>> by_weight;
  for (size_t v = 0; v < scaled.weights.size(); ++v) {
    by_weight[scaled.weights[v]].push_back(v);
  }
  for (const auto& [weight, members] : by_weight) {
    std::vector<Count> others = global;
    remove_voter(others, scaled.threshold, n, weight);
    SizeProfile profile;
    profile.voters = n;
    profile.voter = static_cast<long long>(members.front()) + 1;
    extract_profile(others, scaled.threshold, n, weight, profile);
    VoterPower power = combine_profile(profile, kernel);
    for (size_t v : members) report.per_voter[v] = power;
  }
  return report;
}

}  // namespace

Int SizeProfile::swing_plus_total() const {
  Int total(0);
  for (const Int& c : swing_plus) total += c;
  return total;
}

std::vector<Int> winning_count_by_size(const WeightedVotingSystem& system,
                                       const EngineOptions& options) {
  const long long n = system.voters();
  if (system.all_weights_equal()) {
    check_unit_cap(n, options);
    return unit_win_all(n, member_threshold(system));
  }
  MachineScaled scaled = machine_scale(system);
  if (n <= 64) {
    auto cells = build_table<unsigned long long>(scaled.weights,
                                                 scaled.threshold, n, -1, options);
    return extract_win_all(cells, scaled.threshold, n);
  }
  auto cells = build_table<Int>(scaled.weights, scaled.threshold, n, -1, options);
  return extract_win_all(cells, scaled.threshold, n);
}

SizeProfile size_profile(const WeightedVotingSystem& system, long long voter,
                         const EngineOptions& options) {
  const long long n = system.voters();
  if (voter < 1 || voter > n) {
    throw Error(ErrorCategory::Validation,
                "voter index " + std::to_string(voter) + " outside 1.." +
                    std::to_string(n));
  }
  if (system.all_weights_equal()) {
    check_unit_cap(n, options);
    SizeProfile out = unit_profile(n, member_threshold(system));
    out.voter = voter;
    return out;
  }
  MachineScaled scaled = machine_scale(system);
  SizeProfile out;
  out.voters = n;
  out.voter = voter;
  const long long weight = scaled.weights[static_cast<size_t>(voter - 1)];
  if (n <= 64) {
    auto cells = build_table<unsigned long long>(
        scaled.weights, scaled.threshold, n, voter - 1, options);
    extract_profile(cells, scaled.threshold, n, weight, out);
  } else {
    auto cells = build_table<Int>(scaled.weights, scaled.threshold, n,
                                  voter - 1, options);
    extract_profile(cells, scaled.threshold, n, weight, out);
  }
  return out;
}

const Rat& report_quantity(const PowerReport& report, Quantity quantity,
                           long long voter) {
  if (quantity == Quantity::E) return report.efficiency;
  if (voter < 1 || voter > report.voters) {
    throw Error(ErrorCategory::Validation,
                "voter index " + std::to_string(voter) + " outside 1.." +
                    std::to_string(report.voters));
  }
  const VoterPower& p = report.per_voter[static_cast<size_t>(voter - 1)];
  switch (quantity) {
    case Quantity::DPlus: return p.decisive_plus;
    case Quantity::DMinus: return p.decisive_minus;
    case Quantity::D: return p.decisive;
    case Quantity::SPlus: return p.success_plus;
    case Quantity::SMinus: return p.success_minus;
    case Quantity::S: return p.success;
    case Quantity::E: break;
  }
  throw Error(ErrorCategory::Internal, "unhandled quantity");
}

PowerReport analyze(const WeightedVotingSystem& system,
                    const BeliefMeasure& measure, const EngineOptions& options) {
  check_measure(measure, options);
  const long long n = system.voters();
  SizeKernel kernel = size_kernel(measure, n);

  if (system.all_weights_equal()) {
    check_unit_cap(n, options);
    const long long threshold = member_threshold(system);
    SizeProfile profile = unit_profile(n, threshold);
    VoterPower power = combine_profile(profile, kernel);
    PowerReport report;
    report.voters = n;
    report.per_voter.assign(static_cast<size_t>(n), power);
    report.efficiency = combine_win_all(unit_win_all(n, threshold), kernel);
    return report;
  }
  if (n <= 64) return analyze_weighted<unsigned long long>(system, kernel, options);
  return analyze_weighted<Int>(system, kernel, options);
}

Rat efficiency(const WeightedVotingSystem& system, const BeliefMeasure& measure,
               const EngineOptions& options) {
  check_measure(measure, options);
  SizeKernel kernel = size_kernel(measure, system.voters());
  return combine_win_all(winning_count_by_size(system, options), kernel);
}

CoalitionCounts enumerate_coalition_counts(
    int n_voters, const std::function<bool(std::uint32_t)>& winning,
    const EngineOptions& options) {
  if (n_voters < 1) {
    throw Error(ErrorCategory::Validation, "voter count must be at least 1");
  }
  if (n_voters > options.max_enumeration_voters ||
      n_voters > ExplicitVotingSystem::kMaxVoters) {
    throw Error(ErrorCategory::Resource,
                "full enumeration capped at " +
                    std::to_string(std::min<long long>(
                        options.max_enumeration_voters,
                        ExplicitVotingSystem::kMaxVoters)) +
                    " voters");
  }
  const int n = n_voters;
  const std::uint32_t count = 1u << n;
  std::vector<bool> win(count);
  for (std::uint32_t mask = 0; mask < count; ++mask) win[mask] = winning(mask);

  using Row = std::vector<unsigned long long>;
  const size_t slots = static_cast<size_t>(n) + 1;
  std::vector<Row> swing_plus(static_cast<size_t>(n), Row(slots, 0));
  std::vector<Row> swing_minus(static_cast<size_t>(n), Row(slots, 0));
  std::vector<Row> win_with(static_cast<size_t>(n), Row(slots, 0));
  std::vector<Row> lose_without(static_cast<size_t>(n), Row(slots, 0));
  Row win_all(slots, 0);

  for (std::uint32_t mask = 0; mask < count; ++mask) {
    const size_t k = static_cast<size_t>(std::popcount(mask));
    const bool w = win[mask];
    if (w) ++win_all[k];
    for (int v = 0; v < n; ++v) {
      const std::uint32_t bit = 1u << v;
      if (mask & bit) {
        if (w) {
          ++win_with[static_cast<size_t>(v)][k];
          if (!win[mask ^ bit]) ++swing_minus[static_cast<size_t>(v)][k];
        }
      } else {
        if (!w) {
          ++lose_without[static_cast<size_t>(v)][k];
          if (win[mask | bit]) ++swing_plus[static_cast<size_t>(v)][k];
        }
      }
    }
  }

  CoalitionCounts out;
  out.voters = n;
  auto lift = [&](const std::vector<Row>& rows) {
    std::vector<std::vector<Int>> lifted(rows.size());
    for (size_t v = 0; v < rows.size(); ++v) {
      lifted[v].reserve(slots);
      for (unsigned long long c : rows[v]) {
        lifted[v].push_back(Int(static_cast<unsigned long>(c)));
      }
    }
    return lifted;
  };
  out.swing_plus = lift(swing_plus);
  out.swing_minus = lift(swing_minus);
  out.win_with = lift(win_with);
  out.lose_without = lift(lose_without);
  out.win_all.reserve(slots);
  for (unsigned long long c : win_all) {
    out.win_all.push_back(Int(static_cast<unsigned long>(c)));
  }
  return out;
}

CoalitionCounts enumerate_coalition_counts(const WeightedVotingSystem& system,
                                           const EngineOptions& options) {
  const long long n = system.voters();
  if (n > options.max_enumeration_voters) {
    throw Error(ErrorCategory::Resource,
                "full enumeration capped at " +
                    std::to_string(options.max_enumeration_voters) + " voters");
  }
  // Gray-code walk over all coalitions, maintaining the exact weight sum
  // with one rational update per step.
  const std::uint32_t count = 1u << n;
  std::vector<bool> win(count);
  win[0] = sgn(system.quota()) <= 0;  // quota > 0, so the empty set loses
  Rat sum(0);
  for (std::uint32_t i = 1; i < count; ++i) {
    const std::uint32_t gray = i ^ (i >> 1);
    const int bit = std::countr_zero(i);
    if (gray & (1u << bit)) {
      sum += system.weights()[static_cast<size_t>(bit)];
    } else {
      sum -= system.weights()[static_cast<size_t>(bit)];
    }
    win[gray] = sum >= system.quota();
  }
  return enumerate_coalition_counts(
      static_cast<int>(n), [&](std::uint32_t mask) { return win[mask]; },
      options);
}

namespace {

PowerReport combine_counts(const CoalitionCounts& counts,
                           const SizeKernel& kernel) {
  const long long n = counts.voters;
  PowerReport report;
  report.voters = n;
  report.per_voter.resize(static_cast<size_t>(n));
  for (size_t v = 0; v < static_cast<size_t>(n); ++v) {
    VoterPower p{Rat(0), Rat(0), Rat(0), Rat(0), Rat(0), Rat(0)};
    for (size_t k = 0; k <= static_cast<size_t>(n); ++k) {
      const Rat& kk = kernel.values[k];
      if (counts.swing_plus[v][k] != 0) {
        p.decisive_plus += Rat(counts.swing_plus[v][k]) * kk;
      }
      if (counts.swing_minus[v][k] != 0) {
        p.decisive_minus += Rat(counts.swing_minus[v][k]) * kk;
      }
      if (counts.win_with[v][k] != 0) {
        p.success_plus += Rat(counts.win_with[v][k]) * kk;
      }
      if (counts.lose_without[v][k] != 0) {
        p.success_minus += Rat(counts.lose_without[v][k]) * kk;
      }
    }
    p.decisive = p.decisive_plus + p.decisive_minus;
    p.success = p.success_plus + p.success_minus;
    report.per_voter[v] = p;
  }
  report.efficiency = combine_win_all(counts.win_all, kernel);
  return report;
}

}  // namespace

PowerReport brute_force_analyze(const WeightedVotingSystem& system,
                                const BeliefMeasure& measure,
                                const EngineOptions& options) {
  check_measure(measure, options);
  CoalitionCounts counts = enumerate_coalition_counts(system, options);
  return combine_counts(counts, size_kernel(measure, system.voters()));
}

PowerReport brute_force_analyze(const ExplicitVotingSystem& system,
                                const BeliefMeasure& measure,
                                const EngineOptions& options) {
  check_measure(measure, options);
  CoalitionCounts counts = enumerate_coalition_counts(
      system.voters(),
      [&](std::uint32_t mask) { return system.is_winning_mask(mask); },
      options);
  return combine_counts(counts, size_kernel(measure, system.voters()));
}

}  // namespace vpow
