#include "vpow/asymptotics.hpp"

#include <algorithm>
#include <cmath>

#include "vpow/error.hpp"
#include "vpow/systems.hpp"

namespace vpow::asym {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kLn2 = 0.69314718055994530942;

// Largest population for which the single-binomial decisiveness value is
// still computed exactly before falling back to logarithms.
constexpr long long kExactBinomialCap = 2'000'000;

void check_voters(long long n_voters) {
  if (n_voters < 1) {
    throw Error(ErrorCategory::Domain, "voter count must be at least 1");
  }
}

void check_threshold(long long n_voters, long long threshold) {
  check_voters(n_voters);
  if (threshold < 1 || threshold > n_voters) {
    throw Error(ErrorCategory::Domain,
                "threshold " + std::to_string(threshold) + " outside 1.." +
                    std::to_string(n_voters));
  }
}

void check_relative_quota(const Rat& r) {
  if (sgn(r) <= 0 || r > 1) {
    throw Error(ErrorCategory::Domain,
                "relative quota must lie in (0,1], got " +
                    to_fraction_string(r));
  }
}

Int pow2(long long exponent) {
  Int r(1);
  mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(),
               static_cast<mp_bitcnt_t>(exponent));
  return r;
}

// sum over j in [lo, hi] of C(m, j), exact, via the running-ratio update.
Int binomial_range_sum(long long m, long long lo, long long hi) {
  lo = std::max(lo, 0LL);
  hi = std::min(hi, m);
  if (lo > hi || m < 0) return Int(0);
  Int c = binomial(static_cast<unsigned long>(m), static_cast<unsigned long>(lo));
  Int sum = c;
  for (long long j = lo; j < hi; ++j) {
    c *= static_cast<unsigned long>(m - j);
    mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(),
                    static_cast<unsigned long>(j + 1));
    sum += c;
  }
  return sum;
}

long long threshold_from_relative_quota(long long n_voters, const Rat& r) {
  Int k = ceil_rat(r * Rat(make_int(n_voters)));
  return k.get_si();
}

}  // namespace

UnitRuleUniformValues unit_rule_uniform_from_threshold(long long n_voters,
                                                       long long threshold) {
  check_threshold(n_voters, threshold);
  const Int n = make_int(n_voters), k = make_int(threshold);
  const Int pairs = n * (n + 1);

  UnitRuleUniformValues out;
  out.voters = n_voters;
  out.threshold = threshold;
  out.decisive_plus = make_rat(n - k + 1, pairs);
  out.decisive_minus = make_rat(k, pairs);
  out.decisive = out.decisive_plus + out.decisive_minus;  // 1/N

  const Int below = k - 1;        // coalition sizes that lose without the voter
  const Int above = n - k;        // sizes that win regardless
  const Rat half = make_rat(1, 2);
  out.success_plus = half - make_rat(below * (below + 1), 2 * pairs);
  out.success_minus = half - make_rat(above * (above + 1), 2 * pairs);
  out.success = out.success_plus + out.success_minus;

  out.efficiency = make_rat(n - k + 1, n + 1);
  return out;
}

UnitRuleUniformValues unit_rule_uniform_values(long long n_voters,
                                               const Rat& relative_quota) {
  check_voters(n_voters);
  check_relative_quota(relative_quota);
  return unit_rule_uniform_from_threshold(
      n_voters, threshold_from_relative_quota(n_voters, relative_quota));
}

Rat unit_rule_uniform_efficiency(long long n_voters, const Rat& quota) {
  check_voters(n_voters);
  if (sgn(quota) <= 0 || quota > Rat(make_int(n_voters))) {
    throw Error(ErrorCategory::Domain,
                "quota " + to_fraction_string(quota) + " outside (0, " +
                    std::to_string(n_voters) + "]");
  }
  Int k = ceil_rat(quota);
  return make_rat(make_int(n_voters) - k + 1, make_int(n_voters) + 1);
}

Rat unit_rule_coin_efficiency(long long n_voters, long long threshold) {
  check_threshold(n_voters, threshold);
  return make_rat(binomial_range_sum(n_voters, threshold, n_voters),
                  pow2(n_voters));
}

Rat unit_rule_coin_success_plus(long long n_voters, long long threshold) {
  check_threshold(n_voters, threshold);
  return make_rat(binomial_range_sum(n_voters - 1, threshold - 1, n_voters - 1),
                  pow2(n_voters));
}

Rat unit_rule_coin_success_minus(long long n_voters, long long threshold) {
  check_threshold(n_voters, threshold);
  return make_rat(binomial_range_sum(n_voters - 1, 0, threshold - 1),
                  pow2(n_voters));
}

Rat unit_rule_coin_decisive(long long n_voters, long long threshold) {
  check_threshold(n_voters, threshold);
  return make_rat(binomial(static_cast<unsigned long>(n_voters - 1),
                           static_cast<unsigned long>(threshold - 1)),
                  pow2(n_voters - 1));
}

double log_binomial(long long n, long long k) {
  if (k < 0 || k > n) return -HUGE_VAL;
  return std::lgamma(static_cast<double>(n) + 1) -
         std::lgamma(static_cast<double>(k) + 1) -
         std::lgamma(static_cast<double>(n - k) + 1);
}

double coin_tail_probability(long long n, long long k_lo, long long k_hi) {
  check_voters(n);
  k_lo = std::max(k_lo, 0LL);
  k_hi = std::min(k_hi, n);
  if (k_lo > k_hi) return 0.0;

  // Terms more than ~12 standard deviations out contribute less than
  // exp(-288) and are dropped.
  const double center = static_cast<double>(n) / 2;
  const double half_width = 12.0 * std::sqrt(static_cast<double>(n)) + 30.0;
  const long long lo =
      std::max(k_lo, static_cast<long long>(std::floor(center - half_width)));
  const long long hi =
      std::min(k_hi, static_cast<long long>(std::ceil(center + half_width)));
  if (lo > hi) return 0.0;

  const double log_den = static_cast<double>(n) * kLn2;
  double sum = 0;
  for (long long j = lo; j <= hi; ++j) {
    sum += std::exp(log_binomial(n, j) - log_den);
  }
  return std::min(sum, 1.0);
}

double simple_majority_coin_decisive_estimate(long long n_voters) {
  check_voters(n_voters);
  return 2.0 / std::sqrt(2 * kPi * static_cast<double>(n_voters));
}

double simple_majority_coin_success_estimate(long long n_voters) {
  check_voters(n_voters);
  return 0.5 + 1.0 / std::sqrt(2 * kPi * static_cast<double>(n_voters));
}

double hoeffding_tail(double deviation, double scale) {
  if (!(scale > 0)) {
    throw Error(ErrorCategory::Domain, "scale must be positive");
  }
  return std::exp(-2.0 * deviation * deviation / scale);
}

double weighted_deviation_bound(double deviation,
                                std::span<const Rat> weights) {
  const double concentration = to_double(weight_concentration(weights));
  return 2.0 * hoeffding_tail(deviation, concentration);
}

double coin_efficiency_bound(const Rat& relative_quota, long long n_voters) {
  check_voters(n_voters);
  if (relative_quota <= make_rat(1, 2)) {
    throw Error(ErrorCategory::Domain,
                "the pass-probability bound needs a supermajority quota");
  }
  const double margin = to_double(relative_quota - make_rat(1, 2));
  return std::exp(-2.0 * margin * margin * static_cast<double>(n_voters));
}

double coin_success_plus_bound(const Rat& relative_quota, long long n_voters) {
  check_voters(n_voters);
  if (relative_quota <= make_rat(1, 2)) {
    throw Error(ErrorCategory::Domain,
                "the success bound needs a supermajority quota");
  }
  const double margin = to_double(relative_quota - make_rat(1, 2));
  return 0.5 * std::exp(-2.0 * margin * margin *
                        static_cast<double>(n_voters - 1));
}

LimitPredictions limit_predictions(const Rat& relative_quota,
                                   const BeliefMeasure* measure) {
  check_relative_quota(relative_quota);
  const Rat half = make_rat(1, 2);
  LimitPredictions out;
  if (relative_quota < half) {
    out.coin_efficiency = Rat(1);
    out.coin_success_plus = half;
    out.coin_success_minus = Rat(0);
  } else if (relative_quota == half) {
    out.coin_efficiency = half;
    out.coin_success_plus = make_rat(1, 4);
    out.coin_success_minus = make_rat(1, 4);
  } else {
    out.coin_efficiency = Rat(0);
    out.coin_success_plus = Rat(0);
    out.coin_success_minus = half;
  }

  out.uniform_efficiency = Rat(1) - relative_quota;
  out.uniform_success_plus = half - relative_quota * relative_quota / 2;
  const Rat rest = Rat(1) - relative_quota;
  out.uniform_success_minus = half - rest * rest / 2;

  if (measure != nullptr) {
    TailIntegrals tails = tail_integrals(*measure, relative_quota);
    out.measure_efficiency = tails.mass_above;
    out.measure_success_plus = tails.acceptance_mean_above;
    out.measure_success_minus = tails.rejection_mean_below;
    out.measure_mass_at_cut = tails.mass_at_cut;
  }
  return out;
}

namespace {

enum class MeasureKind { Coin, Uniform, General };

MeasureKind classify(const BeliefMeasure& measure) {
  if (measure.is_point_mass_at(make_rat(1, 2))) return MeasureKind::Coin;
  if (measure.is_uniform_on_unit_interval()) return MeasureKind::Uniform;
  return MeasureKind::General;
}

Rat limit_for(Quantity quantity, MeasureKind kind,
              const LimitPredictions& lp) {
  switch (quantity) {
    case Quantity::DPlus:
    case Quantity::DMinus:
    case Quantity::D:
      return Rat(0);
    case Quantity::E:
      if (kind == MeasureKind::Coin) return lp.coin_efficiency;
      if (kind == MeasureKind::Uniform) return lp.uniform_efficiency;
      return *lp.measure_efficiency;
    case Quantity::SPlus:
      if (kind == MeasureKind::Coin) return lp.coin_success_plus;
      if (kind == MeasureKind::Uniform) return lp.uniform_success_plus;
      return *lp.measure_success_plus;
    case Quantity::SMinus:
      if (kind == MeasureKind::Coin) return lp.coin_success_minus;
      if (kind == MeasureKind::Uniform) return lp.uniform_success_minus;
      return *lp.measure_success_minus;
    case Quantity::S:
      return limit_for(Quantity::SPlus, kind, lp) +
             limit_for(Quantity::SMinus, kind, lp);
  }
  throw Error(ErrorCategory::Internal, "unhandled quantity");
}

double coin_row_value(Quantity quantity, long long n, long long threshold) {
  switch (quantity) {
    case Quantity::D:
    case Quantity::DPlus:
    case Quantity::DMinus: {
      double d;
      if (n <= kExactBinomialCap) {
        d = to_double(unit_rule_coin_decisive(n, threshold));
      } else {
        d = 2.0 * std::exp(log_binomial(n - 1, threshold - 1) -
                           static_cast<double>(n) * kLn2);
      }
      return quantity == Quantity::D ? d : d / 2;
    }
    case Quantity::E:
      return coin_tail_probability(n, threshold, n);
    case Quantity::SPlus:
      return 0.5 * coin_tail_probability(n - 1, threshold - 1, n - 1);
    case Quantity::SMinus:
      return 0.5 * coin_tail_probability(n - 1, 0, threshold - 1);
    case Quantity::S:
      return coin_row_value(Quantity::SPlus, n, threshold) +
             coin_row_value(Quantity::SMinus, n, threshold);
  }
  throw Error(ErrorCategory::Internal, "unhandled quantity");
}

}  // namespace

ConvergenceTable convergence_table(const ConvergenceRequest& request,
                                   const EngineOptions& options) {
  if (request.voter_counts.empty()) {
    throw Error(ErrorCategory::Validation, "no population sizes requested");
  }
  const Rat half = make_rat(1, 2);
  const Rat r = request.simple_majority ? half : request.relative_quota;
  check_relative_quota(r);

  const MeasureKind kind = classify(request.measure);
  const LimitPredictions lp = limit_predictions(r, &request.measure);
  const Rat limit_exact = limit_for(request.quantity, kind, lp);
  const double limit_value = to_double(limit_exact);

  EngineOptions engine_options = options;
  engine_options.max_unit_voters =
      std::max(engine_options.max_unit_voters, request.exact_voter_cap);

  ConvergenceTable table;
  table.quantity = request.quantity;
  table.rows.reserve(request.voter_counts.size());

  for (long long n : request.voter_counts) {
    check_voters(n);
    const long long threshold = request.simple_majority
                                    ? n / 2 + 1
                                    : threshold_from_relative_quota(n, r);
    ConvergenceRow row;
    row.voters = n;

    if (n <= request.exact_voter_cap) {
      std::vector<Rat> ones(static_cast<size_t>(n), Rat(1));
      WeightedVotingSystem system(std::move(ones), Rat(make_int(threshold)));
      PowerReport report = analyze(system, request.measure, engine_options);
      row.exact = report_quantity(report, request.quantity, 1);
      row.value = to_double(*row.exact);
    } else if (kind == MeasureKind::Coin) {
      row.value = coin_row_value(request.quantity, n, threshold);
    } else if (kind == MeasureKind::Uniform) {
      UnitRuleUniformValues closed = unit_rule_uniform_from_threshold(n, threshold);
      PowerReport dummy;  // route the pick through one switch
      dummy.voters = n;
      dummy.per_voter = {VoterPower{closed.decisive_plus, closed.decisive_minus,
                                    closed.decisive, closed.success_plus,
                                    closed.success_minus, closed.success}};
      dummy.efficiency = closed.efficiency;
      row.exact = report_quantity(dummy, request.quantity, 1);
      row.value = to_double(*row.exact);
    } else {
      throw Error(ErrorCategory::Resource,
                  "population " + std::to_string(n) +
                      " exceeds the exact cap, and only the fair-coin and "
                      "uniform measures have a floating fallback");
    }

    row.limit = limit_value;
    row.gap = std::fabs(row.value - limit_value);

    if (kind == MeasureKind::Coin && r == half) {
      if (request.quantity == Quantity::D) {
        row.estimate = simple_majority_coin_decisive_estimate(n);
      } else if (request.quantity == Quantity::S) {
        row.estimate = simple_majority_coin_success_estimate(n);
      }
    }
    if (kind == MeasureKind::Coin && !request.simple_majority && r > half) {
      if (request.quantity == Quantity::E) {
        row.bound = coin_efficiency_bound(r, n);
      } else if (request.quantity == Quantity::SPlus) {
        row.bound = coin_success_plus_bound(r, n);
      }
    }
    if (row.bound && *row.bound < row.value &&
        row.value - *row.bound > 1e-12) {
      throw Error(ErrorCategory::Internal,
                  "a proven bound came out below the exact value");
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace vpow::asym
