// End-to-end acceptance gate. Each numbered requirement runs against the
// library exactly as stated, prints one [PASS]/[FAIL] line, and the binary
// exits nonzero if anything failed.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "vpow/asymptotics.hpp"
#include "vpow/engine.hpp"
#include "vpow/error.hpp"
#include "vpow/measures.hpp"
#include "vpow/montecarlo.hpp"
#include "vpow/rational.hpp"
#include "vpow/systems.hpp"

using namespace vpow;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Splitmix {
  std::uint64_t state;
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }
};

// Random weighted system: integer weights 0..9 (at least one positive) and
// a uniformly drawn achievable quota.
WeightedVotingSystem random_system(Splitmix& rng, int max_voters) {
  while (true) {
    int n = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_voters)));
    std::vector<Rat> weights;
    long long total = 0;
    for (int i = 0; i < n; ++i) {
      long long w = static_cast<long long>(rng.below(10));
      weights.push_back(Rat(static_cast<long>(w)));
      total += w;
    }
    if (total == 0) continue;
    long long quota = 1 + static_cast<long long>(
                              rng.below(static_cast<std::uint64_t>(total)));
    return WeightedVotingSystem(std::move(weights),
                                Rat(static_cast<long>(quota)));
  }
}

BeliefMeasure two_atom_mixture() {
  // 1/2 uniform[0,1] + 1/4 at 3/10 + 1/4 at 7/10; reflection-symmetric.
  return BeliefMeasure({{make_rat(3, 10), make_rat(1, 4)},
                        {make_rat(7, 10), make_rat(1, 4)}},
                       {{Rat(0), Rat(1), make_rat(1, 2)}});
}

WeightedVotingSystem unit_system(long long n, long long threshold) {
  std::vector<Rat> weights(static_cast<size_t>(n), Rat(1));
  return WeightedVotingSystem(std::move(weights),
                              Rat(static_cast<long>(threshold)));
}

bool same_power(const VoterPower& a, const VoterPower& b) {
  return a.decisive_plus == b.decisive_plus &&
         a.decisive_minus == b.decisive_minus && a.decisive == b.decisive &&
         a.success_plus == b.success_plus &&
         a.success_minus == b.success_minus && a.success == b.success;
}

int failures = 0;

void report(int id, const std::string& name, bool passed,
            const std::string& detail) {
  std::printf("[%s] %2d %s%s%s\n", passed ? "PASS" : "FAIL", id, name.c_str(),
              detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
  if (!passed) ++failures;
}

void criterion(int id, const std::string& name,
               const std::function<bool(std::string&)>& body) {
  std::string detail;
  bool passed = false;
  try {
    passed = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("threw: ") + e.what();
  }
  report(id, name, passed, detail);
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

int main() {
  const BeliefMeasure coin = BeliefMeasure::penrose_banzhaf();
  const BeliefMeasure uniform = BeliefMeasure::shapley_shubik();
  const BeliefMeasure agree = BeliefMeasure::unanimity();
  const BeliefMeasure mixture = two_atom_mixture();

  // Shared corpus for requirements 2-4: one hundred random systems with at
  // most twelve voters each.
  Splitmix corpus_rng{0x5eed5eedULL};
  std::vector<WeightedVotingSystem> corpus;
  corpus.reserve(100);
  for (int i = 0; i < 100; ++i) corpus.push_back(random_system(corpus_rng, 12));

  criterion(1,
            "uniform-rate success matches the odd/even closed forms, "
            "N = 3..51, under 5 s",
            [&](std::string& detail) {
              auto start = Clock::now();
              bool ok = true;
              for (long long n = 3; n <= 51 && ok; ++n) {
                PowerReport r = analyze(simple_majority(n), uniform);
                Rat splus, sminus, stotal;
                if (n % 2 == 1) {
                  splus = make_rat(3, 8) + make_rat(1, 8 * n);
                  sminus = splus;
                  stotal = make_rat(3, 4) + make_rat(1, 4 * n);
                } else {
                  splus = make_rat(3, 8) - make_rat(1, 8 * (n + 1));
                  sminus = make_rat(3, 8) + make_rat(3, 8 * (n + 1));
                  stotal = make_rat(3, 4) + make_rat(1, 4 * (n + 1));
                }
                for (const VoterPower& p : r.per_voter) {
                  ok = ok && p.success_plus == splus &&
                       p.success_minus == sminus && p.success == stotal;
                }
              }
              double elapsed = seconds_since(start);
              detail = "exact for 49 population sizes in " + fmt(elapsed) + " s";
              return ok && elapsed < 5.0;
            });

  criterion(2,
            "uniform-rate decisiveness is 1/N for majorities N <= 51 and "
            "sums to 1 on the random corpus",
            [&](std::string& detail) {
              bool ok = true;
              for (long long n = 1; n <= 51 && ok; ++n) {
                PowerReport r = analyze(simple_majority(n), uniform);
                for (const VoterPower& p : r.per_voter) {
                  ok = ok && p.decisive == make_rat(1, n);
                }
              }
              if (!ok) {
                detail = "1/N failed on a simple majority";
                return false;
              }
              for (size_t i = 0; i < corpus.size(); ++i) {
                PowerReport r = analyze(corpus[i], uniform);
                Rat sum(0);
                for (const VoterPower& p : r.per_voter) sum += p.decisive;
                if (sum != 1) {
                  detail = "sum " + to_fraction_string(sum) + " on corpus system " +
                           std::to_string(i);
                  return false;
                }
              }
              detail = "51 majorities and 100 random systems, all exact";
              return true;
            });

  criterion(3,
            "success equals 1/2 + D/2 under the fair coin, and strictly "
            "exceeds it for maj-3 under the uniform rate",
            [&](std::string& detail) {
              for (size_t i = 0; i < corpus.size(); ++i) {
                PowerReport r = analyze(corpus[i], coin);
                for (const VoterPower& p : r.per_voter) {
                  if (p.success != make_rat(1, 2) + p.decisive / 2) {
                    detail = "identity failed on corpus system " +
                             std::to_string(i);
                    return false;
                  }
                }
              }
              PowerReport r = analyze(simple_majority(3), uniform);
              const VoterPower& p = r.per_voter[0];
              Rat rhs = make_rat(1, 2) + p.decisive / 2;
              if (!(p.success > rhs)) {
                detail = "expected strict failure under the uniform rate";
                return false;
              }
              detail = "identity exact on 100 systems; maj-3 uniform gives S = " +
                       to_fraction_string(p.success) + " > " +
                       to_fraction_string(rhs);
              return true;
            });

  criterion(4,
            "independently counted positive and negative swings agree in "
            "number for every voter of the corpus",
            [&](std::string& detail) {
              for (size_t i = 0; i < corpus.size(); ++i) {
                CoalitionCounts counts = enumerate_coalition_counts(corpus[i]);
                const size_t n = static_cast<size_t>(counts.voters);
                for (size_t v = 0; v < n; ++v) {
                  Int plus(0), minus(0);
                  for (size_t k = 0; k <= n; ++k) {
                    plus += counts.swing_plus[v][k];
                    minus += counts.swing_minus[v][k];
                  }
                  if (plus != minus) {
                    detail = "voter " + std::to_string(v + 1) +
                             " of corpus system " + std::to_string(i);
                    return false;
                  }
                }
              }
              detail = "both swing families counted from their definitions";
              return true;
            });

  criterion(5,
            "engine matches full enumeration on 200 random systems (N <= 16) "
            "under four measures, under 60 s",
            [&](std::string& detail) {
              auto start = Clock::now();
              Splitmix rng{0xfacadeULL};
              EngineOptions options;
              for (int i = 0; i < 200; ++i) {
                WeightedVotingSystem s = random_system(rng, 16);
                for (const BeliefMeasure* m :
                     {&coin, &uniform, &agree, &mixture}) {
                  PowerReport fast = analyze(s, *m, options);
                  PowerReport slow = brute_force_analyze(s, *m, options);
                  bool ok = fast.efficiency == slow.efficiency;
                  for (long long v = 0; v < fast.voters; ++v) {
                    ok = ok && same_power(fast.per_voter[static_cast<size_t>(v)],
                                          slow.per_voter[static_cast<size_t>(v)]);
                  }
                  if (!ok) {
                    detail = "mismatch on system " + std::to_string(i);
                    return false;
                  }
                }
              }
              double elapsed = seconds_since(start);
              detail = "800 exact comparisons in " + fmt(elapsed) + " s";
              return elapsed < 60.0;
            });

  criterion(6,
            "uniform-rate efficiency at a 60% quota stays within 2/N of 0.4 "
            "for N = 1e3 and 1e4",
            [&](std::string& detail) {
              bool ok = true;
              for (long long n : {1000ll, 10000ll}) {
                Rat quota(static_cast<long>((6 * n + 9) / 10));  // ceil(0.6 N)
                Rat closed = asym::unit_rule_uniform_efficiency(n, quota);
                Rat gap = closed - make_rat(2, 5);
                if (sgn(gap) < 0) gap = -gap;
                ok = ok && gap <= make_rat(2, n);
              }
              // Engine cross-check at N = 1000.
              PowerReport r = analyze(unit_system(1000, 600), uniform);
              ok = ok &&
                   r.efficiency == asym::unit_rule_uniform_efficiency(
                                       1000, Rat(600));
              detail = "closed form within tolerance; engine agrees exactly "
                       "at N = 1000 (E = " +
                       to_fraction_string(r.efficiency) + ")";
              return ok;
            });

  criterion(7,
            "fair-coin efficiency and positive success stay under their "
            "exponential supermajority bounds",
            [&](std::string& detail) {
              int checked = 0;
              for (const Rat& r :
                   {make_rat(11, 20), make_rat(3, 5), make_rat(7, 10)}) {
                for (long long n : {50ll, 100ll, 200ll}) {
                  long long k =
                      ceil_rat(r * Rat(static_cast<long>(n))).get_si();
                  double e_exact =
                      to_double(asym::unit_rule_coin_efficiency(n, k));
                  double s_exact =
                      to_double(asym::unit_rule_coin_success_plus(n, k));
                  if (e_exact > asym::coin_efficiency_bound(r, n) ||
                      s_exact > asym::coin_success_plus_bound(r, n)) {
                    detail = "bound violated at r = " + to_fraction_string(r) +
                             ", N = " + std::to_string(n);
                    return false;
                  }
                  ++checked;
                }
              }
              detail = std::to_string(checked) +
                       " quota/population pairs, both bounds hold";
              return true;
            });

  criterion(8,
            "fair-coin decisiveness at N = 100001 matches the 2/sqrt(2 pi N) "
            "decay within 1%, under 1 s",
            [&](std::string& detail) {
              auto start = Clock::now();
              const long long n = 100001;
              const long long k = (n + 1) / 2;
              // Log-gamma evaluation of C(N-1, K-1) / 2^(N-1).
              double log_d = asym::log_binomial(n - 1, k - 1) -
                             static_cast<double>(n - 1) * std::log(2.0);
              double d_gamma = std::exp(log_d);
              double scale = std::sqrt(2 * 3.14159265358979323846 *
                                       static_cast<double>(n)) /
                             2.0;
              double ratio = d_gamma * scale;
              // The exact binomial value must agree with the log-gamma path.
              double d_exact = to_double(asym::unit_rule_coin_decisive(n, k));
              double rel = std::fabs(d_gamma - d_exact) / d_exact;
              double elapsed = seconds_since(start);
              detail = "ratio " + fmt(ratio) + ", log-gamma vs exact rel. err " +
                       fmt(rel) + ", " + fmt(elapsed) + " s";
              return ratio >= 0.99 && ratio <= 1.01 && rel < 1e-9 &&
                     elapsed < 1.0;
            });

  criterion(9,
            "mixture-measure efficiency approaches 1/2 at a half quota: unit "
            "N = 2001 within 0.02, random weights 1..5 at N = 1000 within 0.03",
            [&](std::string& detail) {
              PowerReport unit = analyze(unit_system(2001, 1001), mixture);
              double unit_gap = std::fabs(to_double(unit.efficiency) - 0.5);
              if (unit_gap > 0.02) {
                detail = "unit gap " + fmt(unit_gap);
                return false;
              }

              Splitmix rng{0xbeefULL};
              std::vector<Rat> weights;
              weights.reserve(1000);
              for (int i = 0; i < 1000; ++i) {
                weights.push_back(Rat(static_cast<long>(1 + rng.below(5))));
              }
              Rat lt = weight_concentration(weights);
              WeightedVotingSystem heavy = WeightedVotingSystem::from_relative_quota(
                  std::move(weights), make_rat(1, 2));
              Rat e = efficiency(heavy, mixture);
              double heavy_gap = std::fabs(to_double(e) - 0.5);
              detail = "unit gap " + fmt(unit_gap) + "; weighted gap " +
                       fmt(heavy_gap) + " at concentration " +
                       fmt(to_double(lt));
              return heavy_gap <= 0.03;
            });

  criterion(10,
            "mixture-measure success at N = 2001 stays within 0.02 of the "
            "tail integrals, and sampling agrees within 4 standard errors",
            [&](std::string& detail) {
              WeightedVotingSystem system = unit_system(2001, 1001);
              PowerReport r = analyze(system, mixture);
              const Rat target = make_rat(29, 80);
              double splus = to_double(r.per_voter[0].success_plus);
              double sminus = to_double(r.per_voter[0].success_minus);
              double gap_plus = std::fabs(splus - to_double(target));
              double gap_minus = std::fabs(sminus - to_double(target));
              if (gap_plus > 0.02 || gap_minus > 0.02) {
                detail = "gaps " + fmt(gap_plus) + " and " + fmt(gap_minus);
                return false;
              }

              mc::EstimateRequest req;
              req.quantities = {Quantity::SPlus, Quantity::SMinus};
              req.voters = {1};
              req.samples = 100000;
              req.seed = 1;
              std::vector<mc::Estimate> estimates =
                  mc::estimate(system, mixture, req);
              for (const mc::Estimate& e : estimates) {
                double truth =
                    e.quantity == Quantity::SPlus ? splus : sminus;
                if (std::fabs(e.value - truth) > 4 * e.std_error) {
                  detail = "sampler " + fmt(e.value) + " vs exact " +
                           fmt(truth) + " (se " + fmt(e.std_error) + ")";
                  return false;
                }
              }
              detail = "exact gaps " + fmt(gap_plus) + " / " + fmt(gap_minus) +
                       "; sampler within 4 se of both";
              return true;
            });

  criterion(11,
            "size kernels normalize, reflect and telescope exactly for all "
            "corpus measures up to N = 20",
            [&](std::string& detail) {
              for (const BeliefMeasure* m : {&coin, &uniform, &agree, &mixture}) {
                for (long long n = 1; n <= 20; ++n) {
                  SizeKernel kernel = size_kernel(*m, n);
                  Rat total(0);
                  for (long long k = 0; k <= n; ++k) {
                    total += Rat(binomial(static_cast<unsigned long>(n),
                                          static_cast<unsigned long>(k))) *
                             kernel.at(k);
                    if (kernel.at(k) != kernel.at(n - k)) {
                      detail = "symmetry failed at N = " + std::to_string(n);
                      return false;
                    }
                  }
                  if (total != 1) {
                    detail = "normalization failed at N = " + std::to_string(n);
                    return false;
                  }
                }
                for (long long n = 1; n <= 19; ++n) {
                  SizeKernel kernel = size_kernel(*m, n);
                  SizeKernel next = size_kernel(*m, n + 1);
                  for (long long k = 0; k <= n; ++k) {
                    if (kernel.at(k) != next.at(k) + next.at(k + 1)) {
                      detail = "consistency failed at N = " + std::to_string(n);
                      return false;
                    }
                  }
                }
              }
              detail = "four measures, exact through N = 20";
              return true;
            });

  std::printf("%d/11 criteria passed\n", 11 - failures);
  return failures == 0 ? 0 : 1;
}
