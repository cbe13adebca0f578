#include "vpow/measures.hpp"

#include <algorithm>

#include "vpow/error.hpp"

namespace vpow {

namespace {

constexpr long long kMaxKernelVoters = 1'000'000;

void check_unit_interval(const Rat& x, const char* what) {
  if (sgn(x) < 0 || x > 1) {
    throw Error(ErrorCategory::Validation,
                std::string(what) + " outside [0,1]: " + to_fraction_string(x));
  }
}

// Power table base^0 .. base^count.
std::vector<Rat> powers(const Rat& base, long long count) {
  std::vector<Rat> table;
  table.reserve(static_cast<size_t>(count) + 1);
  table.emplace_back(1);
  for (long long i = 1; i <= count; ++i) table.push_back(table.back() * base);
  return table;
}

}  // namespace

BeliefMeasure::BeliefMeasure(std::vector<Atom> atoms,
                             std::vector<Segment> segments) {
  Rat total(0);
  for (const Atom& atom : atoms) {
    check_unit_interval(atom.location, "atom location");
    if (sgn(atom.mass) < 0) {
      throw Error(ErrorCategory::Validation, "negative atom mass");
    }
    total += atom.mass;
  }
  for (const Segment& seg : segments) {
    check_unit_interval(seg.lower, "segment bound");
    check_unit_interval(seg.upper, "segment bound");
    if (seg.lower >= seg.upper) {
      throw Error(ErrorCategory::Validation,
                  "segment needs lower < upper, got [" +
                      to_fraction_string(seg.lower) + ", " +
                      to_fraction_string(seg.upper) + "]");
    }
    if (sgn(seg.mass) < 0) {
      throw Error(ErrorCategory::Validation, "negative segment mass");
    }
    total += seg.mass;
  }
  if (total != 1) {
    throw Error(ErrorCategory::Validation,
                "measure mass must be exactly 1, got " +
                    to_fraction_string(total));
  }

  std::erase_if(atoms, [](const Atom& a) { return sgn(a.mass) == 0; });
  std::erase_if(segments, [](const Segment& s) { return sgn(s.mass) == 0; });

  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& a, const Atom& b) { return a.location < b.location; });
  for (const Atom& atom : atoms) {
    if (!atoms_.empty() && atoms_.back().location == atom.location) {
      atoms_.back().mass += atom.mass;
    } else {
      atoms_.push_back(atom);
    }
  }

  std::sort(segments.begin(), segments.end(), [](const Segment& a, const Segment& b) {
    return a.lower != b.lower ? a.lower < b.lower : a.upper < b.upper;
  });
  segments_ = std::move(segments);
}

BeliefMeasure BeliefMeasure::penrose_banzhaf() {
  return BeliefMeasure({Atom{make_rat(1, 2), Rat(1)}}, {});
}

BeliefMeasure BeliefMeasure::shapley_shubik() {
  return BeliefMeasure({}, {Segment{Rat(0), Rat(1), Rat(1)}});
}

BeliefMeasure BeliefMeasure::unanimity() {
  return BeliefMeasure({Atom{Rat(0), make_rat(1, 2)}, Atom{Rat(1), make_rat(1, 2)}},
                       {});
}

Rat BeliefMeasure::mass_at(const Rat& p) const {
  Rat out(0);
  for (const Atom& atom : atoms_) {
    if (atom.location == p) out += atom.mass;
  }
  return out;
}

bool BeliefMeasure::is_point_mass_at(const Rat& p) const {
  return segments_.empty() && atoms_.size() == 1 && atoms_[0].location == p;
}

bool BeliefMeasure::is_uniform_on_unit_interval() const {
  return atoms_.empty() && segments_.size() == 1 && segments_[0].lower == 0 &&
         segments_[0].upper == 1;
}

namespace {

Rat density_at(const std::vector<Segment>& segments, const Rat& x) {
  Rat out(0);
  for (const Segment& seg : segments) {
    if (seg.lower <= x && x <= seg.upper) {
      out += seg.mass / (seg.upper - seg.lower);
    }
  }
  return out;
}

}  // namespace

bool is_reflection_symmetric(const BeliefMeasure& measure) {
  for (const Atom& atom : measure.atoms()) {
    if (measure.mass_at(Rat(1) - atom.location) != atom.mass) return false;
  }

  const auto& segments = measure.segments();
  std::vector<Rat> cuts;
  for (const Segment& seg : segments) {
    cuts.push_back(seg.lower);
    cuts.push_back(seg.upper);
    cuts.push_back(Rat(1) - seg.lower);
    cuts.push_back(Rat(1) - seg.upper);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    Rat mid = (cuts[i] + cuts[i + 1]) / 2;
    if (density_at(segments, mid) != density_at(segments, Rat(1) - mid)) {
      return false;
    }
  }
  return true;
}

const Rat& SizeKernel::at(long long coalition_size) const {
  if (coalition_size < 0 || coalition_size > voters) {
    throw Error(ErrorCategory::Domain,
                "coalition size " + std::to_string(coalition_size) +
                    " outside 0.." + std::to_string(voters));
  }
  return values[static_cast<size_t>(coalition_size)];
}

SizeKernel size_kernel(const BeliefMeasure& measure, long long n_voters) {
  if (n_voters < 1) {
    throw Error(ErrorCategory::Domain, "voter count must be at least 1");
  }
  if (n_voters > kMaxKernelVoters) {
    throw Error(ErrorCategory::Resource,
                "size kernel capped at " + std::to_string(kMaxKernelVoters) +
                    " voters");
  }
  const size_t n = static_cast<size_t>(n_voters);
  SizeKernel kernel;
  kernel.voters = n_voters;
  kernel.values.assign(n + 1, Rat(0));

  for (const Atom& atom : measure.atoms()) {
    std::vector<Rat> p_pow = powers(atom.location, n_voters);
    std::vector<Rat> q_pow = powers(Rat(1) - atom.location, n_voters);
    for (size_t k = 0; k <= n; ++k) {
      kernel.values[k] += atom.mass * p_pow[k] * q_pow[n - k];
    }
  }

  for (const Segment& seg : measure.segments()) {
    // J_k = integral of x^k (1-x)^(n-k) over [lower, upper], by the
    // first-order recurrence obtained from d/dx [x^(k+1) (1-x)^(n-k)]:
    //   (k+1) J_k - (n-k) J_{k+1} = boundary term,
    // which walks k upward in linear time. Exact throughout.
    const Rat& a = seg.lower;
    const Rat& b = seg.upper;
    std::vector<Rat> a_pow = powers(a, n_voters + 1);
    std::vector<Rat> b_pow = powers(b, n_voters + 1);
    std::vector<Rat> ca_pow = powers(Rat(1) - a, n_voters + 1);
    std::vector<Rat> cb_pow = powers(Rat(1) - b, n_voters + 1);

    Rat density = seg.mass / (b - a);
    Rat j = (ca_pow[n + 1] - cb_pow[n + 1]) / Rat(static_cast<long>(n_voters) + 1);
    kernel.values[0] += density * j;
    for (size_t k = 0; k < n; ++k) {
      Rat boundary = b_pow[k + 1] * cb_pow[n - k] - a_pow[k + 1] * ca_pow[n - k];
      j = (Rat(static_cast<long>(k) + 1) * j - boundary) /
          Rat(static_cast<long>(n_voters - static_cast<long long>(k)));
      kernel.values[k + 1] += density * j;
    }
  }

  return kernel;
}

TailIntegrals tail_integrals(const BeliefMeasure& measure, const Rat& cut) {
  check_unit_interval(cut, "cut point");
  TailIntegrals out{Rat(0), Rat(0), Rat(0), measure.mass_at(cut)};

  for (const Atom& atom : measure.atoms()) {
    if (atom.location >= cut) {
      out.mass_above += atom.mass;
      out.acceptance_mean_above += atom.mass * atom.location;
    }
    if (atom.location <= cut) {
      out.rejection_mean_below += atom.mass * (Rat(1) - atom.location);
    }
  }

  for (const Segment& seg : measure.segments()) {
    Rat density = seg.mass / (seg.upper - seg.lower);
    if (seg.upper > cut) {
      Rat lo = std::max(seg.lower, cut);
      out.mass_above += density * (seg.upper - lo);
      out.acceptance_mean_above +=
          density * (seg.upper * seg.upper - lo * lo) / 2;
    }
    if (seg.lower < cut) {
      Rat hi = std::min(seg.upper, cut);
      // integral of (1-x) dx from lower to hi
      out.rejection_mean_below +=
          density * ((hi - hi * hi / 2) - (seg.lower - seg.lower * seg.lower / 2));
    }
  }

  return out;
}

namespace detail {

Rat segment_kernel_reference(const Segment& segment, long long n_voters,
                             long long coalition_size) {
  if (n_voters < 1 || coalition_size < 0 || coalition_size > n_voters) {
    throw Error(ErrorCategory::Domain, "bad kernel reference arguments");
  }
  const Rat& a = segment.lower;
  const Rat& b = segment.upper;
  const unsigned long k = static_cast<unsigned long>(coalition_size);
  const unsigned long n = static_cast<unsigned long>(n_voters);

  Rat sum(0);
  for (unsigned long j = 0; j + k <= n; ++j) {
    Rat term = Rat(binomial(n - k, j)) *
               (pow_rat(b, k + j + 1) - pow_rat(a, k + j + 1)) /
               Rat(static_cast<long>(k + j + 1));
    if (j % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
  }
  return segment.mass / (b - a) * sum;
}

}  // namespace detail

}  // namespace vpow
