#include "vpow/rational.hpp"

#include <cctype>
#include <cstdlib>

#include "vpow/error.hpp"

namespace vpow {

Rat make_rat(long numerator, long denominator) {
  if (denominator == 0) {
    throw Error(ErrorCategory::Domain, "rational with zero denominator");
  }
  Rat value(numerator, denominator);
  value.canonicalize();
  return value;
}

Rat make_rat(const Int& numerator, const Int& denominator) {
  if (denominator == 0) {
    throw Error(ErrorCategory::Domain, "rational with zero denominator");
  }
  Rat value(numerator, denominator);
  value.canonicalize();
  return value;
}

Int make_int(long long value) {
  static_assert(sizeof(long) == sizeof(long long),
                "an LP64 platform is assumed");
  return Int(static_cast<long>(value));
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

[[noreturn]] void bad_number(std::string_view text) {
  throw Error(ErrorCategory::Parse,
              "not a number: \"" + std::string(text) + "\" (expected p, p/q, or a decimal)");
}

}  // namespace

Rat parse_rat(std::string_view text) {
  std::string_view rest = text;
  bool negative = false;
  if (!rest.empty() && (rest.front() == '+' || rest.front() == '-')) {
    negative = rest.front() == '-';
    rest.remove_prefix(1);
  }

  Rat magnitude;
  if (auto slash = rest.find('/'); slash != std::string_view::npos) {
    std::string_view num = rest.substr(0, slash);
    std::string_view den = rest.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) bad_number(text);
    Int n(std::string(num), 10);
    Int d(std::string(den), 10);
    if (d == 0) {
      throw Error(ErrorCategory::Parse,
                  "zero denominator in \"" + std::string(text) + "\"");
    }
    magnitude = make_rat(n, d);
  } else if (auto dot = rest.find('.'); dot != std::string_view::npos) {
    std::string_view whole = rest.substr(0, dot);
    std::string_view frac = rest.substr(dot + 1);
    if (whole.empty() && frac.empty()) bad_number(text);
    if (!whole.empty() && !all_digits(whole)) bad_number(text);
    if (!frac.empty() && !all_digits(frac)) bad_number(text);
    Int n = whole.empty() ? Int(0) : Int(std::string(whole), 10);
    Int scale(1);
    for (char c : frac) {
      n = n * 10 + (c - '0');
      scale *= 10;
    }
    magnitude = make_rat(n, scale);
  } else {
    if (!all_digits(rest)) bad_number(text);
    magnitude = Rat(Int(std::string(rest), 10));
  }

  return negative ? Rat(-magnitude) : magnitude;
}

std::string to_fraction_string(const Rat& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string to_decimal_string(const Rat& value, int digits) {
  if (digits < 0) {
    throw Error(ErrorCategory::Domain, "negative digit count");
  }
  bool negative = sgn(value) < 0;
  Int num = abs(value.get_num());
  const Int& den = value.get_den();

  Int scale(1);
  for (int i = 0; i < digits; ++i) scale *= 10;

  // Scaled magnitude split into quotient and remainder, then rounded
  // half-to-even on the remainder.
  Int q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), Int(num * scale).get_mpz_t(),
              den.get_mpz_t());
  Int twice = r * 2;
  if (twice > den || (twice == den && mpz_odd_p(q.get_mpz_t()))) {
    q += 1;
  }

  std::string body = q.get_str();
  std::string out;
  if (digits == 0) {
    out = body;
  } else {
    if (static_cast<int>(body.size()) <= digits) {
      body.insert(0, static_cast<size_t>(digits) + 1 - body.size(), '0');
    }
    out = body.substr(0, body.size() - digits) + "." +
          body.substr(body.size() - digits);
  }
  if (negative && q != 0) out.insert(0, 1, '-');
  return out;
}

double to_double(const Rat& value) { return value.get_d(); }

Int binomial(unsigned long n, unsigned long k) {
  Int result;
  if (k > n) return Int(0);
  mpz_bin_uiui(result.get_mpz_t(), n, k);
  return result;
}

Int ceil_rat(const Rat& value) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), value.get_num().get_mpz_t(),
             value.get_den().get_mpz_t());
  return q;
}

Int floor_rat(const Rat& value) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), value.get_num().get_mpz_t(),
             value.get_den().get_mpz_t());
  return q;
}

Rat pow_rat(const Rat& base, unsigned long exponent) {
  Rat result;
  mpz_pow_ui(mpq_numref(result.get_mpq_t()), mpq_numref(base.get_mpq_t()),
             exponent);
  mpz_pow_ui(mpq_denref(result.get_mpq_t()), mpq_denref(base.get_mpq_t()),
             exponent);
  // base was canonical, so num^e / den^e already is.
  return result;
}

}  // namespace vpow
