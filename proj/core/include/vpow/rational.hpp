#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace vpow {

// All exact arithmetic in the library runs on GMP. `Rat` values are kept
// canonical (reduced, positive denominator) by construction; every routine
// here returns canonical values and every parser canonicalizes.
using Int = mpz_class;
using Rat = mpq_class;

// mpq_class's two-argument constructor does not reduce, so raw construction
// is wrapped once here and nowhere else.
Rat make_rat(long numerator, long denominator = 1);
Rat make_rat(const Int& numerator, const Int& denominator);

// gmpxx has no long long constructor; voter counts are long long throughout.
Int make_int(long long value);

// Accepts an optional sign followed by "p", "p/q" (q > 0 after sign
// normalization, q != 0 required), or a decimal like "0.25". Anything else
// throws Error{Parse}.
Rat parse_rat(std::string_view text);

// Canonical "p/q", or just "p" for integers.
std::string to_fraction_string(const Rat& value);

// Exact decimal rendering with round-half-to-even at `digits` places after
// the point (digits >= 0; 0 renders an integer).
std::string to_decimal_string(const Rat& value, int digits);

double to_double(const Rat& value);

Int binomial(unsigned long n, unsigned long k);

// Smallest integer >= value and largest integer <= value.
Int ceil_rat(const Rat& value);
Int floor_rat(const Rat& value);

Rat pow_rat(const Rat& base, unsigned long exponent);

}  // namespace vpow
