#include "vpow/rational.hpp"

#include "doctest.h"
#include "test_util.hpp"
#include "vpow/error.hpp"

using test_util::thrown_category;
using namespace vpow;

TEST_CASE("construction canonicalizes") {
  CHECK(make_rat(2, 4) == make_rat(1, 2));
  CHECK(make_rat(-2, 4) == make_rat(-1, 2));
  CHECK(make_rat(1, -2) == make_rat(-1, 2));
  CHECK(make_rat(0, 7) == 0);
  CHECK(make_rat(Int(10), Int(-15)) == make_rat(-2, 3));
  CHECK(thrown_category([] { make_rat(1, 0); }) == ErrorCategory::Domain);
  CHECK(thrown_category([] { make_rat(Int(1), Int(0)); }) ==
        ErrorCategory::Domain);
}

TEST_CASE("make_int holds 64-bit voter counts") {
  CHECK(make_int(0) == 0);
  CHECK(make_int(123456789012345ll) == Int("123456789012345"));
  CHECK(make_int(-7) == -7);
}

TEST_CASE("parsing accepts integers, fractions and decimals") {
  CHECK(parse_rat("3/10") == make_rat(3, 10));
  CHECK(parse_rat("-1/2") == make_rat(-1, 2));
  CHECK(parse_rat("+7") == 7);
  CHECK(parse_rat("0.25") == make_rat(1, 4));
  CHECK(parse_rat("-0.125") == make_rat(-1, 8));
  CHECK(parse_rat("2.") == 2);
  CHECK(parse_rat(".5") == make_rat(1, 2));
  CHECK(parse_rat("10/4") == make_rat(5, 2));
}

TEST_CASE("parsing rejects junk with a parse error") {
  for (const char* bad : {"", "x", "1/", "/2", "1/ 2", "1.2.3", "--1", "1/x",
                          "0x10", "1e3", " 1"}) {
    CAPTURE(bad);
    CHECK(thrown_category([&] { parse_rat(bad); }) == ErrorCategory::Parse);
  }
  CHECK(thrown_category([] { parse_rat("1/0"); }) == ErrorCategory::Parse);
}

TEST_CASE("fraction rendering") {
  CHECK(to_fraction_string(make_rat(3, 10)) == "3/10");
  CHECK(to_fraction_string(make_rat(-3, 10)) == "-3/10");
  CHECK(to_fraction_string(make_rat(4, 2)) == "2");
  CHECK(to_fraction_string(Rat(0)) == "0");
}

TEST_CASE("decimal rendering rounds half to even") {
  CHECK(to_decimal_string(make_rat(3, 8), 3) == "0.375");
  CHECK(to_decimal_string(make_rat(1, 8), 2) == "0.12");   // 0.125 -> even
  CHECK(to_decimal_string(make_rat(3, 8), 2) == "0.38");   // 0.375 -> even
  CHECK(to_decimal_string(make_rat(-1, 8), 2) == "-0.12");
  CHECK(to_decimal_string(make_rat(1, 3), 5) == "0.33333");
  CHECK(to_decimal_string(make_rat(2, 3), 5) == "0.66667");
  CHECK(to_decimal_string(Rat(7), 2) == "7.00");
  CHECK(to_decimal_string(Rat(7), 0) == "7");
  // A tiny negative that rounds to zero keeps no stray sign.
  CHECK(to_decimal_string(make_rat(-1, 1000), 2) == "0.00");
}

TEST_CASE("binomial coefficients") {
  CHECK(binomial(0, 0) == 1);
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(5, 7) == 0);
  CHECK(binomial(52, 26) == Int("495918532948104"));
}

TEST_CASE("ceiling and floor") {
  CHECK(ceil_rat(make_rat(7, 2)) == 4);
  CHECK(floor_rat(make_rat(7, 2)) == 3);
  CHECK(ceil_rat(make_rat(-7, 2)) == -3);
  CHECK(floor_rat(make_rat(-7, 2)) == -4);
  CHECK(ceil_rat(Rat(5)) == 5);
  CHECK(floor_rat(Rat(5)) == 5);
}

TEST_CASE("exact powers") {
  CHECK(pow_rat(make_rat(2, 3), 3) == make_rat(8, 27));
  CHECK(pow_rat(make_rat(2, 3), 0) == 1);
  CHECK(pow_rat(Rat(0), 5) == 0);
  CHECK(pow_rat(make_rat(-1, 2), 2) == make_rat(1, 4));
}

TEST_CASE("double conversion") {
  CHECK(to_double(make_rat(1, 2)) == 0.5);
  CHECK(to_double(make_rat(1, 3)) == doctest::Approx(1.0 / 3).epsilon(1e-15));
}
