#include <stdexcept>

#include "cyclicp/arith.hpp"
#include "doctest.h"

using namespace cyclicp;

namespace {

i64 naive_geom(i64 s, i64 n, i64 m) {
  i64 acc = 0, pw = 1 % m;
  for (i64 i = 0; i < n; ++i) {
    acc = (acc + pw) % m;
    pw = pw * mod(s, m) % m;
  }
  return acc;
}

i64 naive_double(i64 s, i64 t, i64 n, i64 m) {
  i64 acc = 0;
  for (i64 j = 0; j < n; ++j) {
    for (i64 i = 0; i < j; ++i) acc = (acc + powmod(s, i, m) * powmod(t, j, m)) % m;
  }
  return acc;
}

}  // namespace

TEST_CASE("vp") {
  CHECK(vp(0, 3).is_infinite());
  CHECK(vp(18, 3).value() == 2);
  CHECK(vp(-9, 3).value() == 2);
  CHECK(vp(7, 3).value() == 0);
  CHECK_THROWS_AS(vp(9, 4), std::invalid_argument);
  CHECK(Valuation::infinite() > Valuation::finite(1000));
  CHECK(Valuation::finite(2) < Valuation::finite(3));
  CHECK_THROWS(Valuation::infinite().value());
}

TEST_CASE("residue arithmetic") {
  Residue a(7, 9), b(5, 9);
  CHECK((a + b).value() == 3);
  CHECK((a - b).value() == 2);
  CHECK((a * b).value() == 8);
  CHECK((-a).value() == 2);
  CHECK(Residue(-1, 9).value() == 8);
  CHECK(a.pow(-1).value() * 7 % 9 == 1);
  CHECK_THROWS_AS(a + Residue(1, 27), std::invalid_argument);
}

TEST_CASE("mult_order") {
  CHECK(mult_order(4, 9) == 3);
  CHECK(mult_order(1, 27) == 1);
  CHECK(mult_order(10, 27) == 3);
  CHECK(mult_order(2, 9) == 6);
  CHECK(mult_order(5, 1) == 1);
  CHECK_THROWS_AS(mult_order(3, 9), std::invalid_argument);
  // s = 1 mod p: order is p^max(0, n - vp(s - 1)).
  for (i64 s = 1; s < 243; s += 3) {
    const int v = vp_capped(s - 1, 3, 5);
    CHECK(mult_order(s, 243) == ipow(3, std::max(0, 5 - v)));
  }
}

TEST_CASE("geom_sum") {
  CHECK(geom_sum(4, 0, 9).value() == 0);
  CHECK(geom_sum(4, 3, 81).value() == 21);
  CHECK(vp_capped(geom_sum(4, 3, 81).value(), 3, 4) == 1);
  for (i64 s : {1, 4, 7, 10, -2, 25}) {
    for (i64 n = 0; n < 300; ++n) REQUIRE(geom_sum(s, n, 625).value() == naive_geom(s, n, 625));
  }
  // n up to p^(2m) stays cheap.
  CHECK(geom_sum(10, ipow(3, 16), ipow(3, 8)).value() == 0);
}

TEST_CASE("double_sum") {
  CHECK(double_sum(3, 5, 1, 100).value() == 0);
  CHECK(double_sum(1, 1, 4, 100).value() == 6);
  CHECK(double_sum(10, 4, 3, 9).value() == 0);
  CHECK(double_sum(10, 4, 3, 1000).value() == 180);
  for (i64 s : {1, 4, 6}) {
    for (i64 t : {1, 7, 11}) {
      for (i64 n = 0; n < 60; ++n) REQUIRE(double_sum(s, t, n, 343).value() == naive_double(s, t, n, 343));
    }
  }
}

TEST_CASE("geom_sum_invert") {
  for (i64 x = 0; x < 9; ++x) {
    CHECK(geom_sum_invert(1, Residue(x, 9)) == x);
    CHECK(geom_sum(4, geom_sum_invert(4, Residue(x, 9)), 9).value() == x);
  }
  CHECK(geom_sum_invert(4, Residue(0, 9)) == 0);
  CHECK_THROWS_AS(geom_sum_invert(2, Residue(1, 9)), std::invalid_argument);
  for (i64 r = 1; r < 125; r += 5) {
    for (i64 x = 0; x < 125; ++x) {
      const i64 y = geom_sum_invert(r, Residue(x, 125));
      REQUIRE(y >= 0);
      REQUIRE(y < 125);
      REQUIRE(geom_sum(r, y, 125).value() == x);
    }
  }
}

TEST_CASE("powmod, invmod, ipow") {
  CHECK(powmod(2, 10, 1000) == 24);
  CHECK(powmod(5, 0, 1) == 0);
  CHECK(invmod(2, 9) == 5);
  CHECK_THROWS_AS(invmod(3, 9), std::invalid_argument);
  CHECK(ipow(3, 4) == 81);
  CHECK_THROWS_AS(ipow(7, 40), std::overflow_error);
  CHECK(prime_power_parts(243) == std::pair<i64, int>{3, 5});
  CHECK_THROWS(prime_power_parts(12));
}
