// Copyright 2026 The imtheta Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "test_support.hpp"

using namespace imtheta;
using imtheta::testing::random_coeff;

TEST_CASE("rational arithmetic is exact and canonical") {
  const Field f = Field::rational();
  CHECK(f.equal(f.from_fraction(Int(2), Int(4)), f.from_fraction(Int(1), Int(2))));
  CHECK(f.to_text(f.from_fraction(Int(-3), Int(6))) == "-1/2");
  CHECK(f.to_text(f.from_int(Int(7))) == "7");

  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    const Coeff a = random_coeff(rng, f, true);
    const Coeff b = random_coeff(rng, f, true);
    CHECK(f.equal(f.sub(f.add(a, b), b), a));
    CHECK(f.equal(f.div(f.mul(a, b), b), a));
  }
}

TEST_CASE("fraction with zero denominator is rejected") {
  const Field f = Field::rational();
  CHECK_THROWS_WITH_AS(f.from_fraction(Int(3), Int(0)), doctest::Contains("zero denominator"),
                       Error);
}

TEST_CASE("gaussian rationals") {
  const Field f = Field::gaussian();
  const Coeff i = f.imaginary_unit();
  CHECK(f.equal(f.mul(i, i), f.from_int(Int(-1))));
  CHECK(f.to_text(f.add(f.from_int(Int(3)), i)) == "3+i");
  CHECK(f.to_text(f.sub(f.from_int(Int(3)), i)) == "3-i");
  CHECK(f.to_text(f.mul(f.from_int(Int(2)), i)) == "2*i");

  std::mt19937_64 rng(12);
  for (int t = 0; t < 100; ++t) {
    const Coeff a = random_coeff(rng, f, true);
    CHECK(f.is_one(f.mul(a, f.inv(a))));
  }
}

TEST_CASE("imaginary unit requires the gaussian field") {
  CHECK_THROWS_AS(Field::rational().imaginary_unit(), Error);
  CHECK_THROWS_AS(Field::fp(5).imaginary_unit(), Error);
}

TEST_CASE("prime fields") {
  CHECK_THROWS_AS(Field::fp(4), Error);
  CHECK_THROWS_AS(Field::fp(1), Error);
  CHECK_NOTHROW(Field::fp(2));
  CHECK_NOTHROW(Field::fp((std::uint64_t{1} << 61) - 1));

  const Field f = Field::fp(7);
  CHECK(f.characteristic() == 7);
  for (std::uint64_t a = 1; a < 7; ++a) CHECK(f.is_one(f.mul(Coeff(a), f.inv(Coeff(a)))));
  // 3/2 = 3 * inv(2) = 3 * 4 = 12 = 5 mod 7
  CHECK(f.equal(f.from_fraction(Int(3), Int(2)), Coeff(std::uint64_t{5})));
  CHECK_THROWS_AS(f.from_fraction(Int(1), Int(7)), Error);
  CHECK(f.equal(f.from_int(Int(-1)), Coeff(std::uint64_t{6})));
}

TEST_CASE("field descriptor strings round-trip") {
  for (const std::string s : {"rational", "gaussian", "fp:5", "fp:65537"})
    CHECK(Field::from_string(s).to_string() == s);
  CHECK_THROWS_AS(Field::from_string("float"), Error);
  CHECK_THROWS_AS(Field::from_string("fp:abc"), Error);
  CHECK_THROWS_AS(Field::from_string("fp:"), Error);
}

TEST_CASE("primality test agrees with trial division on small numbers") {
  auto trial = [](std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  };
  for (std::uint64_t n = 0; n < 2000; ++n) CHECK(is_prime_u64(n) == trial(n));
}
