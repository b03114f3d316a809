// Copyright 2026 The imtheta Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <array>
#include <thread>

#include "image.hpp"
#include "poly_io.hpp"
#include "test_support.hpp"

using namespace imtheta;
using namespace imtheta::testing;

TEST_CASE("addition merges and cancels") {
  CHECK((P("z1", 1) + P("0-z1", 1)).is_zero());
  CHECK(P("z1+u1", 1) + P("z1", 1) == P("2*z1+u1", 1));

  const Field f2 = Field::fp(2);
  CHECK((P("z1", 1, f2) + P("z1", 1, f2)).is_zero());
}

TEST_CASE("multiplication") {
  CHECK(P("(z1+z2)^2", 2) == P("z1^2+2*z1*z2+z2^2", 2));
  CHECK(P("u1*z1", 1) * P("u1*z1", 1) == P("u1^2*z1^2", 1));
}

TEST_CASE("pow by repeated squaring matches naive products") {
  const Field f = Field::rational();
  CHECK(P("u1*z2^3", 2).pow(2) == P("u1^2*z2^6", 2));
  std::mt19937_64 rng(21);
  for (int t = 0; t < 25; ++t) {
    const Poly p = random_poly(rng, 2, f, 3, 2, 4, true);
    Poly naive = Poly::constant(2, f, f.one());
    for (unsigned m = 0; m <= 4; ++m) {
      CHECK(p.pow(m) == naive);
      naive = naive * p;
    }
  }
}

TEST_CASE("ring axioms on random triples") {
  std::mt19937_64 rng(22);
  for (const Field& f : {Field::rational(), Field::gaussian(), Field::fp(13)}) {
    for (int t = 0; t < 200; ++t) {
      const Poly a = random_poly(rng, 2, f, 3, 2, 3, true);
      const Poly b = random_poly(rng, 2, f, 3, 2, 3, true);
      const Poly c = random_poly(rng, 2, f, 3, 2, 3, true);
      CHECK((a + b) + c == a + (b + c));
      CHECK(a + b == b + a);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * b == b * a);
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(canonical(a * b));
      CHECK(canonical(a - a));
    }
  }
}

TEST_CASE("product degrees add over a field") {
  std::mt19937_64 rng(28);
  for (const Field& f : {Field::rational(), Field::gaussian(), Field::fp(13)}) {
    for (int t = 0; t < 60; ++t) {
      const Poly a = random_nonzero_poly(rng, 2, f, 4, 3, 4, true);
      const Poly b = random_nonzero_poly(rng, 2, f, 4, 3, 4, true);
      const Poly ab = a * b;
      REQUIRE_FALSE(ab.is_zero());
      // total degree: the top homogeneous parts cannot cancel over a domain
      auto total = [](const Poly& p) {
        int d = -1;
        for (const auto& [k, c] : p.terms())
          d = std::max(d, total_degree(k.z) + total_degree(k.u));
        return d;
      };
      CHECK(total(ab) == total(a) + total(b));
    }
  }
}

TEST_CASE("values are safely shared across threads") {
  const Poly a = P("(z1+u2)^3+2*z2", 2);
  const Poly b = P("z1*z2-u1", 2);
  const Poly expected = a * b;
  std::vector<std::thread> workers;
  std::array<bool, 4> ok{};
  for (std::size_t w = 0; w < ok.size(); ++w)
    workers.emplace_back([&, w] {
      for (int t = 0; t < 50; ++t)
        if (!(a * b == expected && eval_E(a).pure_z())) return;
      ok[w] = true;
    });
  for (auto& th : workers) th.join();
  for (bool b2 : ok) CHECK(b2);
}

TEST_CASE("context mismatch is rejected") {
  CHECK_THROWS_AS(P("z1", 1) + P("z1", 2), Error);
  CHECK_THROWS_AS(P("z1", 1) * P("z1", 1, Field::gaussian()), Error);
}

TEST_CASE("derivatives") {
  CHECK(P("z1^4", 1).derivative(Block::z, 1) == P("4*z1^3", 1));
  CHECK(P("u1^2*z1", 1).derivative(Block::u, 1) == P("2*u1*z1", 1));
  CHECK(P("z1", 1).derivative(Block::z, 1) == P("1", 1));
  CHECK_THROWS_AS(P("z1", 1).derivative(Block::z, 2), Error);

  const Field f5 = Field::fp(5);
  CHECK(P("z1^5", 1, f5).derivative(Block::z, 1).is_zero());
}

TEST_CASE("mixed partials commute and Leibniz holds") {
  std::mt19937_64 rng(23);
  const Field f = Field::rational();
  for (int t = 0; t < 100; ++t) {
    const Poly a = random_poly(rng, 3, f, 4, 3, 4, true);
    const Poly b = random_poly(rng, 3, f, 4, 3, 4, true);
    for (int i = 1; i <= 3; ++i) {
      for (int j = 1; j <= 3; ++j)
        CHECK(a.derivative(Block::z, i).derivative(Block::z, j) ==
              a.derivative(Block::z, j).derivative(Block::z, i));
      CHECK((a * b).derivative(Block::z, i) ==
            a.derivative(Block::z, i) * b + a * b.derivative(Block::z, i));
    }
  }
}

TEST_CASE("linear substitution") {
  const Field f = Field::rational();
  const Poly p = P("z1^2*z2+u1", 2);

  SUBCASE("identity") {
    CHECK(p.substitute_linear(CoeffMatrix::identity(2, f), Block::z) == p);
  }
  SUBCASE("swap") {
    CoeffMatrix swap(2, 2, f);
    swap.at(0, 1) = f.one();
    swap.at(1, 0) = f.one();
    CHECK(P("z1^2*z2", 2).substitute_linear(swap, Block::z) == P("z2^2*z1", 2));
  }
  SUBCASE("row read-off") {
    CoeffMatrix m = CoeffMatrix::identity(2, f);
    m.at(0, 1) = f.one();  // [[1,1],[0,1]]
    CHECK(P("z1", 2).substitute_linear(m, Block::z) == P("z1+z2", 2));
  }
  SUBCASE("singular is rejected") {
    CoeffMatrix sing(2, 2, f);
    sing.at(0, 0) = f.one();
    sing.at(1, 0) = f.one();
    CHECK_THROWS_AS(p.substitute_linear(sing, Block::z), Error);
  }
  SUBCASE("round-trip through the inverse") {
    std::mt19937_64 rng(24);
    for (int t = 0; t < 30; ++t) {
      const Poly q = random_poly(rng, 3, f, 4, 2, 4);
      const CoeffMatrix m = random_invertible(rng, 3, f);
      const CoeffMatrix mi = *inverse(m);
      CHECK(q.substitute_linear(m, Block::z).substitute_linear(mi, Block::z) == q);
      CHECK(q.substitute_linear(m, Block::u).substitute_linear(mi, Block::u) == q);
    }
  }
}

TEST_CASE("polynomial substitution") {
  const std::vector<Poly> subs = {P("z1+z2^3", 2), P("z2", 2)};
  CHECK(P("z1", 2).substitute_z(subs) == P("z1+z2^3", 2));
  CHECK(P("z1-z2^3", 2).substitute_z(subs) == P("z1", 2));
  CHECK(P("1", 2).substitute_z(subs) == P("1", 2));
  CHECK_THROWS_AS(P("u1", 2).substitute_z(subs), Error);
}

TEST_CASE("coefficient extraction") {
  const Poly p = P("3*z1^2+z2", 2);
  CHECK(p.field().equal(p.coefficient_of({2, 0}, {0, 0}), p.field().from_int(Int(3))));
  CHECK(p.field().is_zero(p.coefficient_of({5, 0}, {0, 0})));
}

TEST_CASE("laurent holomorphic part") {
  const Field f = Field::rational();

  LaurentPoly a(1, f);
  a.add_term({-1}, f.one());
  a.add_term({1}, f.one());
  CHECK(a.holomorphic_part() == P("z1", 1));

  LaurentPoly b(2, f);
  b.add_term({1, 0}, f.from_int(Int(2)));
  b.add_term({-2, 1}, f.from_int(Int(24)));  // mixed signs are not >= 0
  CHECK(b.holomorphic_part() == P("2*z1", 2));
}

TEST_CASE("holomorphic part is idempotent and additive") {
  std::mt19937_64 rng(25);
  const Field f = Field::rational();
  auto random_laurent = [&] {
    LaurentPoly q(2, f);
    std::uniform_int_distribution<int> e(-3, 3);
    for (int t = 0; t < 6; ++t) q.add_term({e(rng), e(rng)}, random_coeff(rng, f, true));
    return q;
  };
  for (int t = 0; t < 100; ++t) {
    const LaurentPoly q = random_laurent();
    const LaurentPoly r = random_laurent();
    const Poly hq = q.holomorphic_part();
    CHECK(LaurentPoly::from_poly_z(hq).holomorphic_part() == hq);
    CHECK((q + r).holomorphic_part() == hq + r.holomorphic_part());
  }
}

TEST_CASE("truncated multiplication agrees with multiply-then-truncate") {
  std::mt19937_64 rng(26);
  const Field f = Field::rational();
  for (int t = 0; t < 50; ++t) {
    const Poly a = random_poly(rng, 2, f, 5, 2, 4);
    const Poly b = random_poly(rng, 2, f, 5, 2, 4);
    for (int d : {0, 2, 5, 9}) CHECK(mul_truncated_z(a, b, d) == (a * b).truncate_z(d));
  }
}

TEST_CASE("json round-trip is bit-exact") {
  std::mt19937_64 rng(27);
  for (const Field& f : {Field::rational(), Field::gaussian(), Field::fp(101)}) {
    for (int t = 0; t < 60; ++t) {
      const Poly p = random_poly(rng, 3, f, 4, 3, 5, true);
      const Json j = to_json(p);
      CHECK(poly_from_json(j) == p);
      CHECK(to_json(poly_from_json(j)).dump() == j.dump());
    }
  }
  // Laurent values keep negative exponents.
  LaurentPoly q(2, Field::rational());
  q.add_term({-2, 1}, Field::rational().from_int(Int(24)));
  CHECK(laurent_from_json(to_json(q)) == q);
  CHECK_FALSE(to_json(q).contains("uexp"));
}

TEST_CASE("degenerate degree conventions") {
  const Poly zero(2, Field::rational());
  CHECK(zero.deg_z() == -1);
  CHECK(zero.deg_u() == -1);
  CHECK(zero.is_constant());
  CHECK(P("u1", 2).pure_u());
  CHECK_FALSE(P("u1*z1", 2).pure_z());
}
