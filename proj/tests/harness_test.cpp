// Copyright 2026 The imtheta Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "test_support.hpp"

using namespace imtheta;
using namespace imtheta::testing;

namespace {

PolyMap map2(const std::string& h1, const std::string& h2, const Field& f = Field::rational()) {
  return make_poly_map({P(h1, 2, f), P(h2, 2, f)});
}

// f(u, z) = sum_i u_i H_i(z)
Poly xi_dot(const PolyMap& h) {
  Poly f(h.nvars(), h.field());
  for (int i = 1; i <= h.nvars(); ++i)
    f = f + Poly::variable(h.nvars(), h.field(), Block::u, i) *
                h.components[static_cast<std::size_t>(i - 1)];
  return f;
}

// Fixed-point inversion oracle: G <- z + H(G), truncated.
PolyMap fixed_point_inverse(const PolyMap& h, int trunc) {
  PolyMap g = identity_map(h.nvars(), h.field());
  for (int it = 0; it <= trunc + 1; ++it) {
    std::vector<Poly> next;
    next.reserve(h.components.size());
    for (int i = 1; i <= h.nvars(); ++i)
      next.push_back(Poly::variable(h.nvars(), h.field(), Block::z, i) +
                     h.components[static_cast<std::size_t>(i - 1)].substitute_z(g.components).truncate_z(trunc));
    if (next == g.components) break;
    g = PolyMap{std::move(next)};
  }
  return g;
}

}  // namespace

TEST_CASE("jacobian and hessian matrices") {
  CHECK(hessian_matrix(P("z1^2", 1))[0][0] == P("2", 1));

  const PolyMatrix hes = hessian_matrix(P("z1*z2", 2));
  CHECK(hes[0][0].is_zero());
  CHECK(hes[0][1] == P("1", 2));
  CHECK(hes[1][0] == P("1", 2));

  const Field g = Field::gaussian();
  const PolyMatrix hg = hessian_matrix(P("(z1+i*z2)^2", 2, g));
  CHECK(hg[0][0] == P("2", 2, g));
  CHECK(hg[0][1] == P("2*i", 2, g));
  CHECK(hg[1][0] == P("2*i", 2, g));
  CHECK(hg[1][1] == P("-2", 2, g));

  const PolyMap f = map2("z1-z2^3", "z2");
  CHECK(jacobian_det(f) == P("1", 2));
  CHECK(jacobian_det(identity_map(3, Field::rational())) == P("1", 3));
}

TEST_CASE("nilpotency of polynomial matrices") {
  const Field g = Field::gaussian();
  CHECK(is_nilpotent_matrix(hessian_matrix(P("(z1+i*z2)^4", 2, g))));
  CHECK_FALSE(is_nilpotent_matrix(hessian_matrix(P("(z1+i*z2)^4+z1^4", 2, g))));
  CHECK(is_nilpotent_matrix(jacobian_matrix(map2("z2^3", "0"))));
  PolyMatrix id = {{P("1", 2), P("0", 2)}, {P("0", 2), P("1", 2)}};
  CHECK_FALSE(is_nilpotent_matrix(id));
}

TEST_CASE("vanishing check tables") {
  SUBCASE("high-order derivative in a missing variable") {
    const VCReport r = vc_check(make_const_coeff_op(P("u1^2", 2)), P("z2", 2), P("z1", 2), 4);
    CHECK(r.hypothesis == std::vector<bool>(4, true));
    CHECK(r.conclusion == std::vector<bool>(4, true));
    CHECK_FALSE(r.hypothesis_violated);
    CHECK(r.threshold == 1);
  }
  SUBCASE("hessian-nilpotent quartic under the laplacian") {
    const Field g = Field::gaussian();
    const Poly p = P("(z1+i*z2)^4", 2, g);
    const VCReport r = vc_check(make_const_coeff_op(P("u1^2+u2^2", 2, g)), p, p, 4);
    CHECK(r.hypothesis == std::vector<bool>(4, true));
    CHECK_FALSE(r.hypothesis_violated);
  }
  SUBCASE("violated hypothesis is flagged") {
    const VCReport r = vc_check(make_const_coeff_op(P("u1", 1)), P("z1", 1), P("1", 1), 2);
    CHECK_FALSE(r.hypothesis[0]);
    CHECK(r.hypothesis_violated);
  }
}

TEST_CASE("power sums of map powers") {
  SUBCASE("triangular cubic: all sums vanish and the jacobian is 1") {
    const PolyMap h = map2("z2^3", "0");
    for (const Poly& s : jc_power_sums(h, 3)) CHECK(s.is_zero());
    const PolyMap f = map2("z1-z2^3", "z2");
    CHECK(jacobian_det(f) == P("1", 2));
  }
  SUBCASE("non-unimodular instance fails at the first power") {
    const std::vector<Poly> sums = jc_power_sums(map2("z1^2", "0"), 1);
    CHECK(sums[0] == P("2*z1", 2));
  }
  SUBCASE("zero map") {
    for (const Poly& s : jc_power_sums(map2("0", "0"), 3)) CHECK(s.is_zero());
  }
}

TEST_CASE("operator route equals the power-sum route") {
  // m! sum_{|a|=m} (1/a!) d^a(H^a) = E(f^m) with f = sum u_i H_i, and the
  // same with an extra z_i factor; this holds for arbitrary H.
  std::mt19937_64 rng(71);
  const Field fld = Field::rational();
  for (int t = 0; t < 10; ++t) {
    std::vector<Poly> comps;
    for (int i = 0; i < 2; ++i) comps.push_back(random_poly(rng, 2, fld, 3, 0, 3));
    const PolyMap h = make_poly_map(std::move(comps));
    const Poly f = xi_dot(h);
    const std::vector<Poly> sums = jc_power_sums(h, 4);
    for (int m = 1; m <= 4; ++m) {
      const Coeff mfact = fld.from_int(factorial(MultiIndex{static_cast<std::int32_t>(m)}));
      CHECK(sums[static_cast<std::size_t>(m - 1)].scaled(mfact) ==
            eval_E(f.pow(static_cast<unsigned>(m))));
      for (int i = 1; i <= 2; ++i) {
        const Poly zi = Poly::variable(2, fld, Block::z, i);
        // reuse the power-sum machinery with the extra factor via eval_E
        Poly direct(2, fld);
        for_each_exponent(2, m, [&](const MultiIndex& alpha) {
          if (total_degree(alpha) != m) return;
          Poly ha = Poly::constant(2, fld, fld.one());
          for (int c = 0; c < 2; ++c)
            ha = ha * h.components[static_cast<std::size_t>(c)].pow(
                          static_cast<unsigned>(alpha[static_cast<std::size_t>(c)]));
          Poly term = ha * zi;
          for (int c = 1; c <= 2; ++c)
            for (std::int32_t r = 0; r < alpha[static_cast<std::size_t>(c - 1)]; ++r)
              term = term.derivative(Block::z, c);
          direct = direct + term.scaled(fld.inv(fld.from_int(factorial(alpha))));
        });
        CHECK(direct.scaled(mfact) == eval_E(f.pow(static_cast<unsigned>(m)) * zi));
      }
    }
  }
}

TEST_CASE("unimodularity matches membership of map-power polynomials") {
  std::mt19937_64 rng(72);
  const Field fld = Field::rational();
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const PolyMap h = random_triangular_map(3, 3, fld, seed);
    const Poly f = xi_dot(h);
    for (unsigned m = 1; m <= 5; ++m) CHECK(member_theta(f.pow(m)).is_member);
  }
  // j(z - H) != 1 makes some power fail
  const Poly f_bad = xi_dot(map2("z1^3", "0"));
  CHECK_FALSE(member_theta(f_bad.pow(1)).is_member);
}

TEST_CASE("power-sum terms of homogeneous cubics have degree 2m when nonzero") {
  const std::vector<Poly> sums = jc_power_sums(map2("z1^3", "0"), 3);
  for (int m = 1; m <= 3; ++m) {
    const Poly& s = sums[static_cast<std::size_t>(m - 1)];
    REQUIRE_FALSE(s.is_zero());
    CHECK(s.deg_z() == 2 * m);
  }
}

TEST_CASE("formal inversion") {
  SUBCASE("cubic shear") {
    const PolyMap h = map2("z2^3", "0");
    const PolyMap g = ag_inverse_map(h, 9);
    CHECK(g.components[0] == P("z1+z2^3", 2));
    CHECK(g.components[1] == P("z2", 2));
    const PolyMap f = map2("z1-z2^3", "z2");
    CHECK(compose(f, g).components == identity_map(2, Field::rational()).components);
  }
  SUBCASE("zero map inverts to the identity") {
    const PolyMap g = ag_inverse_map(map2("0", "0"), 5);
    CHECK(g.components == identity_map(2, Field::rational()).components);
  }
  SUBCASE("scalar transport") {
    const PolyMap h = map2("z2^3", "0");
    // g(G) for g = z1^2 is (z1 + z2^3)^2
    CHECK(ag_inverse(h, P("z1^2", 2), 9) == P("(z1+z2^3)^2", 2));
  }
  SUBCASE("random triangular cubics match the fixed-point oracle") {
    const Field fld = Field::rational();
    for (std::uint64_t seed = 10; seed < 16; ++seed) {
      for (int n : {2, 3}) {
        const PolyMap h = random_triangular_map(n, 3, fld, seed);
        const int trunc = 9;
        const PolyMap g = ag_inverse_map(h, trunc);
        const PolyMap oracle = fixed_point_inverse(h, trunc);
        CHECK(g.components == oracle.components);

        std::vector<Poly> f_comps;
        for (int i = 1; i <= n; ++i)
          f_comps.push_back(Poly::variable(n, fld, Block::z, i) -
                            h.components[static_cast<std::size_t>(i - 1)]);
        const PolyMap f{std::move(f_comps)};
        const PolyMap round = compose(f, g);
        for (int i = 1; i <= n; ++i)
          CHECK(round.components[static_cast<std::size_t>(i - 1)].truncate_z(trunc) ==
                Poly::variable(n, fld, Block::z, i));
      }
    }
  }
  SUBCASE("rejections") {
    CHECK_THROWS_AS(ag_inverse_map(map2("z1^2", "0"), 5), Error);         // not unimodular
    CHECK_THROWS_AS(ag_inverse_map(map2("z2^3+z2", "0"), 5), Error);      // not homogeneous
    CHECK_THROWS_AS(ag_inverse_map(map2("z2", "0"), 5), Error);           // degree 1
    try {
      ag_inverse_map(map2("z1^3", "0"), 5);
      FAIL("expected NotUnimodular");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::not_unimodular);
    }
  }
}

TEST_CASE("image-conjecture instance tables") {
  const ICReport r = ic_instance_check(P("u1*z2^3", 2), P("z1", 2), 4);
  CHECK(r.hypothesis == std::vector<bool>(4, true));
  CHECK(r.conclusion == std::vector<bool>{false, true, true, true});
  CHECK_FALSE(r.hypothesis_violated);
  CHECK(r.threshold == 2);

  const ICReport bad = ic_instance_check(P("1", 1), P("z1", 1), 2);
  CHECK(bad.hypothesis == std::vector<bool>{false, false});
  CHECK(bad.hypothesis_violated);

  // quadratic symbol times a hessian-nilpotent quartic, over Q(i)
  const Field g = Field::gaussian();
  const Poly p4 = P("(z1+i*z2)^4", 2, g);
  const ICReport hn = ic_instance_check(P("(u1^2+u2^2)", 2, g) * p4, p4, 2);
  CHECK(hn.hypothesis == std::vector<bool>{true, true});
  CHECK_FALSE(hn.hypothesis_violated);
}

TEST_CASE("random triangular maps have the promised structure") {
  const Field fld = Field::rational();
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const PolyMap h = random_triangular_map(3, 3, fld, seed);
    CHECK(is_nilpotent_matrix(jacobian_matrix(h)));
    std::vector<Poly> f_comps;
    for (int i = 1; i <= 3; ++i)
      f_comps.push_back(Poly::variable(3, fld, Block::z, i) -
                        h.components[static_cast<std::size_t>(i - 1)]);
    CHECK(jacobian_det(PolyMap{std::move(f_comps)}) == P("1", 3));
    // strict triangularity: H_i uses only later variables
    for (int i = 1; i <= 3; ++i)
      for (int j = 1; j <= i; ++j)
        CHECK(h.components[static_cast<std::size_t>(i - 1)].derivative(Block::z, j).is_zero());
    // determinism
    CHECK(random_triangular_map(3, 3, fld, seed).components == h.components);
  }
}

TEST_CASE("bundled example reports") {
  const Json e26 = builtin_example("2.6", 0, 5);
  CHECK(e26["operator"] == "z1*d1-1");
  CHECK(e26["f"] == "1+z1^2");
  for (const auto& row : e26["rows"]) {
    CHECK(row["fm_member"] == true);
    CHECK(row["t_fm_member"] == false);
  }

  const Json e27 = builtin_example("2.7", 5, 1);
  CHECK(e27["targets"][0]["member"] == true);
  CHECK(e27["targets"][0]["witness"] == "z1");
  CHECK(e27["targets"][1]["member"] == false);

  CHECK_THROWS_AS(builtin_example("9.9", 5, 1), Error);
}

TEST_CASE("map JSON round-trip") {
  const PolyMap h = map2("z2^3", "0");
  const PolyMap back = map_from_json(map_to_json(h));
  CHECK(back.components == h.components);
}

TEST_CASE("map construction is validated") {
  CHECK_THROWS_AS(make_poly_map({P("z1", 2)}), Error);               // one component in 2 vars
  CHECK_THROWS_AS(make_poly_map({P("u1", 2), P("z2", 2)}), Error);   // not pure-z
  CHECK_THROWS_AS(make_poly_map({}), Error);
}
