// Copyright 2026 The imtheta Authors
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: ten end-to-end criteria with pinned tolerances (all
// exact) and runtime caps. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fail. Criterion 6 drives the CLI binary named by the
// IMTHETA_CLI environment variable.

#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "test_support.hpp"

using namespace imtheta;
using namespace imtheta::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

int g_failures = 0;

void run_criterion(int id, const std::string& name, double max_seconds,
                   const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out.pass = false;
    out.detail = std::string("exception: ") + e.what();
  }
  const double secs =
      std::chrono::duration_cast<std::chrono::duration<double>>(std::chrono::steady_clock::now() - t0)
          .count();
  if (max_seconds > 0 && secs > max_seconds) {
    out.pass = false;
    out.detail += (out.detail.empty() ? "" : "; ") + std::string("exceeded runtime cap of ") +
                  std::to_string(max_seconds) + "s";
  }
  char line[512];
  std::snprintf(line, sizeof(line), "[%s] criterion %2d: %s (%.2fs)%s%s", out.pass ? "PASS" : "FAIL",
                id, name.c_str(), secs, out.detail.empty() ? "" : " -- ", out.detail.c_str());
  std::cout << line << std::endl;
  if (!out.pass) ++g_failures;
}

Poly random_mixed_case(std::mt19937_64& rng, int nvars, const Field& f, int dz, int du) {
  Poly p = random_poly(rng, nvars, f, dz, du, 5, true);
  if (rng() % 2 == 0) {
    const int i = 1 + static_cast<int>(rng() % nvars);
    return apply_op(theta_op(nvars, f, i), p);
  }
  return p;
}

// --- criterion bodies -----------------------------------------------------

Outcome kernel_law() {
  std::mt19937_64 rng(1001);
  const Field f = Field::rational();
  for (int t = 0; t < 300; ++t) {
    const int n = 1 + static_cast<int>(rng() % 3);
    const Poly p = random_poly(rng, n, f, 5, 5, 6, true);
    for (int i = 1; i <= n; ++i) {
      if (!eval_E(apply_op(theta_op(n, f, i), p)).is_zero())
        return {false, "E(theta_" + std::to_string(i) + " f) != 0 at trial " + std::to_string(t)};
    }
  }
  return {};
}

Outcome twisted_taylor_laws() {
  std::mt19937_64 rng(1002);
  const Field f = Field::rational();
  for (int t = 0; t < 200; ++t) {
    const int n = 1 + static_cast<int>(rng() % 3);
    const Poly p = random_poly(rng, n, f, 5, 4, 6, true);
    const TaylorDecomposition d = twisted_taylor(p);
    if (d.reconstruct() != p) return {false, "reconstruction failed at trial " + std::to_string(t)};
    if (d.order_zero() != eval_E(p))
      return {false, "order-zero law failed at trial " + std::to_string(t)};
  }
  return {};
}

Outcome oracle_triangle() {
  std::mt19937_64 rng(1003);
  const Field f = Field::rational();
  const std::vector<FirstOrderOp> theta = theta_family(2, f);
  int members = 0;
  for (int t = 0; t < 100; ++t) {
    const Poly p = random_mixed_case(rng, 2, f, 3, 2);
    const MembershipReport r = member_theta(p);
    const bool z_zero = r.z_holomorphic.is_zero();
    const bool brute = member_bruteforce(p, theta, theta_witness_bounds(p)).has_value();
    if (r.is_member != z_zero || r.is_member != brute)
      return {false, "disagreement at trial " + std::to_string(t)};
    members += r.is_member ? 1 : 0;
  }
  return {true, std::to_string(members) + "/100 members"};
}

Outcome coefficient_bridge() {
  std::mt19937_64 rng(1004);
  const Field f = Field::rational();
  for (int t = 0; t < 200; ++t) {
    const int n = 1 + static_cast<int>(rng() % 3);
    const Poly p = random_poly(rng, n, f, 5, 4, 6, true);
    const Poly e = eval_E(p);
    const LaurentPoly z = eval_Z(p);
    for (const auto& [k, c] : e.terms())
      if (!f.equal(f.mul(c, f.from_int(factorial(k.z))), z.coefficient_of(k.z)))
        return {false, "bridge failed at trial " + std::to_string(t)};
    for (const auto& [k, c] : z.terms()) {
      if (!all_nonnegative(k)) continue;
      if (!f.equal(c, f.mul(e.coefficient_of(k, MultiIndex(k.size(), 0)), f.from_int(factorial(k)))))
        return {false, "reverse bridge failed at trial " + std::to_string(t)};
    }
  }
  return {};
}

Outcome laplace_identity() {
  const Field f = Field::rational();
  for (int n = 1; n <= 3; ++n) {
    bool ok = true;
    for_each_exponent(n, 6, [&](const MultiIndex& beta) {
      const Poly zb = Poly::monomial(n, f, beta, MultiIndex(beta.size(), 0), f.one());
      MultiIndex shifted(beta.size());
      for (std::size_t i = 0; i < beta.size(); ++i) shifted[i] = -beta[i] - 1;
      const LaurentPoly expected =
          LaurentPoly::monomial(n, f, shifted, f.from_int(factorial(beta)));
      if (!(laplace_transform(zb) == expected)) ok = false;
    });
    if (!ok) return {false, "monomial transform mismatch at n=" + std::to_string(n)};
  }
  std::mt19937_64 rng(1005);
  for (int t = 0; t < 100; ++t) {
    const Poly p = random_mixed_case(rng, 2, f, 3, 2);
    const bool principal_zero = laplace_principal_part(laplace_transform(p)).is_zero();
    if (principal_zero != member_theta(p).is_member)
      return {false, "principal-part criterion disagreed at trial " + std::to_string(t)};
  }
  return {};
}

std::string run_cli(const std::string& args, int& exit_code) {
  const char* cli = std::getenv("IMTHETA_CLI");
  if (!cli) {
    exit_code = -1;
    return "";
  }
  const std::string cmd = std::string(cli) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    exit_code = -1;
    return "";
  }
  std::string out;
  std::array<char, 4096> buf;
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int st = pclose(pipe);
  exit_code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return out;
}

Outcome counterexample_fixtures() {
  const std::string expected26 =
      "example 2.6 (nvars=1, field=rational)\n"
      "operator: z1*d1-1\n"
      "f = 1+z1^2\n"
      "m=1: f^m member: yes | z1*f^m member: no\n"
      "m=2: f^m member: yes | z1*f^m member: no\n"
      "m=3: f^m member: yes | z1*f^m member: no\n"
      "m=4: f^m member: yes | z1*f^m member: no\n"
      "m=5: f^m member: yes | z1*f^m member: no\n";
  const std::string expected27 =
      "example 2.7 (nvars=1, field=fp:5)\n"
      "operator: d1\n"
      "target 1: member: yes (witness z1)\n"
      "target z1^4: member: no\n";
  int code = 0;
  const std::string out26 = run_cli("examples --id 2.6", code);
  if (code != 0) return {false, "CLI run failed (set IMTHETA_CLI)"};
  if (out26 != expected26) return {false, "2.6 output differs"};
  const std::string out27 = run_cli("examples --id 2.7 --p 5", code);
  if (code != 0) return {false, "CLI run failed for 2.7"};
  if (out27 != expected27) return {false, "2.7 output differs"};
  return {};
}

PolyMap z_minus(const PolyMap& h) {
  std::vector<Poly> comps;
  for (int i = 1; i <= h.nvars(); ++i)
    comps.push_back(Poly::variable(h.nvars(), h.field(), Block::z, i) -
                    h.components[static_cast<std::size_t>(i - 1)]);
  return PolyMap{std::move(comps)};
}

PolyMap fixed_point_inverse(const PolyMap& h, int trunc) {
  PolyMap g = identity_map(h.nvars(), h.field());
  for (int it = 0; it <= trunc + 1; ++it) {
    std::vector<Poly> next;
    for (int i = 1; i <= h.nvars(); ++i)
      next.push_back(Poly::variable(h.nvars(), h.field(), Block::z, i) +
                     h.components[static_cast<std::size_t>(i - 1)]
                         .substitute_z(g.components)
                         .truncate_z(trunc));
    if (next == g.components) break;
    g = PolyMap{std::move(next)};
  }
  return g;
}

Outcome jacobian_harness() {
  const Field f = Field::rational();
  int instance = 0;
  for (int n : {2, 3}) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed, ++instance) {
      const PolyMap h = random_triangular_map(n, 3, f, seed * 7919);
      // power sums vanish
      for (const Poly& s : jc_power_sums(h, 4))
        if (!s.is_zero()) return {false, "power sum nonzero at instance " + std::to_string(instance)};
      // operator route vanishes
      Poly fxi(n, f);
      for (int i = 1; i <= n; ++i)
        fxi = fxi + Poly::variable(n, f, Block::u, i) * h.components[static_cast<std::size_t>(i - 1)];
      for (unsigned m = 1; m <= 4; ++m)
        if (!eval_E(fxi.pow(m)).is_zero())
          return {false, "E(f^m) nonzero at instance " + std::to_string(instance)};
      // formal inverse round-trip and oracle agreement
      const PolyMap g = ag_inverse_map(h, 9);
      if (!(g.components == fixed_point_inverse(h, 9).components))
        return {false, "fixed-point oracle mismatch at instance " + std::to_string(instance)};
      const PolyMap round = compose(z_minus(h), g);
      for (int i = 1; i <= n; ++i)
        if (!(round.components[static_cast<std::size_t>(i - 1)].truncate_z(9) ==
              Poly::variable(n, f, Block::z, i)))
          return {false, "F(G) != z at instance " + std::to_string(instance)};
    }
  }
  return {true, "20 instances"};
}

Outcome hessian_bridge() {
  const Field g = Field::gaussian();
  const Poly p = parse_poly("(z1+i*z2)^4", 2, g);
  const ConstCoeffOp laplacian = make_const_coeff_op(parse_poly("u1^2+u2^2", 2, g));
  if (!is_nilpotent_matrix(hessian_matrix(p))) return {false, "Hes(P) should be nilpotent"};
  for (unsigned m = 1; m <= 5; ++m)
    if (!apply_lambda(laplacian, p.pow(m), m).is_zero())
      return {false, "Delta^m(P^m) != 0 at m=" + std::to_string(m)};

  const Poly bad = p + parse_poly("z1^4", 2, g);
  if (is_nilpotent_matrix(hessian_matrix(bad))) return {false, "perturbed Hessian should fail"};
  bool some_power_fails = false;
  for (unsigned m = 1; m <= 5; ++m)
    if (!apply_lambda(laplacian, bad.pow(m), m).is_zero()) some_power_fails = true;
  if (!some_power_fails) return {false, "perturbed powers unexpectedly vanish"};
  return {};
}

Outcome reduction_laws() {
  std::mt19937_64 rng(1009);
  const Field f = Field::rational();
  for (int t = 0; t < 50; ++t) {
    const int n = 1 + static_cast<int>(rng() % 3);
    const Poly q = random_poly(rng, n, f, 5, 0, 5, true);
    const std::vector<FirstOrderOp> grad = gradient_family(q);
    const CoeffMatrix s = random_invertible(rng, n, f);

    std::vector<FirstOrderOp> mixed;
    for (int r = 0; r < n; ++r) {
      std::vector<Poly> leading(static_cast<std::size_t>(n), Poly(n, f));
      Poly zero_order(n, f);
      for (int c = 0; c < n; ++c) {
        for (int i = 0; i < n; ++i)
          leading[static_cast<std::size_t>(i)] =
              leading[static_cast<std::size_t>(i)] +
              grad[static_cast<std::size_t>(c)].leading[static_cast<std::size_t>(i)].scaled(s.at(r, c));
        zero_order = zero_order + grad[static_cast<std::size_t>(c)].zero_order.scaled(s.at(r, c));
      }
      mixed.push_back(FirstOrderOp{std::move(leading), std::move(zero_order)});
    }

    const ReducedFamily red = reduce_family(mixed);
    if (red.k != n) return {false, "expected full rank at trial " + std::to_string(t)};
    if (!red.gens.empty()) return {false, "unexpected generators at trial " + std::to_string(t)};

    // gradient of the recovered potential must match the transformed
    // first-order parts: q_rec == q(Bz) - const, exactly
    const Poly q_new = q.substitute_linear(red.coord_change, Block::z);
    const Poly expected = q_new - Poly::constant(n, f, q_new.constant_value());
    if (!(red.q == expected)) return {false, "potential mismatch at trial " + std::to_string(t)};
  }

  // non-integrable data is rejected with the right witness pair
  try {
    recover_potential({parse_poly("z2", 2, f), parse_poly("0", 2, f)});
    return {false, "non-integrable gradient accepted"};
  } catch (const Error& e) {
    if (e.code() != Errc::not_integrable || e.witness() != std::pair<int, int>{1, 2})
      return {false, "wrong rejection for non-integrable data"};
  }
  try {
    reduce_family({make_op({parse_poly("1", 2, f), parse_poly("0", 2, f)}, parse_poly("0-z2", 2, f)),
                   make_op({parse_poly("0", 2, f), parse_poly("1", 2, f)}, parse_poly("0", 2, f))});
    return {false, "non-commuting family accepted"};
  } catch (const Error& e) {
    if (e.code() != Errc::non_commuting || e.witness() != std::pair<int, int>{0, 1})
      return {false, "wrong rejection for non-commuting family"};
  }
  return {};
}

// Independent rank computation: textbook Gaussian elimination over
// boost rationals, no shared code with the library's solver.
int plain_rank(std::vector<std::vector<Rat>> m) {
  const std::size_t rows = m.size();
  if (rows == 0) return 0;
  const std::size_t cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (m[i][c] == 0) continue;
      const Rat factor = m[i][c] / m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= factor * m[r][j];
    }
    ++r;
  }
  return static_cast<int>(r);
}

std::int64_t independent_codim(int dq, int degree) {
  // n = 1, q = z^{dq}: inputs z^j, j <= degree + 1 - dq, images
  // j z^{j-1} - dq z^{dq-1+j}.
  const int input_deg = degree + 1 - dq;
  std::vector<std::vector<Rat>> m(static_cast<std::size_t>(degree + 1),
                                  std::vector<Rat>(static_cast<std::size_t>(input_deg + 1), Rat(0)));
  for (int j = 0; j <= input_deg; ++j) {
    if (j >= 1) m[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(j)] += j;
    const int up = dq - 1 + j;
    if (up <= degree) m[static_cast<std::size_t>(up)][static_cast<std::size_t>(j)] -= dq;
  }
  return (degree + 1) - plain_rank(std::move(m));
}

Outcome finite_codimension() {
  const Field f = Field::rational();
  for (int d = 1; d <= 3; ++d) {
    const Poly q = Poly::variable(1, f, Block::z, 1).pow(static_cast<unsigned>(d + 1));
    std::int64_t first = -1;
    for (int degree : {8, 12, 16}) {
      const std::int64_t got = codim_truncated(q, degree);
      const std::int64_t oracle = independent_codim(d + 1, degree);
      if (got != oracle)
        return {false, "rank oracle mismatch at d=" + std::to_string(d) +
                           ", D=" + std::to_string(degree)};
      if (first < 0) first = got;
      if (got != first) return {false, "sweep not stable at d=" + std::to_string(d)};
    }
    if (first != d)
      return {false, "stabilized value " + std::to_string(first) + " != " + std::to_string(d)};
  }
  return {};
}

}  // namespace

int main() {
  run_criterion(1, "evaluation map annihilates the operator image", 10.0, kernel_law);
  run_criterion(2, "twisted Taylor reconstruction and order-zero law", 30.0, twisted_taylor_laws);
  run_criterion(3, "membership oracle triangle", -1, oracle_triangle);
  run_criterion(4, "coefficient bridge between the two maps", -1, coefficient_bridge);
  run_criterion(5, "Laplace transform closed form and criterion", -1, laplace_identity);
  run_criterion(6, "counterexample CLI fixtures byte-exact", -1, counterexample_fixtures);
  run_criterion(7, "Jacobian harness on triangular cubics", 120.0, jacobian_harness);
  run_criterion(8, "Hessian nilpotency bridge", -1, hessian_bridge);
  run_criterion(9, "reduction recovers potentials exactly", -1, reduction_laws);
  run_criterion(10, "finite codimension stabilization", -1, finite_codimension);

  if (g_failures > 0) {
    std::cout << g_failures << " criterion(s) failed" << std::endl;
    return 1;
  }
  std::cout << "all acceptance criteria passed" << std::endl;
  return 0;
}
