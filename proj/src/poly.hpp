// Copyright 2026 The imtheta Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <string>
#include <vector>

#include "linalg.hpp"

namespace imtheta {

/// The two variable blocks of the ambient ring K[u, z] in n variables each:
/// z1..zn and u1..un (u doubles as the xi block of symbols).
enum class Block : std::uint8_t { z, u };

struct TermKey {
  MultiIndex z, u;
  bool operator==(const TermKey& o) const { return z == o.z && u == o.u; }
};

/// Graded order on split exponents: ascending total degree |z|+|u|,
/// ties lex-descending on the concatenation (z first). Same-degree terms
/// therefore iterate z-major: z1^2, z1*z2, z2^2, ..., z-terms before u-terms.
struct TermKeyLess {
  bool operator()(const TermKey& a, const TermKey& b) const {
    const int da = total_degree(a.z) + total_degree(a.u);
    const int db = total_degree(b.z) + total_degree(b.u);
    if (da != db) return da < db;
    if (a.z != b.z) return a.z > b.z;
    return a.u > b.u;
  }
};

/// Sparse exact polynomial in K[u1..un, z1..zn]. Canonical form: no stored
/// zero coefficients, no duplicate keys; equality is term-set equality.
/// Immutable in use: every operation returns a new value.
class Poly {
 public:
  using TermMap = std::map<TermKey, Coeff, TermKeyLess>;

  Poly(int nvars, const Field& field);

  static Poly constant(int nvars, const Field& f, const Coeff& c);
  static Poly from_int(int nvars, const Field& f, long v);
  /// z_i or u_i, 1-based index.
  static Poly variable(int nvars, const Field& f, Block b, int i);
  static Poly monomial(int nvars, const Field& f, MultiIndex zexp, MultiIndex uexp, const Coeff& c);

  int nvars() const { return nvars_; }
  const Field& field() const { return field_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  /// Total degree within one block; -1 for the zero polynomial.
  int deg_z() const;
  int deg_u() const;
  bool pure_z() const;  // no u variables appear
  bool pure_u() const;
  bool is_constant() const;
  /// The coefficient of the constant term (field zero if absent).
  Coeff constant_value() const;

  Coeff coefficient_of(const MultiIndex& zexp, const MultiIndex& uexp) const;

  /// Accumulates c * z^zexp * u^uexp, keeping canonical form.
  void add_term(const TermKey& key, const Coeff& c);

  Poly scaled(const Coeff& c) const;
  Poly pow(unsigned m) const;  // repeated squaring
  Poly derivative(Block b, int i) const;  // 1-based; IndexOutOfRange
  /// Replaces the chosen block's variables v_i by sum_j M[i][j] v_j.
  /// M must be invertible (SingularMatrix otherwise).
  Poly substitute_linear(const CoeffMatrix& m, Block b) const;
  /// f(subs_1, ..., subs_n) for pure-z f (NonZPure otherwise).
  Poly substitute_z(const std::vector<Poly>& subs) const;
  /// Drops terms of z-degree > d (u exponents are not counted).
  Poly truncate_z(int d) const;

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a);
  friend bool operator==(const Poly& a, const Poly& b);
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

 private:
  int nvars_;
  Field field_;
  TermMap terms_;
};

/// Requires matching nvars and field; throws MismatchedContext.
void require_same_context(const Poly& a, const Poly& b);

/// Product truncated to z-degree <= d; factors of higher z-degree are
/// dropped before multiplying.
Poly mul_truncated_z(const Poly& a, const Poly& b, int d);

/// Sparse Laurent polynomial in z with integer exponents of either sign.
class LaurentPoly {
 public:
  using TermMap = std::map<MultiIndex, Coeff, GradedLess>;

  LaurentPoly(int nvars, const Field& field);

  static LaurentPoly monomial(int nvars, const Field& f, MultiIndex zexp, const Coeff& c);
  static LaurentPoly from_poly_z(const Poly& p);  // p must be pure-z

  int nvars() const { return nvars_; }
  const Field& field() const { return field_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const MultiIndex& key, const Coeff& c);

  Coeff coefficient_of(const MultiIndex& zexp) const;
  /// Terms with every exponent >= 0, as a pure-z Poly.
  Poly holomorphic_part() const;
  /// Terms with every exponent <= bound (componentwise).
  LaurentPoly part_with_all_exponents_leq(int bound) const;
  LaurentPoly negated_exponents() const;       // z -> z^{-1}
  LaurentPoly shifted(const MultiIndex& delta) const;  // multiply by z^delta

  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b);
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b);
  friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

 private:
  int nvars_;
  Field field_;
  TermMap terms_;
};

}  // namespace imtheta
