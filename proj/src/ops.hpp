// Copyright 2026 The imtheta Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "poly_io.hpp"

namespace imtheta {

/// Order-one operator a_1(z) d/dz_1 + ... + a_n(z) d/dz_n + h(z), acting on
/// K[u, z] with derivatives in the z block only. The zero-order part may
/// involve u (e.g. the operators u_i - d/dz_i), and leading coefficients may
/// be non-constant polynomials, in which case only application is supported.
struct FirstOrderOp {
  std::vector<Poly> leading;  // length nvars
  Poly zero_order;

  int nvars() const { return zero_order.nvars(); }
  const Field& field() const { return zero_order.field(); }

  bool constant_leading() const;
  /// Leading coefficients as a constant vector; requires constant_leading().
  std::vector<Coeff> leading_vector() const;
  bool leading_is_zero() const;
};

FirstOrderOp make_op(std::vector<Poly> leading, Poly zero_order);
/// Multiplication operator by h.
FirstOrderOp make_multiplication_op(const Poly& h);
/// The family u_i - d/dz_i for i = 1..n.
std::vector<FirstOrderOp> theta_family(int nvars, const Field& f);
FirstOrderOp theta_op(int nvars, const Field& f, int i);
/// The gradient family d/dz_i - dq/dz_i for i = 1..n (pairwise commuting).
std::vector<FirstOrderOp> gradient_family(const Poly& q);

/// op(f) = sum_i a_i * df/dz_i + h * f.
Poly apply_op(const FirstOrderOp& op, const Poly& f);

/// Commutator of two constant-leading operators; always a multiplication
/// operator (u.grad(h_B) - v.grad(h_A)). NonConstantLeading otherwise.
FirstOrderOp commutator_first_order(const FirstOrderOp& a, const FirstOrderOp& b);

struct CommutingCheck {
  bool commuting = true;
  int i = -1, j = -1;  // 0-based witness pair when not commuting
};
CommutingCheck is_commuting_family(const std::vector<FirstOrderOp>& ops);

/// Operator with constant coefficients, kept as its symbol L(u).
struct ConstCoeffOp {
  Poly symbol;  // pure-u

  int nvars() const { return symbol.nvars(); }
  const Field& field() const { return symbol.field(); }
};

ConstCoeffOp make_const_coeff_op(Poly symbol);  // validates pure-u

/// L(d/dz) f, treating u variables in f as scalars.
Poly apply_symbol(const ConstCoeffOp& op, const Poly& f);
/// L(d/dz)^m f by m successive applications.
Poly apply_lambda(const ConstCoeffOp& op, const Poly& f, unsigned m);
/// L(d/dz)^m f via the symbol power L^m applied once; must agree with
/// apply_lambda.
Poly apply_lambda_via_symbol_power(const ConstCoeffOp& op, const Poly& f, unsigned m);

/// Solves dq/dz_i = h_i for i = 1..k (k = h.size() <= nvars) by exact
/// termwise radial integration over z_1..z_k. The primitive is normalized to
/// vanish at z_1 = ... = z_k = 0. Throws NotIntegrable (with a 1-based
/// witness pair (i, j) such that d h_i/dz_j != d h_j/dz_i) and
/// PositiveCharacteristic.
Poly recover_potential(const std::vector<Poly>& h);

/// Outcome of reducing a commuting constant-leading family: in coordinates
/// w = coord_change^{-1} z the image is generated by d/dw_j - dq/dw_j
/// (j = 1..k) together with multiplication by the gens.
struct ReducedFamily {
  int k = 0;
  /// Invertible matrix B; polynomials move to the new coordinates via
  /// substitute_linear(., B) and leading vectors via B^{-1} v. The first k
  /// columns are a basis of the span of the input leading vectors.
  CoeffMatrix coord_change;
  Poly q;
  std::vector<Poly> gens;  // depend only on z_{k+1..n}
  /// mix[j] are the coefficients expressing reduced operator j as a linear
  /// combination of the input operators (after the coordinate change).
  std::vector<std::vector<Coeff>> mix;
};

/// Throws NonConstantLeading, NonCommuting, AllZeroOrder,
/// PositiveCharacteristic.
ReducedFamily reduce_family(const std::vector<FirstOrderOp>& ops);

Json op_to_json(const FirstOrderOp& op);
FirstOrderOp op_from_json(const Json& j);
Json const_coeff_op_to_json(const ConstCoeffOp& op);
ConstCoeffOp const_coeff_op_from_json(const Json& j);

}  // namespace imtheta
