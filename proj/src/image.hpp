// Copyright 2026 The imtheta Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>

#include "ops.hpp"

namespace imtheta {

/// The evaluation map: linear over monomials, u^a z^b -> (d/dz)^a z^b,
/// i.e. b!/(b-a)! z^{b-a} when a <= b and 0 otherwise. Works in any
/// characteristic. The result is pure-z.
Poly eval_E(const Poly& f);

/// The Laurent map: u^a z^b -> b! z^{b-a} (exponents may go negative).
/// Characteristic zero only.
LaurentPoly eval_Z(const Poly& f);

/// Symbolic Laplace transform, computed through the closed form
/// L(f)(u) = u^{[-1]} * Z(f)(u^{-1}): a Laurent polynomial whose variables
/// are the u's. Characteristic zero only.
LaurentPoly laplace_transform(const Poly& f);

/// Terms of a Laurent value with every exponent <= -1; the transform of f
/// has zero such part exactly when f is a member.
LaurentPoly laplace_principal_part(const LaurentPoly& l);

/// Decomposition f = sum_a (1/a!) T^a c_a where T_i = u_i - d/dz_i and
/// c_a = eval_E((d/du)^a f); the c_a are pure-z and finitely many.
struct TaylorDecomposition {
  int nvars;
  Field field;
  std::map<MultiIndex, Poly, GradedLess> coefficients;

  /// The a = 0 coefficient (equals eval_E of the source).
  Poly order_zero() const;
  /// Rebuilds the source polynomial exactly.
  Poly reconstruct() const;
  /// Witness u_1..u_n with source = sum_i T_i(u_i); only defined when the
  /// order-zero coefficient vanishes.
  std::vector<Poly> image_witness() const;
};

TaylorDecomposition twisted_taylor(const Poly& f);  // characteristic zero

/// (u_i - d/dz_i)^a applied to g, multi-index power.
Poly apply_theta_power(const Poly& g, const MultiIndex& alpha);

struct MembershipReport {
  bool is_member = false;
  Poly e_value;        // eval_E(f)
  Poly z_holomorphic;  // holomorphic part of eval_Z(f)
  std::optional<std::vector<Poly>> witness;
};

/// Decides membership in the image of the u_i - d/dz_i family by running
/// both the evaluation-map and the Laurent criteria; they must agree
/// (OracleDisagreement otherwise, which indicates an internal bug). When
/// `want_witness` is set and f is a member, an explicit decomposition is
/// produced from the twisted Taylor data. Characteristic zero only.
MembershipReport member_theta(const Poly& f, bool want_witness = false);

Json membership_report_to_json(const MembershipReport& r);

/// Degree bounds that make brute-force search conclusive for the
/// u_i - d/dz_i family: a member always has a witness with
/// deg_u <= deg_u(f) - 1 and deg_z <= deg_z(f) (the Taylor witness), so
/// searching D_u = max(deg_u f - 1, 0), D_z = deg_z f + deg_u f is enough.
struct DegreeBounds {
  int deg_z = 0;
  int deg_u = 0;
};
DegreeBounds theta_witness_bounds(const Poly& f);

/// Exact truncated solve of f = sum_i op_i(w_i) with unknowns w_i ranging
/// over the monomial box deg_z <= bounds.deg_z, deg_u <= bounds.deg_u.
/// Returns the witness list or nullopt when no witness exists within the
/// bounds (which certifies non-membership only if the bounds are adequate
/// for the family at hand). Works over any field and any first-order
/// operators, including non-constant leading coefficients.
std::optional<std::vector<Poly>> member_bruteforce(const Poly& f,
                                                   const std::vector<FirstOrderOp>& ops,
                                                   const DegreeBounds& bounds);

/// Dimension of K[z]_{<=D} modulo the degree-D truncation of the image of
/// the family d/dz_i - dq/dz_i (inputs of degree <= D + 1 - deg q, whose
/// images all land within degree D). Characteristic zero; q pure-z.
std::int64_t codim_truncated(const Poly& q, int degree);

struct CodimSweep {
  std::vector<std::pair<int, std::int64_t>> entries;
  bool stabilized = false;           // last two sweep values agree
  std::int64_t value = -1;           // stabilized value when stabilized
};
CodimSweep codim_sweep(const Poly& q, const std::vector<int>& degrees);

}  // namespace imtheta
