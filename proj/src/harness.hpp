// Copyright 2026 The imtheta Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>

#include "image.hpp"

namespace imtheta {

/// Polynomial self-map of K^n: z -> (F_1(z), ..., F_n(z)), pure-z components.
struct PolyMap {
  std::vector<Poly> components;

  int nvars() const { return components.front().nvars(); }
  const Field& field() const { return components.front().field(); }
};

PolyMap make_poly_map(std::vector<Poly> components);
PolyMap identity_map(int nvars, const Field& f);
/// Componentwise F(G).
PolyMap compose(const PolyMap& f, const PolyMap& g);

using PolyMatrix = std::vector<std::vector<Poly>>;

PolyMatrix jacobian_matrix(const PolyMap& f);
Poly jacobian_det(const PolyMap& f);
Poly poly_matrix_det(const PolyMatrix& m);
PolyMatrix hessian_matrix(const Poly& p);
/// M^n == 0 as a polynomial matrix (n = dimension).
bool is_nilpotent_matrix(const PolyMatrix& m);

/// Power table for a constant-coefficient operator L and P, Q: for
/// m = 1..max_power, whether L^m(P^m) = 0 and L^m(P^m Q) = 0, each entry
/// cross-checked against membership of L(u)^m P^m (resp. times Q) in the
/// image of the u_i - d/dz_i family.
struct VCReport {
  int max_power = 0;
  std::vector<bool> hypothesis;
  std::vector<bool> conclusion;
  bool hypothesis_violated = false;
  /// Least m0 with conclusion true for all tested m >= m0.
  std::optional<int> threshold;
  std::vector<std::int64_t> timings_ms;
};
VCReport vc_check(const ConstCoeffOp& lambda, const Poly& p, const Poly& q, int max_power);

/// The degree-m terms sum_{|a|=m} (1/a!) (d/dz)^a (H^a) for m = 1..max_power;
/// for homogeneous H these all vanish iff j(z - H) == 1.
std::vector<Poly> jc_power_sums(const PolyMap& h, int max_power);

/// Truncated formal inverse data: evaluates
/// sum_m sum_{|a|=m} (1/a!) (d/dz)^a (H^a j(F) g) for F = z - H up to
/// z-degree trunc_degree. Requires H == 0 or homogeneous of degree >= 2
/// (NotHomogeneous) and j(F) == 1 (NotUnimodular). With g = z_i this yields
/// the components of the formal inverse of F.
Poly ag_inverse(const PolyMap& h, const Poly& g, int trunc_degree);
PolyMap ag_inverse_map(const PolyMap& h, int trunc_degree);

/// Membership power table for f, g in K[u, z].
struct ICReport {
  int max_power = 0;
  std::vector<bool> hypothesis;  // f^m member
  std::vector<bool> conclusion;  // f^m g member
  bool hypothesis_violated = false;
  std::optional<int> threshold;
  std::vector<std::int64_t> timings_ms;
};
ICReport ic_instance_check(const Poly& f, const Poly& g, int max_power);

/// Strictly triangular map (H_i depends only on z_{i+1..n}) with homogeneous
/// components of the given degree; such maps always have nilpotent Jacobian
/// matrix and j(z - H) == 1. Deterministic in the seed; the first component
/// is always nonzero when n > 1.
PolyMap random_triangular_map(int nvars, int degree, const Field& f, std::uint64_t seed);

Json map_to_json(const PolyMap& m);
PolyMap map_from_json(const Json& j);
Json poly_matrix_to_json(const PolyMatrix& m);
std::string to_text(const FirstOrderOp& op);

Json vc_report_to_json(const VCReport& r, const ConstCoeffOp& lambda, const Poly& p, const Poly& q);
Json ic_report_to_json(const ICReport& r, const Poly& f, const Poly& g);

/// Bundled counterexample instances, selected by id ("2.6" or "2.7"):
/// a one-variable degree-preserving operator whose image admits powers of
/// 1 + z1^2 but not their z1-multiples, and the derivative operator over
/// F_p. Both are decided by conclusively bounded brute force.
Json builtin_example(const std::string& id, std::uint64_t p, int max_power);

}  // namespace imtheta
