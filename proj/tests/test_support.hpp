// Copyright 2026 The imtheta Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <random>
#include <string>

#include "harness.hpp"
#include "parser.hpp"

namespace imtheta::testing {

inline Poly P(const std::string& src, int nvars, const Field& f = Field::rational()) {
  return parse_poly(src, nvars, f);
}

inline Coeff random_coeff(std::mt19937_64& rng, const Field& f, bool allow_fractions = false) {
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 4);
  auto nonzero_num = [&] {
    int v = 0;
    while (v == 0) v = num(rng);
    return v;
  };
  switch (f.kind()) {
    case FieldKind::rational:
      return f.from_fraction(Int(nonzero_num()), Int(allow_fractions ? den(rng) : 1));
    case FieldKind::gaussian: {
      int re = num(rng), im = num(rng);
      if (re == 0 && im == 0) re = 1;
      const Int d(allow_fractions ? den(rng) : 1);
      return Coeff(GaussRat{Rat(Int(re), d), Rat(Int(im), d)});
    }
    case FieldKind::fp: {
      std::uniform_int_distribution<std::uint64_t> res(1, f.modulus() - 1);
      return Coeff(res(rng));
    }
  }
  return f.one();
}

inline MultiIndex random_exponents(std::mt19937_64& rng, int nvars, int max_total) {
  MultiIndex e(static_cast<std::size_t>(nvars), 0);
  if (max_total <= 0) return e;
  std::uniform_int_distribution<int> total(0, max_total);
  std::uniform_int_distribution<int> var(0, nvars - 1);
  const int t = total(rng);
  for (int i = 0; i < t; ++i) e[static_cast<std::size_t>(var(rng))] += 1;
  return e;
}

inline Poly random_poly(std::mt19937_64& rng, int nvars, const Field& f, int max_deg_z,
                        int max_deg_u, int max_terms, bool allow_fractions = false) {
  std::uniform_int_distribution<int> nterms(1, max_terms);
  Poly p(nvars, f);
  const int t = nterms(rng);
  for (int i = 0; i < t; ++i)
    p.add_term(TermKey{random_exponents(rng, nvars, max_deg_z), random_exponents(rng, nvars, max_deg_u)},
               random_coeff(rng, f, allow_fractions));
  return p;
}

inline Poly random_nonzero_poly(std::mt19937_64& rng, int nvars, const Field& f, int max_deg_z,
                                int max_deg_u, int max_terms, bool allow_fractions = false) {
  while (true) {
    Poly p = random_poly(rng, nvars, f, max_deg_z, max_deg_u, max_terms, allow_fractions);
    if (!p.is_zero()) return p;
  }
}

inline CoeffMatrix random_invertible(std::mt19937_64& rng, int n, const Field& f) {
  std::uniform_int_distribution<int> entry(-3, 3);
  while (true) {
    CoeffMatrix m(n, n, f);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m.at(i, j) = f.from_int(Int(entry(rng)));
    if (!f.is_zero(determinant(m))) return m;
  }
}

/// No stored zero coefficients and exponent lengths consistent — the
/// canonical-form invariant.
inline bool canonical(const Poly& p) {
  for (const auto& [k, c] : p.terms()) {
    if (p.field().is_zero(c)) return false;
    if (static_cast<int>(k.z.size()) != p.nvars() || static_cast<int>(k.u.size()) != p.nvars())
      return false;
    if (!all_nonnegative(k.z) || !all_nonnegative(k.u)) return false;
  }
  return true;
}

}  // namespace imtheta::testing
