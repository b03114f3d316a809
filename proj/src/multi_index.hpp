// Copyright 2026 The imtheta Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <functional>
#include <vector>

#include "error.hpp"

namespace imtheta {

using Int = boost::multiprecision::cpp_int;

/// Exponent vector. Entries are >= 0 in polynomial contexts; Laurent
/// exponents may be negative.
using MultiIndex = std::vector<std::int32_t>;

inline int total_degree(const MultiIndex& a) {
  int s = 0;
  for (auto e : a) s += e;
  return s;
}

inline bool all_nonnegative(const MultiIndex& a) {
  for (auto e : a)
    if (e < 0) return false;
  return true;
}

inline bool all_leq(const MultiIndex& a, std::int32_t bound) {
  for (auto e : a)
    if (e > bound) return false;
  return true;
}

/// Componentwise partial order a <= b.
inline bool leq(const MultiIndex& a, const MultiIndex& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

inline MultiIndex add(const MultiIndex& a, const MultiIndex& b) {
  MultiIndex r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline MultiIndex sub(const MultiIndex& a, const MultiIndex& b) {
  MultiIndex r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Int factorial(std::int32_t k) {
  Int r = 1;
  for (std::int32_t t = 2; t <= k; ++t) r *= t;
  return r;
}

/// alpha! = prod alpha_i!; defined only for nonnegative entries.
inline Int factorial(const MultiIndex& a) {
  Int r = 1;
  for (auto e : a) {
    if (e < 0) throw Error(Errc::invalid_argument, "factorial of negative multi-index");
    r *= factorial(e);
  }
  return r;
}

/// beta!/(beta-alpha)! as an exact integer, for alpha <= beta componentwise.
inline Int falling_factorial(const MultiIndex& beta, const MultiIndex& alpha) {
  Int r = 1;
  for (std::size_t i = 0; i < beta.size(); ++i)
    for (std::int32_t t = 0; t < alpha[i]; ++t) r *= (beta[i] - t);
  return r;
}

/// Graded term order used everywhere terms are iterated, printed, or
/// serialized: ascending total degree, ties broken lex-descending so that
/// same-degree terms come out z-major (z1^2, z1*z2, z2^2, ...).
inline bool graded_less(const MultiIndex& a, const MultiIndex& b) {
  int da = total_degree(a), db = total_degree(b);
  if (da != db) return da < db;
  return a > b;  // lexicographic, descending
}

struct GradedLess {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const { return graded_less(a, b); }
};

/// Visits every multi-index of length nvars with total degree <= max_total,
/// in no particular order.
inline void for_each_exponent(int nvars, int max_total,
                              const std::function<void(const MultiIndex&)>& visit) {
  MultiIndex cur(static_cast<std::size_t>(nvars), 0);
  std::function<void(int, int)> rec = [&](int pos, int remaining) {
    if (pos == nvars) {
      visit(cur);
      return;
    }
    for (int e = 0; e <= remaining; ++e) {
      cur[static_cast<std::size_t>(pos)] = e;
      rec(pos + 1, remaining - e);
    }
    cur[static_cast<std::size_t>(pos)] = 0;
  };
  if (max_total >= 0) rec(0, max_total);
}

}  // namespace imtheta
