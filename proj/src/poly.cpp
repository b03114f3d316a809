// Copyright 2026 The imtheta Authors
// SPDX-License-Identifier: Apache-2.0

#include "poly.hpp"

#include <algorithm>

namespace imtheta {

namespace {

void check_var_index(int nvars, int i) {
  if (i < 1 || i > nvars)
    throw Error(Errc::index_out_of_range,
                "variable index " + std::to_string(i) + " out of range 1.." + std::to_string(nvars));
}

}  // namespace

Poly::Poly(int nvars, const Field& field) : nvars_(nvars), field_(field) {
  if (nvars < 1) throw Error(Errc::invalid_argument, "nvars must be positive");
}

Poly Poly::constant(int nvars, const Field& f, const Coeff& c) {
  Poly p(nvars, f);
  p.add_term(TermKey{MultiIndex(static_cast<std::size_t>(nvars), 0),
                     MultiIndex(static_cast<std::size_t>(nvars), 0)},
             c);
  return p;
}

Poly Poly::from_int(int nvars, const Field& f, long v) { return constant(nvars, f, f.from_int(Int(v))); }

Poly Poly::variable(int nvars, const Field& f, Block b, int i) {
  check_var_index(nvars, i);
  MultiIndex z(static_cast<std::size_t>(nvars), 0), u(static_cast<std::size_t>(nvars), 0);
  (b == Block::z ? z : u)[static_cast<std::size_t>(i - 1)] = 1;
  return monomial(nvars, f, std::move(z), std::move(u), f.one());
}

Poly Poly::monomial(int nvars, const Field& f, MultiIndex zexp, MultiIndex uexp, const Coeff& c) {
  Poly p(nvars, f);
  if (static_cast<int>(zexp.size()) != nvars || static_cast<int>(uexp.size()) != nvars)
    throw Error(Errc::invalid_argument, "exponent length does not match nvars");
  if (!all_nonnegative(zexp) || !all_nonnegative(uexp))
    throw Error(Errc::invalid_argument, "polynomial exponents must be nonnegative");
  p.add_term(TermKey{std::move(zexp), std::move(uexp)}, c);
  return p;
}

int Poly::deg_z() const {
  int d = -1;
  for (const auto& [k, c] : terms_) d = std::max(d, total_degree(k.z));
  return d;
}

int Poly::deg_u() const {
  int d = -1;
  for (const auto& [k, c] : terms_) d = std::max(d, total_degree(k.u));
  return d;
}

bool Poly::pure_z() const {
  for (const auto& [k, c] : terms_)
    if (total_degree(k.u) != 0) return false;
  return true;
}

bool Poly::pure_u() const {
  for (const auto& [k, c] : terms_)
    if (total_degree(k.z) != 0) return false;
  return true;
}

bool Poly::is_constant() const {
  if (terms_.empty()) return true;
  return terms_.size() == 1 && total_degree(terms_.begin()->first.z) == 0 &&
         total_degree(terms_.begin()->first.u) == 0;
}

Coeff Poly::constant_value() const {
  return coefficient_of(MultiIndex(static_cast<std::size_t>(nvars_), 0),
                        MultiIndex(static_cast<std::size_t>(nvars_), 0));
}

Coeff Poly::coefficient_of(const MultiIndex& zexp, const MultiIndex& uexp) const {
  if (static_cast<int>(zexp.size()) != nvars_ || static_cast<int>(uexp.size()) != nvars_)
    throw Error(Errc::invalid_argument, "exponent length does not match nvars");
  auto it = terms_.find(TermKey{zexp, uexp});
  return it == terms_.end() ? field_.zero() : it->second;
}

void Poly::add_term(const TermKey& key, const Coeff& c) {
  if (field_.is_zero(c)) return;
  auto [it, inserted] = terms_.try_emplace(key, c);
  if (!inserted) {
    it->second = field_.add(it->second, c);
    if (field_.is_zero(it->second)) terms_.erase(it);
  }
}

void require_same_context(const Poly& a, const Poly& b) {
  if (a.nvars() != b.nvars() || a.field() != b.field())
    throw Error(Errc::mismatched_context, "operands have different nvars or coefficient field");
}

Poly operator+(const Poly& a, const Poly& b) {
  require_same_context(a, b);
  Poly r = a;
  for (const auto& [k, c] : b.terms_) r.add_term(k, c);
  return r;
}

Poly operator-(const Poly& a) {
  Poly r(a.nvars(), a.field());
  for (const auto& [k, c] : a.terms_) r.terms_.emplace(k, a.field().neg(c));
  return r;
}

Poly operator-(const Poly& a, const Poly& b) {
  require_same_context(a, b);
  Poly r = a;
  for (const auto& [k, c] : b.terms_) r.add_term(k, b.field().neg(c));
  return r;
}

Poly operator*(const Poly& a, const Poly& b) {
  require_same_context(a, b);
  const Field& f = a.field();
  Poly r(a.nvars(), f);
  for (const auto& [ka, ca] : a.terms_)
    for (const auto& [kb, cb] : b.terms_)
      r.add_term(TermKey{add(ka.z, kb.z), add(ka.u, kb.u)}, f.mul(ca, cb));
  return r;
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.nvars() != b.nvars() || a.field() != b.field()) return false;
  if (a.terms_.size() != b.terms_.size()) return false;
  auto ia = a.terms_.begin();
  auto ib = b.terms_.begin();
  for (; ia != a.terms_.end(); ++ia, ++ib) {
    if (!(ia->first == ib->first) || !a.field().equal(ia->second, ib->second)) return false;
  }
  return true;
}

Poly Poly::scaled(const Coeff& c) const {
  Poly r(nvars_, field_);
  if (field_.is_zero(c)) return r;
  for (const auto& [k, v] : terms_) r.terms_.emplace(k, field_.mul(v, c));
  return r;
}

Poly Poly::pow(unsigned m) const {
  Poly result = Poly::constant(nvars_, field_, field_.one());
  Poly base = *this;
  while (m) {
    if (m & 1u) result = result * base;
    m >>= 1u;
    if (m) base = base * base;
  }
  return result;
}

Poly Poly::derivative(Block b, int i) const {
  check_var_index(nvars_, i);
  const std::size_t idx = static_cast<std::size_t>(i - 1);
  Poly r(nvars_, field_);
  for (const auto& [k, c] : terms_) {
    const MultiIndex& e = (b == Block::z) ? k.z : k.u;
    if (e[idx] == 0) continue;
    TermKey nk = k;
    ((b == Block::z) ? nk.z : nk.u)[idx] -= 1;
    r.add_term(nk, field_.mul(c, field_.from_int(Int(e[idx]))));
  }
  return r;
}

Poly Poly::substitute_linear(const CoeffMatrix& m, Block b) const {
  if (m.rows() != nvars_ || m.cols() != nvars_ || m.field() != field_)
    throw Error(Errc::mismatched_context, "substitution matrix has wrong shape or field");
  if (field_.is_zero(determinant(m)))
    throw Error(Errc::singular_matrix, "substitution matrix is singular");

  // Linear forms L_i = sum_j M[i][j] v_j in the chosen block.
  std::vector<Poly> forms;
  forms.reserve(static_cast<std::size_t>(nvars_));
  for (int i = 0; i < nvars_; ++i) {
    Poly li(nvars_, field_);
    for (int j = 0; j < nvars_; ++j) {
      if (field_.is_zero(m.at(i, j))) continue;
      li = li + Poly::variable(nvars_, field_, b, j + 1).scaled(m.at(i, j));
    }
    forms.push_back(std::move(li));
  }

  Poly result(nvars_, field_);
  for (const auto& [k, c] : terms_) {
    const MultiIndex& e = (b == Block::z) ? k.z : k.u;
    TermKey rest = k;
    ((b == Block::z) ? rest.z : rest.u) = MultiIndex(static_cast<std::size_t>(nvars_), 0);
    Poly term = Poly::monomial(nvars_, field_, rest.z, rest.u, c);
    for (int i = 0; i < nvars_; ++i)
      for (std::int32_t t = 0; t < e[static_cast<std::size_t>(i)]; ++t)
        term = term * forms[static_cast<std::size_t>(i)];
    result = result + term;
  }
  return result;
}

Poly Poly::substitute_z(const std::vector<Poly>& subs) const {
  if (!pure_z()) throw Error(Errc::non_z_pure, "substitution source involves u variables");
  if (static_cast<int>(subs.size()) != nvars_)
    throw Error(Errc::invalid_argument, "expected one substituend per variable");
  for (const Poly& s : subs) require_same_context(*this, s);

  // Power cache per variable, grown on demand.
  std::vector<std::vector<Poly>> powers(static_cast<std::size_t>(nvars_));
  auto power = [&](int var, std::int32_t e) -> const Poly& {
    auto& cache = powers[static_cast<std::size_t>(var)];
    if (cache.empty()) cache.push_back(Poly::constant(nvars_, field_, field_.one()));
    while (static_cast<std::int32_t>(cache.size()) <= e)
      cache.push_back(cache.back() * subs[static_cast<std::size_t>(var)]);
    return cache[static_cast<std::size_t>(e)];
  };

  Poly result(nvars_, field_);
  for (const auto& [k, c] : terms_) {
    Poly term = Poly::constant(nvars_, field_, c);
    for (int i = 0; i < nvars_; ++i) {
      const std::int32_t e = k.z[static_cast<std::size_t>(i)];
      if (e > 0) term = term * power(i, e);
    }
    result = result + term;
  }
  return result;
}

Poly Poly::truncate_z(int d) const {
  Poly r(nvars_, field_);
  for (const auto& [k, c] : terms_)
    if (total_degree(k.z) <= d) r.terms_.emplace(k, c);
  return r;
}

Poly mul_truncated_z(const Poly& a, const Poly& b, int d) {
  require_same_context(a, b);
  const Field& f = a.field();
  Poly r(a.nvars(), f);
  for (const auto& [ka, ca] : a.terms()) {
    const int da = total_degree(ka.z);
    if (da > d) continue;
    for (const auto& [kb, cb] : b.terms()) {
      if (da + total_degree(kb.z) > d) continue;
      r.add_term(TermKey{add(ka.z, kb.z), add(ka.u, kb.u)}, f.mul(ca, cb));
    }
  }
  return r;
}

LaurentPoly::LaurentPoly(int nvars, const Field& field) : nvars_(nvars), field_(field) {
  if (nvars < 1) throw Error(Errc::invalid_argument, "nvars must be positive");
}

LaurentPoly LaurentPoly::monomial(int nvars, const Field& f, MultiIndex zexp, const Coeff& c) {
  LaurentPoly p(nvars, f);
  if (static_cast<int>(zexp.size()) != nvars)
    throw Error(Errc::invalid_argument, "exponent length does not match nvars");
  p.add_term(zexp, c);
  return p;
}

LaurentPoly LaurentPoly::from_poly_z(const Poly& p) {
  if (!p.pure_z()) throw Error(Errc::non_z_pure, "expected a pure-z polynomial");
  LaurentPoly r(p.nvars(), p.field());
  for (const auto& [k, c] : p.terms()) r.add_term(k.z, c);
  return r;
}

void LaurentPoly::add_term(const MultiIndex& key, const Coeff& c) {
  if (field_.is_zero(c)) return;
  auto [it, inserted] = terms_.try_emplace(key, c);
  if (!inserted) {
    it->second = field_.add(it->second, c);
    if (field_.is_zero(it->second)) terms_.erase(it);
  }
}

Coeff LaurentPoly::coefficient_of(const MultiIndex& zexp) const {
  auto it = terms_.find(zexp);
  return it == terms_.end() ? field_.zero() : it->second;
}

Poly LaurentPoly::holomorphic_part() const {
  Poly r(nvars_, field_);
  for (const auto& [k, c] : terms_)
    if (all_nonnegative(k))
      r.add_term(TermKey{k, MultiIndex(static_cast<std::size_t>(nvars_), 0)}, c);
  return r;
}

LaurentPoly LaurentPoly::part_with_all_exponents_leq(int bound) const {
  LaurentPoly r(nvars_, field_);
  for (const auto& [k, c] : terms_)
    if (all_leq(k, bound)) r.terms_.emplace(k, c);
  return r;
}

LaurentPoly LaurentPoly::negated_exponents() const {
  LaurentPoly r(nvars_, field_);
  for (const auto& [k, c] : terms_) {
    MultiIndex nk(k.size());
    for (std::size_t i = 0; i < k.size(); ++i) nk[i] = -k[i];
    r.terms_.emplace(std::move(nk), c);
  }
  return r;
}

LaurentPoly LaurentPoly::shifted(const MultiIndex& delta) const {
  LaurentPoly r(nvars_, field_);
  for (const auto& [k, c] : terms_) r.terms_.emplace(add(k, delta), c);
  return r;
}

LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.nvars() != b.nvars() || a.field() != b.field())
    throw Error(Errc::mismatched_context, "operands have different nvars or coefficient field");
  LaurentPoly r = a;
  for (const auto& [k, c] : b.terms_) r.add_term(k, c);
  return r;
}

bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.nvars() != b.nvars() || a.field() != b.field()) return false;
  if (a.terms_.size() != b.terms_.size()) return false;
  auto ia = a.terms_.begin();
  auto ib = b.terms_.begin();
  for (; ia != a.terms_.end(); ++ia, ++ib)
    if (ia->first != ib->first || !a.field().equal(ia->second, ib->second)) return false;
  return true;
}

}  // namespace imtheta
