// Copyright 2026 The imtheta Authors
// SPDX-License-Identifier: Apache-2.0

#include "image.hpp"

#include <algorithm>

namespace imtheta {

namespace {

void require_char_zero(const Field& f, const char* what) {
  if (f.characteristic() != 0)
    throw Error(Errc::positive_characteristic, std::string(what) + " needs characteristic zero");
}

}  // namespace

Poly eval_E(const Poly& f) {
  const Field& fld = f.field();
  Poly r(f.nvars(), fld);
  for (const auto& [k, c] : f.terms()) {
    if (!leq(k.u, k.z)) continue;
    r.add_term(TermKey{sub(k.z, k.u), MultiIndex(k.u.size(), 0)},
               fld.mul(c, fld.from_int(falling_factorial(k.z, k.u))));
  }
  return r;
}

LaurentPoly eval_Z(const Poly& f) {
  require_char_zero(f.field(), "the Laurent map");
  const Field& fld = f.field();
  LaurentPoly r(f.nvars(), fld);
  for (const auto& [k, c] : f.terms())
    r.add_term(sub(k.z, k.u), fld.mul(c, fld.from_int(factorial(k.z))));
  return r;
}

LaurentPoly laplace_transform(const Poly& f) {
  require_char_zero(f.field(), "the Laplace transform");
  const MultiIndex all_minus_one(static_cast<std::size_t>(f.nvars()), -1);
  return eval_Z(f).negated_exponents().shifted(all_minus_one);
}

LaurentPoly laplace_principal_part(const LaurentPoly& l) {
  return l.part_with_all_exponents_leq(-1);
}

Poly apply_theta_power(const Poly& g, const MultiIndex& alpha) {
  Poly r = g;
  for (int i = 1; i <= g.nvars(); ++i) {
    const Poly ui = Poly::variable(g.nvars(), g.field(), Block::u, i);
    for (std::int32_t t = 0; t < alpha[static_cast<std::size_t>(i - 1)]; ++t)
      r = ui * r - r.derivative(Block::z, i);
  }
  return r;
}

namespace {

// (d/du)^alpha f, computed termwise.
Poly du_power(const Poly& f, const MultiIndex& alpha) {
  const Field& fld = f.field();
  Poly r(f.nvars(), fld);
  for (const auto& [k, c] : f.terms()) {
    if (!leq(alpha, k.u)) continue;
    r.add_term(TermKey{k.z, sub(k.u, alpha)},
               fld.mul(c, fld.from_int(falling_factorial(k.u, alpha))));
  }
  return r;
}

}  // namespace

TaylorDecomposition twisted_taylor(const Poly& f) {
  require_char_zero(f.field(), "the twisted Taylor decomposition");
  const int n = f.nvars();
  TaylorDecomposition d{n, f.field(), {}};

  MultiIndex box(static_cast<std::size_t>(n), 0);
  for (const auto& [k, c] : f.terms())
    for (std::size_t i = 0; i < box.size(); ++i) box[i] = std::max(box[i], k.u[i]);

  MultiIndex alpha(static_cast<std::size_t>(n), 0);
  std::function<void(int)> walk = [&](int pos) {
    if (pos == n) {
      Poly a = eval_E(du_power(f, alpha));
      if (!a.is_zero()) d.coefficients.emplace(alpha, std::move(a));
      return;
    }
    for (std::int32_t e = 0; e <= box[static_cast<std::size_t>(pos)]; ++e) {
      alpha[static_cast<std::size_t>(pos)] = e;
      walk(pos + 1);
    }
    alpha[static_cast<std::size_t>(pos)] = 0;
  };
  walk(0);
  return d;
}

Poly TaylorDecomposition::order_zero() const {
  const MultiIndex zero(static_cast<std::size_t>(nvars), 0);
  auto it = coefficients.find(zero);
  return it == coefficients.end() ? Poly(nvars, field) : it->second;
}

Poly TaylorDecomposition::reconstruct() const {
  Poly r(nvars, field);
  for (const auto& [alpha, a] : coefficients) {
    const Coeff inv_fact = field.inv(field.from_int(factorial(alpha)));
    r = r + apply_theta_power(a, alpha).scaled(inv_fact);
  }
  return r;
}

std::vector<Poly> TaylorDecomposition::image_witness() const {
  if (!order_zero().is_zero())
    throw Error(Errc::invalid_argument, "no image witness: order-zero coefficient is nonzero");
  std::vector<Poly> w(static_cast<std::size_t>(nvars), Poly(nvars, field));
  for (const auto& [alpha, a] : coefficients) {
    if (total_degree(alpha) == 0) continue;
    int first = 0;
    while (alpha[static_cast<std::size_t>(first)] == 0) ++first;
    MultiIndex rest = alpha;
    rest[static_cast<std::size_t>(first)] -= 1;
    const Coeff inv_fact = field.inv(field.from_int(factorial(alpha)));
    w[static_cast<std::size_t>(first)] =
        w[static_cast<std::size_t>(first)] + apply_theta_power(a, rest).scaled(inv_fact);
  }
  return w;
}

MembershipReport member_theta(const Poly& f, bool want_witness) {
  require_char_zero(f.field(), "membership testing");
  MembershipReport r{false, eval_E(f), eval_Z(f).holomorphic_part(), std::nullopt};
  r.is_member = r.e_value.is_zero();
  if (r.is_member != r.z_holomorphic.is_zero())
    throw Error(Errc::oracle_disagreement,
                "evaluation-map and Laurent criteria disagree (internal bug)");
  if (r.is_member && want_witness) r.witness = twisted_taylor(f).image_witness();
  return r;
}

Json membership_report_to_json(const MembershipReport& r) {
  Json j;
  j["is_member"] = r.is_member;
  j["e_value"] = to_json(r.e_value);
  j["z_holomorphic"] = to_json(r.z_holomorphic);
  if (r.witness) {
    Json w = Json::array();
    for (const Poly& p : *r.witness) w.push_back(to_json(p));
    j["witness"] = std::move(w);
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

DegreeBounds theta_witness_bounds(const Poly& f) {
  const int dz = std::max(f.deg_z(), 0);
  const int du = std::max(f.deg_u(), 0);
  return DegreeBounds{dz + du, std::max(du - 1, 0)};
}

namespace {

std::vector<TermKey> monomial_box(int nvars, const DegreeBounds& bounds) {
  std::vector<TermKey> keys;
  for_each_exponent(nvars, bounds.deg_z, [&](const MultiIndex& z) {
    for_each_exponent(nvars, bounds.deg_u, [&](const MultiIndex& u) {
      keys.push_back(TermKey{z, u});
    });
  });
  return keys;
}

constexpr std::size_t kMaxSolveCells = std::size_t{64} * 1024 * 1024;

}  // namespace

std::optional<std::vector<Poly>> member_bruteforce(const Poly& f,
                                                   const std::vector<FirstOrderOp>& ops,
                                                   const DegreeBounds& bounds) {
  if (ops.empty()) throw Error(Errc::invalid_argument, "empty operator family");
  const Field& fld = f.field();
  const int n = f.nvars();
  for (const FirstOrderOp& op : ops) require_same_context(op.zero_order, f);
  if (bounds.deg_z < 0 || bounds.deg_u < 0)
    throw Error(Errc::invalid_argument, "degree bounds must be nonnegative");

  const std::vector<TermKey> basis = monomial_box(n, bounds);
  const std::size_t cols = basis.size() * ops.size();

  // One application per (operator, basis monomial); collect supports first.
  std::vector<Poly> images;
  images.reserve(cols);
  std::map<TermKey, int, TermKeyLess> row_of;
  auto row_index = [&](const TermKey& k) {
    auto [it, fresh] = row_of.try_emplace(k, static_cast<int>(row_of.size()));
    (void)fresh;
    return it->second;
  };
  for (const FirstOrderOp& op : ops)
    for (const TermKey& k : basis) {
      Poly img = apply_op(op, Poly::monomial(n, fld, k.z, k.u, fld.one()));
      for (const auto& [tk, tc] : img.terms()) row_index(tk);
      images.push_back(std::move(img));
    }
  for (const auto& [tk, tc] : f.terms()) row_index(tk);

  const std::size_t rows = row_of.size();
  if (rows * cols > kMaxSolveCells)
    throw Error(Errc::invalid_argument,
                "truncated linear system too large (" + std::to_string(rows) + " x " +
                    std::to_string(cols) + "); lower the degree bounds");

  // The images are very sparse (a handful of terms per column), so the
  // system is assembled and solved in sparse form. Columns are visited in
  // increasing order, which keeps each row sorted as it is built.
  SparseSystem sys{static_cast<int>(cols), fld, std::vector<SparseRow>(rows)};
  for (std::size_t col = 0; col < images.size(); ++col)
    for (const auto& [tk, tc] : images[col].terms())
      sys.rows[static_cast<std::size_t>(row_of.at(tk))].emplace_back(static_cast<int>(col), tc);
  for (const auto& [tk, tc] : f.terms())
    sys.rows[static_cast<std::size_t>(row_of.at(tk))].emplace_back(static_cast<int>(cols), tc);

  auto x = sparse_solve(std::move(sys));
  if (!x) return std::nullopt;

  std::vector<Poly> witness(ops.size(), Poly(n, fld));
  for (std::size_t col = 0; col < cols; ++col) {
    const Coeff& coef = (*x)[col];
    if (fld.is_zero(coef)) continue;
    const std::size_t op_idx = col / basis.size();
    const TermKey& k = basis[col % basis.size()];
    witness[op_idx].add_term(k, coef);
  }
  return witness;
}

std::int64_t codim_truncated(const Poly& q, int degree) {
  require_char_zero(q.field(), "codimension computation");
  if (!q.pure_z()) throw Error(Errc::non_z_pure, "potential must be a pure-z polynomial");
  const int n = q.nvars();
  const Field& fld = q.field();
  const std::vector<FirstOrderOp> family = gradient_family(q);

  const int dq = std::max(q.deg_z(), 0);
  const int input_degree = degree + 1 - dq;

  std::map<TermKey, int, TermKeyLess> row_of;
  std::vector<TermKey> out_monomials;
  for_each_exponent(n, degree, [&](const MultiIndex& z) {
    TermKey k{z, MultiIndex(static_cast<std::size_t>(n), 0)};
    row_of.emplace(k, static_cast<int>(out_monomials.size()));
    out_monomials.push_back(std::move(k));
  });

  std::vector<Poly> images;
  for (const FirstOrderOp& op : family) {
    for_each_exponent(n, input_degree, [&](const MultiIndex& z) {
      images.push_back(
          apply_op(op, Poly::monomial(n, fld, z, MultiIndex(static_cast<std::size_t>(n), 0), fld.one())));
    });
  }

  SparseSystem sys{static_cast<int>(images.size()), fld,
                   std::vector<SparseRow>(out_monomials.size())};
  for (std::size_t col = 0; col < images.size(); ++col) {
    for (const auto& [tk, tc] : images[col].terms()) {
      auto it = row_of.find(tk);
      if (it == row_of.end())
        throw Error(Errc::internal, "image term escaped the degree truncation");
      sys.rows[static_cast<std::size_t>(it->second)].emplace_back(static_cast<int>(col), tc);
    }
  }
  return static_cast<std::int64_t>(out_monomials.size()) - sparse_rank(std::move(sys));
}

CodimSweep codim_sweep(const Poly& q, const std::vector<int>& degrees) {
  CodimSweep s;
  for (int d : degrees) s.entries.emplace_back(d, codim_truncated(q, d));
  if (s.entries.size() >= 2) {
    const auto& last = s.entries[s.entries.size() - 1];
    const auto& prev = s.entries[s.entries.size() - 2];
    if (last.second == prev.second) {
      s.stabilized = true;
      s.value = last.second;
    }
  }
  return s;
}

}  // namespace imtheta
