// Copyright 2026 The imtheta Authors
// SPDX-License-Identifier: Apache-2.0

#include "ops.hpp"

namespace imtheta {

bool FirstOrderOp::constant_leading() const {
  for (const Poly& a : leading)
    if (!a.is_constant()) return false;
  return true;
}

std::vector<Coeff> FirstOrderOp::leading_vector() const {
  if (!constant_leading())
    throw Error(Errc::non_constant_leading, "operator has non-constant leading coefficients");
  std::vector<Coeff> v;
  v.reserve(leading.size());
  for (const Poly& a : leading) v.push_back(a.constant_value());
  return v;
}

bool FirstOrderOp::leading_is_zero() const {
  for (const Poly& a : leading)
    if (!a.is_zero()) return false;
  return true;
}

FirstOrderOp make_op(std::vector<Poly> leading, Poly zero_order) {
  if (static_cast<int>(leading.size()) != zero_order.nvars())
    throw Error(Errc::invalid_argument, "need one leading coefficient per variable");
  for (const Poly& a : leading) require_same_context(a, zero_order);
  return FirstOrderOp{std::move(leading), std::move(zero_order)};
}

FirstOrderOp make_multiplication_op(const Poly& h) {
  std::vector<Poly> leading(static_cast<std::size_t>(h.nvars()), Poly(h.nvars(), h.field()));
  return FirstOrderOp{std::move(leading), h};
}

FirstOrderOp theta_op(int nvars, const Field& f, int i) {
  std::vector<Poly> leading(static_cast<std::size_t>(nvars), Poly(nvars, f));
  leading[static_cast<std::size_t>(i - 1)] = Poly::from_int(nvars, f, -1);
  return FirstOrderOp{std::move(leading), Poly::variable(nvars, f, Block::u, i)};
}

std::vector<FirstOrderOp> theta_family(int nvars, const Field& f) {
  std::vector<FirstOrderOp> ops;
  ops.reserve(static_cast<std::size_t>(nvars));
  for (int i = 1; i <= nvars; ++i) ops.push_back(theta_op(nvars, f, i));
  return ops;
}

std::vector<FirstOrderOp> gradient_family(const Poly& q) {
  const int n = q.nvars();
  const Field& f = q.field();
  std::vector<FirstOrderOp> ops;
  ops.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    std::vector<Poly> leading(static_cast<std::size_t>(n), Poly(n, f));
    leading[static_cast<std::size_t>(i - 1)] = Poly::constant(n, f, f.one());
    ops.push_back(FirstOrderOp{std::move(leading), -q.derivative(Block::z, i)});
  }
  return ops;
}

Poly apply_op(const FirstOrderOp& op, const Poly& f) {
  require_same_context(op.zero_order, f);
  Poly r = op.zero_order * f;
  for (int i = 1; i <= op.nvars(); ++i) {
    const Poly& a = op.leading[static_cast<std::size_t>(i - 1)];
    if (a.is_zero()) continue;
    r = r + a * f.derivative(Block::z, i);
  }
  return r;
}

FirstOrderOp commutator_first_order(const FirstOrderOp& a, const FirstOrderOp& b) {
  require_same_context(a.zero_order, b.zero_order);
  const std::vector<Coeff> u = a.leading_vector();
  const std::vector<Coeff> v = b.leading_vector();
  const int n = a.nvars();
  const Field& f = a.field();
  // [u.d + h_a, v.d + h_b] = u.grad(h_b) - v.grad(h_a), a multiplication op.
  Poly h(n, f);
  for (int i = 1; i <= n; ++i) {
    const std::size_t idx = static_cast<std::size_t>(i - 1);
    if (!f.is_zero(u[idx])) h = h + b.zero_order.derivative(Block::z, i).scaled(u[idx]);
    if (!f.is_zero(v[idx])) h = h - a.zero_order.derivative(Block::z, i).scaled(v[idx]);
  }
  return make_multiplication_op(h);
}

CommutingCheck is_commuting_family(const std::vector<FirstOrderOp>& ops) {
  for (const FirstOrderOp& op : ops) {
    if (!op.constant_leading())
      throw Error(Errc::non_constant_leading, "operator has non-constant leading coefficients");
  }
  for (std::size_t i = 0; i < ops.size(); ++i) {
    for (std::size_t j = i + 1; j < ops.size(); ++j) {
      if (!commutator_first_order(ops[i], ops[j]).zero_order.is_zero())
        return CommutingCheck{false, static_cast<int>(i), static_cast<int>(j)};
    }
  }
  return CommutingCheck{};
}

ConstCoeffOp make_const_coeff_op(Poly symbol) {
  if (!symbol.pure_u())
    throw Error(Errc::invalid_argument, "operator symbol must involve only u variables");
  return ConstCoeffOp{std::move(symbol)};
}

Poly apply_symbol(const ConstCoeffOp& op, const Poly& f) {
  require_same_context(op.symbol, f);
  const Field& fld = f.field();
  Poly r(f.nvars(), fld);
  for (const auto& [sk, sc] : op.symbol.terms()) {
    for (const auto& [fk, fc] : f.terms()) {
      if (!leq(sk.u, fk.z)) continue;
      const Coeff scale = fld.mul(sc, fld.mul(fc, fld.from_int(falling_factorial(fk.z, sk.u))));
      r.add_term(TermKey{sub(fk.z, sk.u), fk.u}, scale);
    }
  }
  return r;
}

Poly apply_lambda(const ConstCoeffOp& op, const Poly& f, unsigned m) {
  Poly r = f;
  for (unsigned t = 0; t < m; ++t) r = apply_symbol(op, r);
  return r;
}

Poly apply_lambda_via_symbol_power(const ConstCoeffOp& op, const Poly& f, unsigned m) {
  return apply_symbol(ConstCoeffOp{op.symbol.pow(m)}, f);
}

Poly recover_potential(const std::vector<Poly>& h) {
  if (h.empty()) throw Error(Errc::invalid_argument, "empty gradient list");
  const int n = h.front().nvars();
  const Field& f = h.front().field();
  const int k = static_cast<int>(h.size());
  if (k > n) throw Error(Errc::invalid_argument, "more gradient components than variables");
  for (const Poly& hi : h) require_same_context(hi, h.front());
  if (f.characteristic() != 0)
    throw Error(Errc::positive_characteristic, "potential recovery needs characteristic zero");

  for (int i = 1; i <= k; ++i)
    for (int j = i + 1; j <= k; ++j)
      if (h[static_cast<std::size_t>(i - 1)].derivative(Block::z, j) !=
          h[static_cast<std::size_t>(j - 1)].derivative(Block::z, i))
        throw Error::with_pair(Errc::not_integrable,
                               "dh" + std::to_string(i) + "/dz" + std::to_string(j) +
                                   " != dh" + std::to_string(j) + "/dz" + std::to_string(i),
                               i, j);

  // Radial homotopy over z_1..z_k: a monomial c z^b u^g of h_i contributes
  // c z_i z^b u^g / (1 + b_1 + ... + b_k).
  Poly q(n, f);
  for (int i = 0; i < k; ++i) {
    for (const auto& [key, c] : h[static_cast<std::size_t>(i)].terms()) {
      int s = 0;
      for (int j = 0; j < k; ++j) s += key.z[static_cast<std::size_t>(j)];
      TermKey nk = key;
      nk.z[static_cast<std::size_t>(i)] += 1;
      q.add_term(nk, f.div(c, f.from_int(Int(s + 1))));
    }
  }

  for (int i = 1; i <= k; ++i)
    if (q.derivative(Block::z, i) != h[static_cast<std::size_t>(i - 1)])
      throw Error(Errc::internal, "potential verification failed");
  return q;
}

namespace {

struct WorkRow {
  std::vector<Coeff> lead;
  Poly h;
  std::vector<Coeff> combo;
};

}  // namespace

ReducedFamily reduce_family(const std::vector<FirstOrderOp>& ops) {
  if (ops.empty()) throw Error(Errc::invalid_argument, "empty operator family");
  const int n = ops.front().nvars();
  const Field& f = ops.front().field();
  const std::size_t nn = static_cast<std::size_t>(n);

  std::vector<std::vector<Coeff>> leads;
  leads.reserve(ops.size());
  for (const FirstOrderOp& op : ops) {
    require_same_context(op.zero_order, ops.front().zero_order);
    leads.push_back(op.leading_vector());  // NonConstantLeading if violated
  }

  const CommutingCheck cc = is_commuting_family(ops);
  if (!cc.commuting)
    throw Error::with_pair(Errc::non_commuting,
                           "operators " + std::to_string(cc.i) + " and " + std::to_string(cc.j) +
                               " do not commute",
                           cc.i, cc.j);

  // Basis of the span U of the leading vectors: nonzero rows of an echelon
  // form.
  CoeffMatrix lm(static_cast<int>(ops.size()), n, f);
  for (std::size_t r = 0; r < ops.size(); ++r)
    for (int c = 0; c < n; ++c) lm.at(static_cast<int>(r), c) = leads[r][static_cast<std::size_t>(c)];
  const int k = eliminate(lm);
  if (k == 0)
    throw Error(Errc::all_zero_order,
                "family has no order-one operator; its image is the ideal generated by the "
                "zero-order parts");

  // coord_change B: columns 1..k are the U-basis, completed greedily by
  // standard basis vectors.
  CoeffMatrix b(n, n, f);
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < n; ++i) b.at(i, j) = lm.at(j, i);
  int filled = k;
  for (int cand = 0; cand < n && filled < n; ++cand) {
    CoeffMatrix probe(n, filled + 1, f);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < filled; ++j) probe.at(i, j) = b.at(i, j);
    probe.at(cand, filled) = f.one();
    if (rank(probe) == filled + 1) {
      b.at(cand, filled) = f.one();
      ++filled;
    }
  }
  auto m_inv = inverse(b);
  if (!m_inv) throw Error(Errc::internal, "coordinate change not invertible");
  const CoeffMatrix& m = *m_inv;

  // Transformed operators: leading v -> B^{-1} v, zero order h -> h(B z).
  std::vector<WorkRow> rows;
  rows.reserve(ops.size());
  for (std::size_t r = 0; r < ops.size(); ++r) {
    WorkRow row{std::vector<Coeff>(nn, f.zero()),
                ops[r].zero_order.is_zero() ? ops[r].zero_order
                                            : ops[r].zero_order.substitute_linear(b, Block::z),
                std::vector<Coeff>(ops.size(), f.zero())};
    for (int i = 0; i < n; ++i) {
      Coeff s = f.zero();
      for (int j = 0; j < n; ++j) s = f.add(s, f.mul(m.at(i, j), leads[r][static_cast<std::size_t>(j)]));
      row.lead[static_cast<std::size_t>(i)] = s;
    }
    row.combo[r] = f.one();
    rows.push_back(std::move(row));
  }

  // Gauss-Jordan on the leading part, carrying the zero-order polynomial and
  // the combination bookkeeping along. Pivots land in columns 1..k because
  // the transformed leading vectors span e_1..e_k.
  int pr = 0;
  for (int c = 0; c < n && pr < static_cast<int>(rows.size()); ++c) {
    int pivot = -1;
    for (int i = pr; i < static_cast<int>(rows.size()); ++i) {
      if (!f.is_zero(rows[static_cast<std::size_t>(i)].lead[static_cast<std::size_t>(c)])) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(rows[static_cast<std::size_t>(pr)], rows[static_cast<std::size_t>(pivot)]);
    WorkRow& prow = rows[static_cast<std::size_t>(pr)];
    const Coeff inv_piv = f.inv(prow.lead[static_cast<std::size_t>(c)]);
    for (Coeff& x : prow.lead) x = f.mul(x, inv_piv);
    for (Coeff& x : prow.combo) x = f.mul(x, inv_piv);
    prow.h = prow.h.scaled(inv_piv);
    for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
      if (i == pr) continue;
      WorkRow& row = rows[static_cast<std::size_t>(i)];
      const Coeff factor = row.lead[static_cast<std::size_t>(c)];
      if (f.is_zero(factor)) continue;
      for (std::size_t t = 0; t < row.lead.size(); ++t)
        row.lead[t] = f.sub(row.lead[t], f.mul(factor, prow.lead[t]));
      for (std::size_t t = 0; t < row.combo.size(); ++t)
        row.combo[t] = f.sub(row.combo[t], f.mul(factor, prow.combo[t]));
      row.h = row.h - prow.h.scaled(factor);
    }
    ++pr;
  }
  if (pr != k) throw Error(Errc::internal, "rank mismatch during reduction");

  // Pivot rows j = 1..k are d/dz_j + h_j; recover q with dq/dz_j = -h_j.
  std::vector<Poly> grads;
  grads.reserve(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) grads.push_back(-rows[static_cast<std::size_t>(j)].h);
  Poly q = recover_potential(grads);

  std::vector<Poly> gens;
  for (std::size_t i = static_cast<std::size_t>(k); i < rows.size(); ++i) {
    if (rows[i].h.is_zero()) continue;
    for (int j = 1; j <= k; ++j)
      if (!rows[i].h.derivative(Block::z, j).is_zero())
        throw Error(Errc::internal, "zero-order generator depends on a reduced variable");
    gens.push_back(rows[i].h);
  }

  std::vector<std::vector<Coeff>> mix;
  mix.reserve(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) mix.push_back(rows[static_cast<std::size_t>(j)].combo);

  return ReducedFamily{k, b, std::move(q), std::move(gens), std::move(mix)};
}

Json op_to_json(const FirstOrderOp& op) {
  Json j;
  Json lead = Json::array();
  for (const Poly& a : op.leading) lead.push_back(to_json(a));
  j["leading"] = std::move(lead);
  j["zero_order"] = to_json(op.zero_order);
  return j;
}

FirstOrderOp op_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("leading") || !j.contains("zero_order"))
    throw Error(Errc::invalid_argument, "operator JSON needs leading and zero_order");
  std::vector<Poly> leading;
  for (const auto& a : j["leading"]) leading.push_back(poly_from_json(a));
  return make_op(std::move(leading), poly_from_json(j["zero_order"]));
}

Json const_coeff_op_to_json(const ConstCoeffOp& op) {
  Json j;
  j["symbol"] = to_json(op.symbol);
  return j;
}

ConstCoeffOp const_coeff_op_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("symbol"))
    throw Error(Errc::invalid_argument, "operator JSON needs symbol");
  return make_const_coeff_op(poly_from_json(j["symbol"]));
}

}  // namespace imtheta
