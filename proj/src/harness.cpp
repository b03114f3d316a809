// Copyright 2026 The imtheta Authors
// SPDX-License-Identifier: Apache-2.0

#include "harness.hpp"

#include <chrono>
#include <random>

namespace imtheta {

namespace {

std::int64_t ms_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0)
      .count();
}

void require_pure_z(const Poly& p, const char* what) {
  if (!p.pure_z()) throw Error(Errc::non_z_pure, std::string(what) + " must be a pure-z polynomial");
}

}  // namespace

PolyMap make_poly_map(std::vector<Poly> components) {
  if (components.empty()) throw Error(Errc::invalid_argument, "empty polynomial map");
  for (const Poly& c : components) {
    require_same_context(c, components.front());
    require_pure_z(c, "map component");
  }
  if (static_cast<int>(components.size()) != components.front().nvars())
    throw Error(Errc::invalid_argument, "polynomial map must have one component per variable");
  return PolyMap{std::move(components)};
}

PolyMap identity_map(int nvars, const Field& f) {
  std::vector<Poly> comps;
  comps.reserve(static_cast<std::size_t>(nvars));
  for (int i = 1; i <= nvars; ++i) comps.push_back(Poly::variable(nvars, f, Block::z, i));
  return PolyMap{std::move(comps)};
}

PolyMap compose(const PolyMap& f, const PolyMap& g) {
  std::vector<Poly> comps;
  comps.reserve(f.components.size());
  for (const Poly& fi : f.components) comps.push_back(fi.substitute_z(g.components));
  return PolyMap{std::move(comps)};
}

PolyMatrix jacobian_matrix(const PolyMap& f) {
  const int n = f.nvars();
  PolyMatrix m;
  m.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    std::vector<Poly> row;
    row.reserve(static_cast<std::size_t>(n));
    for (int j = 1; j <= n; ++j)
      row.push_back(f.components[static_cast<std::size_t>(i)].derivative(Block::z, j));
    m.push_back(std::move(row));
  }
  return m;
}

Poly poly_matrix_det(const PolyMatrix& m) {
  const std::size_t n = m.size();
  const Poly& sample = m.front().front();
  if (n == 1) return m[0][0];
  // Cofactor expansion along the first row; n is small here.
  Poly det(sample.nvars(), sample.field());
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j].is_zero()) continue;
    PolyMatrix minor;
    minor.reserve(n - 1);
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Poly> row;
      row.reserve(n - 1);
      for (std::size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(m[i][c]);
      minor.push_back(std::move(row));
    }
    Poly term = m[0][j] * poly_matrix_det(minor);
    det = (j % 2 == 0) ? det + term : det - term;
  }
  return det;
}

Poly jacobian_det(const PolyMap& f) { return poly_matrix_det(jacobian_matrix(f)); }

PolyMatrix hessian_matrix(const Poly& p) {
  require_pure_z(p, "hessian input");
  const int n = p.nvars();
  PolyMatrix m;
  m.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    std::vector<Poly> row;
    row.reserve(static_cast<std::size_t>(n));
    const Poly di = p.derivative(Block::z, i);
    for (int j = 1; j <= n; ++j) row.push_back(di.derivative(Block::z, j));
    m.push_back(std::move(row));
  }
  return m;
}

namespace {

PolyMatrix poly_matrix_mul(const PolyMatrix& a, const PolyMatrix& b) {
  const std::size_t n = a.size();
  const Poly& sample = a.front().front();
  PolyMatrix r(n, std::vector<Poly>(n, Poly(sample.nvars(), sample.field())));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (b[k][j].is_zero()) continue;
        r[i][j] = r[i][j] + a[i][k] * b[k][j];
      }
    }
  return r;
}

bool poly_matrix_is_zero(const PolyMatrix& m) {
  for (const auto& row : m)
    for (const Poly& e : row)
      if (!e.is_zero()) return false;
  return true;
}

}  // namespace

bool is_nilpotent_matrix(const PolyMatrix& m) {
  // Cayley-Hamilton: exponent n suffices for an n x n matrix.
  PolyMatrix acc = m;
  for (std::size_t t = 1; t < m.size(); ++t) {
    if (poly_matrix_is_zero(acc)) return true;
    acc = poly_matrix_mul(acc, m);
  }
  return poly_matrix_is_zero(acc);
}

namespace {

std::optional<int> stable_threshold(const std::vector<bool>& conclusion) {
  // Least m0 with all entries true from m0 on; entries are 1-based powers.
  if (conclusion.empty() || !conclusion.back()) return std::nullopt;
  int m0 = static_cast<int>(conclusion.size());
  while (m0 >= 2 && conclusion[static_cast<std::size_t>(m0 - 2)]) --m0;
  return m0;
}

}  // namespace

VCReport vc_check(const ConstCoeffOp& lambda, const Poly& p, const Poly& q, int max_power) {
  require_pure_z(p, "P");
  require_pure_z(q, "Q");
  require_same_context(lambda.symbol, p);
  require_same_context(lambda.symbol, q);
  if (max_power < 1) throw Error(Errc::invalid_argument, "max power must be >= 1");

  VCReport r;
  r.max_power = max_power;
  for (int m = 1; m <= max_power; ++m) {
    const auto t0 = std::chrono::steady_clock::now();
    const Poly pm = p.pow(static_cast<unsigned>(m));
    const bool hyp = apply_lambda(lambda, pm, static_cast<unsigned>(m)).is_zero();
    const bool concl = apply_lambda(lambda, pm * q, static_cast<unsigned>(m)).is_zero();

    // Same facts through the membership oracle; the two routes must agree.
    const Poly symbol_m = lambda.symbol.pow(static_cast<unsigned>(m));
    if (member_theta(symbol_m * pm).is_member != hyp ||
        member_theta(symbol_m * pm * q).is_member != concl)
      throw Error(Errc::oracle_disagreement,
                  "operator power and membership routes disagree (internal bug)");

    r.hypothesis.push_back(hyp);
    r.conclusion.push_back(concl);
    r.timings_ms.push_back(ms_since(t0));
  }
  r.hypothesis_violated =
      std::find(r.hypothesis.begin(), r.hypothesis.end(), false) != r.hypothesis.end();
  r.threshold = stable_threshold(r.conclusion);
  return r;
}

namespace {

void for_each_exact_degree(int nvars, int total, const std::function<void(const MultiIndex&)>& visit) {
  for_each_exponent(nvars, total, [&](const MultiIndex& a) {
    if (total_degree(a) == total) visit(a);
  });
}

Poly derivative_power(Poly g, const MultiIndex& alpha) {
  for (int i = 1; i <= g.nvars(); ++i)
    for (std::int32_t t = 0; t < alpha[static_cast<std::size_t>(i - 1)]; ++t)
      g = g.derivative(Block::z, i);
  return g;
}

/// Component powers H_i^e cached up to the maximum needed exponent.
class MapPowers {
 public:
  MapPowers(const PolyMap& h, int max_exp) : h_(h) {
    pows_.resize(h.components.size());
    for (std::size_t i = 0; i < pows_.size(); ++i) {
      pows_[i].push_back(Poly::constant(h.nvars(), h.field(), h.field().one()));
      for (int e = 1; e <= max_exp; ++e) pows_[i].push_back(pows_[i].back() * h.components[i]);
    }
  }

  /// H^alpha = prod H_i^{alpha_i}.
  Poly power(const MultiIndex& alpha) const {
    Poly r = Poly::constant(h_.nvars(), h_.field(), h_.field().one());
    for (std::size_t i = 0; i < alpha.size(); ++i)
      if (alpha[i] > 0) r = r * pows_[i][static_cast<std::size_t>(alpha[i])];
    return r;
  }

 private:
  const PolyMap& h_;
  std::vector<std::vector<Poly>> pows_;
};

}  // namespace

std::vector<Poly> jc_power_sums(const PolyMap& h, int max_power) {
  const Field& f = h.field();
  if (f.characteristic() != 0)
    throw Error(Errc::positive_characteristic, "power sums need characteristic zero");
  if (max_power < 1) throw Error(Errc::invalid_argument, "max power must be >= 1");
  const int n = h.nvars();
  MapPowers powers(h, max_power);

  std::vector<Poly> sums;
  sums.reserve(static_cast<std::size_t>(max_power));
  for (int m = 1; m <= max_power; ++m) {
    Poly s(n, f);
    for_each_exact_degree(n, m, [&](const MultiIndex& alpha) {
      const Poly term = derivative_power(powers.power(alpha), alpha);
      if (term.is_zero()) return;
      s = s + term.scaled(f.inv(f.from_int(factorial(alpha))));
    });
    sums.push_back(std::move(s));
  }
  return sums;
}

namespace {

/// Common degree of the nonzero components; -1 for the zero map.
/// NotHomogeneous when components are inhomogeneous or degrees differ.
int homogeneous_degree(const PolyMap& h) {
  int d = -1;
  for (const Poly& c : h.components) {
    if (c.is_zero()) continue;
    int cd = -1;
    for (const auto& [k, v] : c.terms()) {
      const int td = total_degree(k.z);
      if (cd == -1) cd = td;
      if (td != cd) throw Error(Errc::not_homogeneous, "map component is not homogeneous");
    }
    if (d == -1) d = cd;
    if (cd != d) throw Error(Errc::not_homogeneous, "map components have different degrees");
  }
  return d;
}

}  // namespace

Poly ag_inverse(const PolyMap& h, const Poly& g, int trunc_degree) {
  const Field& f = h.field();
  if (f.characteristic() != 0)
    throw Error(Errc::positive_characteristic, "formal inversion needs characteristic zero");
  require_pure_z(g, "g");
  require_same_context(g, h.components.front());
  const int d = homogeneous_degree(h);
  if (d != -1 && d < 2)
    throw Error(Errc::not_homogeneous, "map must be homogeneous of degree >= 2 (or zero)");

  // F = z - H; the formula's operand carries the j(F) factor even though
  // unimodularity is checked up front.
  std::vector<Poly> f_comps;
  f_comps.reserve(h.components.size());
  for (int i = 1; i <= h.nvars(); ++i)
    f_comps.push_back(Poly::variable(h.nvars(), f, Block::z, i) -
                      h.components[static_cast<std::size_t>(i - 1)]);
  const PolyMap f_map{std::move(f_comps)};
  const Poly jf = jacobian_det(f_map);
  if (jf != Poly::constant(h.nvars(), f, f.one()))
    throw Error(Errc::not_unimodular, "jacobian of z - H is not identically 1");

  const int n = h.nvars();
  // The degree-m term has z-degree m(d-1) + deg g when nonzero, so the sum
  // below is finite for d >= 2 and the truncation is exact.
  const int max_m = (d >= 2) ? trunc_degree / (d - 1) : 0;
  MapPowers powers(h, max_m);

  Poly acc(n, f);
  for (int m = 0; m <= max_m; ++m) {
    for_each_exact_degree(n, m, [&](const MultiIndex& alpha) {
      const Poly term = derivative_power(powers.power(alpha) * jf * g, alpha);
      if (term.is_zero()) return;
      acc = acc + term.scaled(f.inv(f.from_int(factorial(alpha))));
    });
  }
  return acc.truncate_z(trunc_degree);
}

PolyMap ag_inverse_map(const PolyMap& h, int trunc_degree) {
  std::vector<Poly> comps;
  comps.reserve(h.components.size());
  for (int i = 1; i <= h.nvars(); ++i)
    comps.push_back(ag_inverse(h, Poly::variable(h.nvars(), h.field(), Block::z, i), trunc_degree));
  return PolyMap{std::move(comps)};
}

ICReport ic_instance_check(const Poly& f, const Poly& g, int max_power) {
  require_same_context(f, g);
  if (max_power < 1) throw Error(Errc::invalid_argument, "max power must be >= 1");
  ICReport r;
  r.max_power = max_power;
  for (int m = 1; m <= max_power; ++m) {
    const auto t0 = std::chrono::steady_clock::now();
    const Poly fm = f.pow(static_cast<unsigned>(m));
    r.hypothesis.push_back(member_theta(fm).is_member);
    r.conclusion.push_back(member_theta(fm * g).is_member);
    r.timings_ms.push_back(ms_since(t0));
  }
  r.hypothesis_violated =
      std::find(r.hypothesis.begin(), r.hypothesis.end(), false) != r.hypothesis.end();
  r.threshold = stable_threshold(r.conclusion);
  return r;
}

PolyMap random_triangular_map(int nvars, int degree, const Field& f, std::uint64_t seed) {
  if (nvars < 1 || degree < 2) throw Error(Errc::invalid_argument, "need nvars >= 1, degree >= 2");
  if (f.characteristic() != 0)
    throw Error(Errc::invalid_argument, "triangular instances are generated over characteristic zero");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coeff(-3, 3);

  std::vector<Poly> comps;
  comps.reserve(static_cast<std::size_t>(nvars));
  for (int i = 1; i <= nvars; ++i) {
    Poly hi(nvars, f);
    // Monomials of the exact degree in the later variables only.
    for_each_exact_degree(nvars - i, degree, [&](const MultiIndex& tail) {
      const int c = coeff(rng);
      if (c == 0) return;
      MultiIndex z(static_cast<std::size_t>(nvars), 0);
      for (int t = 0; t < nvars - i; ++t) z[static_cast<std::size_t>(i + t)] = tail[static_cast<std::size_t>(t)];
      hi.add_term(TermKey{std::move(z), MultiIndex(static_cast<std::size_t>(nvars), 0)},
                  f.from_int(Int(c)));
    });
    if (i == 1 && nvars > 1 && hi.is_zero()) {
      MultiIndex z(static_cast<std::size_t>(nvars), 0);
      z[1] = degree;
      hi.add_term(TermKey{std::move(z), MultiIndex(static_cast<std::size_t>(nvars), 0)}, f.one());
    }
    comps.push_back(std::move(hi));
  }
  return PolyMap{std::move(comps)};
}

Json map_to_json(const PolyMap& m) {
  Json j;
  Json comps = Json::array();
  for (const Poly& c : m.components) comps.push_back(to_json(c));
  j["components"] = std::move(comps);
  return j;
}

PolyMap map_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("components"))
    throw Error(Errc::invalid_argument, "map JSON needs components");
  std::vector<Poly> comps;
  for (const auto& c : j["components"]) comps.push_back(poly_from_json(c));
  return make_poly_map(std::move(comps));
}

Json poly_matrix_to_json(const PolyMatrix& m) {
  Json rows = Json::array();
  for (const auto& row : m) {
    Json r = Json::array();
    for (const Poly& e : row) r.push_back(to_json(e));
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string to_text(const FirstOrderOp& op) {
  const Field& f = op.field();
  std::string out;
  for (int i = 1; i <= op.nvars(); ++i) {
    const Poly& a = op.leading[static_cast<std::size_t>(i - 1)];
    if (a.is_zero()) continue;
    std::string piece;
    if (a.is_constant() && f.is_one(a.constant_value())) {
      piece = "d" + std::to_string(i);
    } else {
      std::string at = to_text(a);
      const bool composite = a.term_count() > 1 || at.find_first_of("+-", 1) != std::string::npos;
      piece = (composite ? "(" + at + ")" : at) + "*d" + std::to_string(i);
    }
    if (!out.empty() && piece[0] != '-') out += '+';
    out += piece;
  }
  if (!op.zero_order.is_zero()) {
    std::string ht = to_text(op.zero_order);
    if (!out.empty() && ht[0] != '-') out += '+';
    out += ht;
  }
  return out.empty() ? "0" : out;
}

namespace {

Json bool_array(const std::vector<bool>& v) {
  Json a = Json::array();
  for (bool b : v) a.push_back(b);
  return a;
}

Json int_array(const std::vector<std::int64_t>& v) {
  Json a = Json::array();
  for (auto x : v) a.push_back(x);
  return a;
}

Json threshold_json(const std::optional<int>& t) { return t ? Json(*t) : Json(nullptr); }

}  // namespace

Json vc_report_to_json(const VCReport& r, const ConstCoeffOp& lambda, const Poly& p, const Poly& q) {
  Json j;
  j["instance"] = Json{{"kind", "vanishing-check"},
                       {"nvars", p.nvars()},
                       {"field", p.field().to_string()},
                       {"lambda", to_text(lambda.symbol)},
                       {"P", to_text(p)},
                       {"Q", to_text(q)},
                       {"max_power", r.max_power}};
  j["hypothesis"] = bool_array(r.hypothesis);
  j["conclusion"] = bool_array(r.conclusion);
  j["hypothesis_violated"] = r.hypothesis_violated;
  j["threshold"] = threshold_json(r.threshold);
  j["timings_ms"] = int_array(r.timings_ms);
  return j;
}

Json ic_report_to_json(const ICReport& r, const Poly& f, const Poly& g) {
  Json j;
  j["instance"] = Json{{"kind", "image-check"},
                       {"nvars", f.nvars()},
                       {"field", f.field().to_string()},
                       {"f", to_text(f)},
                       {"g", to_text(g)},
                       {"max_power", r.max_power}};
  j["hypothesis"] = bool_array(r.hypothesis);
  j["conclusion"] = bool_array(r.conclusion);
  j["hypothesis_violated"] = r.hypothesis_violated;
  j["threshold"] = threshold_json(r.threshold);
  j["timings_ms"] = int_array(r.timings_ms);
  return j;
}

Json builtin_example(const std::string& id, std::uint64_t p, int max_power) {
  if (max_power < 1) throw Error(Errc::invalid_argument, "max power must be >= 1");
  if (id == "2.6") {
    // n = 1 over Q, operator z1*d1 - 1. It maps z1^j to (j-1) z1^j, so it
    // preserves the degree filtration and witnesses never need degree above
    // the target's; the bounded search below is conclusive.
    const Field f = Field::rational();
    const FirstOrderOp op =
        make_op({Poly::variable(1, f, Block::z, 1)}, Poly::from_int(1, f, -1));
    const Poly fpoly =
        Poly::from_int(1, f, 1) + Poly::variable(1, f, Block::z, 1).pow(2);
    const Poly t = Poly::variable(1, f, Block::z, 1);

    Json rows = Json::array();
    for (int m = 1; m <= max_power; ++m) {
      const Poly fm = fpoly.pow(static_cast<unsigned>(m));
      const Poly tfm = t * fm;
      const bool fm_in = member_bruteforce(fm, {op}, DegreeBounds{fm.deg_z(), 0}).has_value();
      const bool tfm_in = member_bruteforce(tfm, {op}, DegreeBounds{tfm.deg_z(), 0}).has_value();
      rows.push_back(Json{{"m", m}, {"fm_member", fm_in}, {"t_fm_member", tfm_in}});
    }
    Json j;
    j["id"] = "2.6";
    j["nvars"] = 1;
    j["field"] = "rational";
    j["operator"] = to_text(op);
    j["f"] = to_text(fpoly);
    j["g"] = to_text(t);
    j["rows"] = std::move(rows);
    return j;
  }
  if (id == "2.7") {
    // Derivative operator over F_p: 1 has the witness z1, while z1^{p-1}
    // has none (any preimage monomial z1^j maps to j z1^{j-1}, and j = p
    // vanishes mod p); degree 2p is a generous conclusive bound.
    const Field f = Field::fp(p);
    const FirstOrderOp op = make_op({Poly::from_int(1, f, 1)}, Poly(1, f));
    const Poly one = Poly::from_int(1, f, 1);
    const Poly xp1 = Poly::variable(1, f, Block::z, 1).pow(static_cast<unsigned>(p - 1));
    const int bound = static_cast<int>(2 * p);

    auto w1 = member_bruteforce(one, {op}, DegreeBounds{bound, 0});
    auto w2 = member_bruteforce(xp1, {op}, DegreeBounds{bound, 0});

    Json targets = Json::array();
    Json t1 = Json{{"target", to_text(one)}, {"member", w1.has_value()}};
    if (w1) t1["witness"] = to_text(w1->front());
    targets.push_back(std::move(t1));
    Json t2 = Json{{"target", to_text(xp1)}, {"member", w2.has_value()}};
    if (w2) t2["witness"] = to_text(w2->front());
    targets.push_back(std::move(t2));

    Json j;
    j["id"] = "2.7";
    j["nvars"] = 1;
    j["field"] = f.to_string();
    j["operator"] = to_text(op);
    j["targets"] = std::move(targets);
    return j;
  }
  throw Error(Errc::invalid_argument, "unknown example id '" + id + "' (expected 2.6 or 2.7)");
}

}  // namespace imtheta
