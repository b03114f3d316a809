// Copyright 2026 The imtheta Authors
// SPDX-License-Identifier: Apache-2.0

#include "imtheta.h"

#include <cstdlib>
#include <cstring>

#include "harness.hpp"
#include "parser.hpp"

using namespace imtheta;

struct imt_poly {
  Poly v;
};

struct imt_laurent {
  LaurentPoly v;
};

namespace {

thread_local std::string g_last_error;

imt_status map_errc(Errc c) {
  switch (c) {
    case Errc::ok: return IMT_OK;
    case Errc::mismatched_context: return IMT_E_MISMATCHED_CONTEXT;
    case Errc::index_out_of_range: return IMT_E_INDEX_OUT_OF_RANGE;
    case Errc::singular_matrix: return IMT_E_SINGULAR_MATRIX;
    case Errc::non_z_pure: return IMT_E_NON_Z_PURE;
    case Errc::non_constant_leading: return IMT_E_NON_CONSTANT_LEADING;
    case Errc::not_integrable: return IMT_E_NOT_INTEGRABLE;
    case Errc::positive_characteristic: return IMT_E_POSITIVE_CHARACTERISTIC;
    case Errc::non_commuting: return IMT_E_NON_COMMUTING;
    case Errc::all_zero_order: return IMT_E_ALL_ZERO_ORDER;
    case Errc::not_unimodular: return IMT_E_NOT_UNIMODULAR;
    case Errc::not_homogeneous: return IMT_E_NOT_HOMOGENEOUS;
    case Errc::oracle_disagreement: return IMT_E_ORACLE_DISAGREEMENT;
    case Errc::syntax_error: return IMT_E_SYNTAX;
    case Errc::imaginary_in_non_gaussian_field: return IMT_E_IMAGINARY_IN_NON_GAUSSIAN_FIELD;
    case Errc::zero_denominator: return IMT_E_ZERO_DENOMINATOR;
    case Errc::division_by_zero: return IMT_E_DIVISION_BY_ZERO;
    case Errc::not_prime: return IMT_E_NOT_PRIME;
    case Errc::invalid_argument: return IMT_E_INVALID_ARGUMENT;
    case Errc::internal: return IMT_E_INTERNAL;
  }
  return IMT_E_INTERNAL;
}

template <typename Fn>
imt_status guarded(Fn&& fn) noexcept {
  try {
    fn();
    return IMT_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return map_errc(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return IMT_E_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return IMT_E_INTERNAL;
  }
}

imt_status fail_invalid(const char* msg) {
  g_last_error = msg;
  return IMT_E_INVALID_ARGUMENT;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit_json(const Json& j, char** out) { *out = dup_string(j.dump()); }

Json parse_json_text(const char* text) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw Error(Errc::invalid_argument, "malformed JSON input");
  return j;
}

std::vector<FirstOrderOp> ops_from_json_text(const char* ops_json) {
  const Json j = parse_json_text(ops_json);
  if (!j.is_object() || !j.contains("ops") || !j["ops"].is_array() || j["ops"].empty())
    throw Error(Errc::invalid_argument, "expected {\"ops\": [...]} with at least one operator");
  std::vector<FirstOrderOp> ops;
  for (const auto& o : j["ops"]) ops.push_back(op_from_json(o));
  return ops;
}

Json poly_list_json(const std::vector<Poly>& ps) {
  Json a = Json::array();
  for (const Poly& p : ps) a.push_back(to_json(p));
  return a;
}

Json poly_list_text(const std::vector<Poly>& ps) {
  Json a = Json::array();
  for (const Poly& p : ps) a.push_back(to_text(p));
  return a;
}

}  // namespace

extern "C" {

const char* imt_version(void) { return "0.1.0"; }

const char* imt_last_error(void) { return g_last_error.c_str(); }

const char* imt_status_name(imt_status s) {
  switch (s) {
    case IMT_OK: return "Ok";
    case IMT_E_MISMATCHED_CONTEXT: return "MismatchedContext";
    case IMT_E_INDEX_OUT_OF_RANGE: return "IndexOutOfRange";
    case IMT_E_SINGULAR_MATRIX: return "SingularMatrix";
    case IMT_E_NON_Z_PURE: return "NonZPure";
    case IMT_E_NON_CONSTANT_LEADING: return "NonConstantLeading";
    case IMT_E_NOT_INTEGRABLE: return "NotIntegrable";
    case IMT_E_POSITIVE_CHARACTERISTIC: return "PositiveCharacteristic";
    case IMT_E_NON_COMMUTING: return "NonCommuting";
    case IMT_E_ALL_ZERO_ORDER: return "AllZeroOrder";
    case IMT_E_NOT_UNIMODULAR: return "NotUnimodular";
    case IMT_E_NOT_HOMOGENEOUS: return "NotHomogeneous";
    case IMT_E_ORACLE_DISAGREEMENT: return "OracleDisagreement";
    case IMT_E_SYNTAX: return "SyntaxError";
    case IMT_E_IMAGINARY_IN_NON_GAUSSIAN_FIELD: return "ImaginaryInNonGaussianField";
    case IMT_E_ZERO_DENOMINATOR: return "ZeroDenominator";
    case IMT_E_DIVISION_BY_ZERO: return "DivisionByZero";
    case IMT_E_NOT_PRIME: return "NotPrime";
    case IMT_E_INVALID_ARGUMENT: return "InvalidArgument";
    case IMT_E_INTERNAL: return "Internal";
  }
  return "Internal";
}

void imt_string_free(char* s) { std::free(s); }
void imt_poly_free(imt_poly* p) { delete p; }
void imt_laurent_free(imt_laurent* q) { delete q; }

imt_status imt_poly_parse(const char* expr, int nvars, const char* field, imt_poly** out) {
  if (!expr || !field || !out) return fail_invalid("null argument");
  return guarded([&] { *out = new imt_poly{parse_poly(expr, nvars, Field::from_string(field))}; });
}

imt_status imt_poly_from_json(const char* json, imt_poly** out) {
  if (!json || !out) return fail_invalid("null argument");
  return guarded([&] { *out = new imt_poly{poly_from_json(parse_json_text(json))}; });
}

imt_status imt_poly_to_json(const imt_poly* p, char** out) {
  if (!p || !out) return fail_invalid("null argument");
  return guarded([&] { emit_json(to_json(p->v), out); });
}

imt_status imt_poly_to_text(const imt_poly* p, char** out) {
  if (!p || !out) return fail_invalid("null argument");
  return guarded([&] { *out = dup_string(to_text(p->v)); });
}

imt_status imt_poly_clone(const imt_poly* p, imt_poly** out) {
  if (!p || !out) return fail_invalid("null argument");
  return guarded([&] { *out = new imt_poly{p->v}; });
}

imt_status imt_laurent_to_json(const imt_laurent* q, char** out) {
  if (!q || !out) return fail_invalid("null argument");
  return guarded([&] { emit_json(to_json(q->v), out); });
}

imt_status imt_laurent_to_text(const imt_laurent* q, char var_letter, char** out) {
  if (!q || !out) return fail_invalid("null argument");
  if (var_letter != 'z' && var_letter != 'u') return fail_invalid("var_letter must be 'z' or 'u'");
  return guarded([&] { *out = dup_string(to_text(q->v, var_letter)); });
}

imt_status imt_poly_equal(const imt_poly* a, const imt_poly* b, int* out) {
  if (!a || !b || !out) return fail_invalid("null argument");
  return guarded([&] { *out = (a->v == b->v) ? 1 : 0; });
}

imt_status imt_poly_is_zero(const imt_poly* p, int* out) {
  if (!p || !out) return fail_invalid("null argument");
  return guarded([&] { *out = p->v.is_zero() ? 1 : 0; });
}

imt_status imt_poly_nvars(const imt_poly* p, int* out) {
  if (!p || !out) return fail_invalid("null argument");
  return guarded([&] { *out = p->v.nvars(); });
}

imt_status imt_poly_deg_z(const imt_poly* p, int* out) {
  if (!p || !out) return fail_invalid("null argument");
  return guarded([&] { *out = p->v.deg_z(); });
}

imt_status imt_poly_deg_u(const imt_poly* p, int* out) {
  if (!p || !out) return fail_invalid("null argument");
  return guarded([&] { *out = p->v.deg_u(); });
}

imt_status imt_poly_add(const imt_poly* a, const imt_poly* b, imt_poly** out) {
  if (!a || !b || !out) return fail_invalid("null argument");
  return guarded([&] { *out = new imt_poly{a->v + b->v}; });
}

imt_status imt_poly_mul(const imt_poly* a, const imt_poly* b, imt_poly** out) {
  if (!a || !b || !out) return fail_invalid("null argument");
  return guarded([&] { *out = new imt_poly{a->v * b->v}; });
}

imt_status imt_poly_pow(const imt_poly* a, unsigned m, imt_poly** out) {
  if (!a || !out) return fail_invalid("null argument");
  return guarded([&] { *out = new imt_poly{a->v.pow(m)}; });
}

imt_status imt_poly_derivative(const imt_poly* p, char block, int index, imt_poly** out) {
  if (!p || !out) return fail_invalid("null argument");
  if (block != 'z' && block != 'u') return fail_invalid("block must be 'z' or 'u'");
  return guarded(
      [&] { *out = new imt_poly{p->v.derivative(block == 'z' ? Block::z : Block::u, index)}; });
}

imt_status imt_laurent_is_zero(const imt_laurent* q, int* out) {
  if (!q || !out) return fail_invalid("null argument");
  return guarded([&] { *out = q->v.is_zero() ? 1 : 0; });
}

imt_status imt_laurent_holomorphic_part(const imt_laurent* q, imt_poly** out) {
  if (!q || !out) return fail_invalid("null argument");
  return guarded([&] { *out = new imt_poly{q->v.holomorphic_part()}; });
}

imt_status imt_eval_e(const imt_poly* f, imt_poly** out) {
  if (!f || !out) return fail_invalid("null argument");
  return guarded([&] { *out = new imt_poly{eval_E(f->v)}; });
}

imt_status imt_eval_z(const imt_poly* f, imt_laurent** out) {
  if (!f || !out) return fail_invalid("null argument");
  return guarded([&] { *out = new imt_laurent{eval_Z(f->v)}; });
}

imt_status imt_laplace(const imt_poly* f, imt_laurent** out) {
  if (!f || !out) return fail_invalid("null argument");
  return guarded([&] { *out = new imt_laurent{laplace_transform(f->v)}; });
}

imt_status imt_taylor_json(const imt_poly* f, char** report_json) {
  if (!f || !report_json) return fail_invalid("null argument");
  return guarded([&] {
    const TaylorDecomposition d = twisted_taylor(f->v);
    if (d.reconstruct() != f->v)
      throw Error(Errc::internal, "taylor reconstruction mismatch (internal bug)");
    Json terms = Json::array();
    for (const auto& [alpha, a] : d.coefficients) {
      Json alpha_json = Json::array();
      for (auto e : alpha) alpha_json.push_back(e);
      terms.push_back(Json{{"alpha", std::move(alpha_json)}, {"a", to_json(a)}, {"a_text", to_text(a)}});
    }
    Json j;
    j["nvars"] = f->v.nvars();
    j["field"] = f->v.field().to_string();
    j["f_text"] = to_text(f->v);
    j["terms"] = std::move(terms);
    j["reconstruction_ok"] = true;
    emit_json(j, report_json);
  });
}

imt_status imt_member_json(const imt_poly* f, int want_witness, char** report_json) {
  if (!f || !report_json) return fail_invalid("null argument");
  return guarded([&] {
    const MembershipReport r = member_theta(f->v, want_witness != 0);
    Json j = membership_report_to_json(r);
    j["e_value_text"] = to_text(r.e_value);
    j["z_holomorphic_text"] = to_text(r.z_holomorphic);
    if (r.witness) j["witness_text"] = poly_list_text(*r.witness);
    emit_json(j, report_json);
  });
}

imt_status imt_member_bruteforce_json(const imt_poly* f, const char* ops_json, int deg_z, int deg_u,
                                      char** report_json) {
  if (!f || !report_json) return fail_invalid("null argument");
  return guarded([&] {
    std::vector<FirstOrderOp> ops = ops_json
                                        ? ops_from_json_text(ops_json)
                                        : theta_family(f->v.nvars(), f->v.field());
    DegreeBounds bounds = theta_witness_bounds(f->v);
    if (deg_z >= 0) bounds.deg_z = deg_z;
    if (deg_u >= 0) bounds.deg_u = deg_u;
    auto witness = member_bruteforce(f->v, ops, bounds);
    if (witness) {
      Poly sum(f->v.nvars(), f->v.field());
      for (std::size_t i = 0; i < ops.size(); ++i) sum = sum + apply_op(ops[i], (*witness)[i]);
      if (sum != f->v) throw Error(Errc::internal, "witness verification failed (internal bug)");
    }
    Json j;
    j["found"] = witness.has_value();
    j["bounds"] = Json{{"deg_z", bounds.deg_z}, {"deg_u", bounds.deg_u}};
    j["num_ops"] = ops.size();
    j["witness"] = witness ? poly_list_json(*witness) : Json(nullptr);
    j["witness_text"] = witness ? poly_list_text(*witness) : Json(nullptr);
    emit_json(j, report_json);
  });
}

imt_status imt_codim(const imt_poly* q, int degree, int64_t* out) {
  if (!q || !out) return fail_invalid("null argument");
  return guarded([&] { *out = codim_truncated(q->v, degree); });
}

imt_status imt_codim_sweep_json(const imt_poly* q, const int* degrees, size_t count,
                                char** report_json) {
  if (!q || !degrees || !report_json || count == 0) return fail_invalid("null or empty argument");
  return guarded([&] {
    const CodimSweep s = codim_sweep(q->v, std::vector<int>(degrees, degrees + count));
    Json sweep = Json::array();
    for (const auto& [d, c] : s.entries) sweep.push_back(Json{{"degree", d}, {"codim", c}});
    Json j;
    j["q"] = to_text(q->v);
    j["sweep"] = std::move(sweep);
    j["stabilized"] = s.stabilized;
    j["value"] = s.stabilized ? Json(s.value) : Json(nullptr);
    emit_json(j, report_json);
  });
}

imt_status imt_reduce_json(const char* ops_json, char** report_json) {
  if (!ops_json || !report_json) return fail_invalid("null argument");
  return guarded([&] {
    const std::vector<FirstOrderOp> ops = ops_from_json_text(ops_json);
    const ReducedFamily r = reduce_family(ops);
    const Field& f = ops.front().field();

    Json coord = Json::array();
    for (int i = 0; i < r.coord_change.rows(); ++i) {
      Json row = Json::array();
      for (int j = 0; j < r.coord_change.cols(); ++j) row.push_back(f.to_text(r.coord_change.at(i, j)));
      coord.push_back(std::move(row));
    }
    Json reduced_ops = Json::array();
    const std::vector<FirstOrderOp> grads = gradient_family(r.q);
    for (int jidx = 0; jidx < r.k; ++jidx)
      reduced_ops.push_back(to_text(grads[static_cast<std::size_t>(jidx)]));

    Json j;
    j["k"] = r.k;
    j["coord_change"] = std::move(coord);
    j["q"] = to_json(r.q);
    j["q_text"] = to_text(r.q);
    j["gens"] = poly_list_json(r.gens);
    j["gens_text"] = poly_list_text(r.gens);
    j["reduced_ops_text"] = std::move(reduced_ops);
    emit_json(j, report_json);
  });
}

imt_status imt_vc_check_json(const imt_poly* lambda, const imt_poly* p, const imt_poly* q,
                             int max_power, char** report_json) {
  if (!lambda || !p || !q || !report_json) return fail_invalid("null argument");
  return guarded([&] {
    const ConstCoeffOp op = make_const_coeff_op(lambda->v);
    const VCReport r = vc_check(op, p->v, q->v, max_power);
    emit_json(vc_report_to_json(r, op, p->v, q->v), report_json);
  });
}

imt_status imt_jc_power_sums_json(const char* map_json, int max_power, char** report_json) {
  if (!map_json || !report_json) return fail_invalid("null argument");
  return guarded([&] {
    const PolyMap h = map_from_json(parse_json_text(map_json));
    const std::vector<Poly> sums = jc_power_sums(h, max_power);

    std::vector<Poly> f_comps;
    for (int i = 1; i <= h.nvars(); ++i)
      f_comps.push_back(Poly::variable(h.nvars(), h.field(), Block::z, i) -
                        h.components[static_cast<std::size_t>(i - 1)]);
    const Poly jf = jacobian_det(PolyMap{std::move(f_comps)});
    const bool unimodular = jf == Poly::constant(h.nvars(), h.field(), h.field().one());

    bool all_zero = true;
    Json entries = Json::array();
    for (std::size_t i = 0; i < sums.size(); ++i) {
      all_zero = all_zero && sums[i].is_zero();
      entries.push_back(Json{{"m", i + 1},
                             {"sum", to_json(sums[i])},
                             {"sum_text", to_text(sums[i])},
                             {"zero", sums[i].is_zero()}});
    }
    Json j;
    j["instance"] = Json{{"kind", "jacobian-power-sums"},
                         {"nvars", h.nvars()},
                         {"field", h.field().to_string()},
                         {"H", poly_list_text(h.components)},
                         {"max_power", max_power}};
    j["sums"] = std::move(entries);
    j["all_zero"] = all_zero;
    j["jacobian_unimodular"] = unimodular;
    j["jacobian_text"] = to_text(jf);
    emit_json(j, report_json);
  });
}

imt_status imt_ag_inverse_json(const char* map_json, const imt_poly* g, int trunc_degree,
                               char** report_json) {
  if (!map_json || !report_json) return fail_invalid("null argument");
  return guarded([&] {
    const PolyMap h = map_from_json(parse_json_text(map_json));
    Json j;
    j["instance"] = Json{{"kind", "formal-inverse"},
                         {"nvars", h.nvars()},
                         {"field", h.field().to_string()},
                         {"H", poly_list_text(h.components)},
                         {"truncate", trunc_degree}};
    if (g) {
      const Poly result = ag_inverse(h, g->v, trunc_degree);
      j["g"] = to_text(g->v);
      j["result"] = to_json(result);
      j["result_text"] = to_text(result);
    } else {
      const PolyMap inv = ag_inverse_map(h, trunc_degree);
      std::vector<Poly> f_comps;
      for (int i = 1; i <= h.nvars(); ++i)
        f_comps.push_back(Poly::variable(h.nvars(), h.field(), Block::z, i) -
                          h.components[static_cast<std::size_t>(i - 1)]);
      const PolyMap f_map{std::move(f_comps)};
      const PolyMap round = compose(f_map, inv);
      bool ok = true;
      for (int i = 1; i <= h.nvars(); ++i)
        ok = ok && round.components[static_cast<std::size_t>(i - 1)].truncate_z(trunc_degree) ==
                       Poly::variable(h.nvars(), h.field(), Block::z, i);
      j["g"] = nullptr;
      j["result"] = poly_list_json(inv.components);
      j["result_text"] = poly_list_text(inv.components);
      j["roundtrip_ok"] = ok;
    }
    emit_json(j, report_json);
  });
}

imt_status imt_hessian_json(const imt_poly* p, char** report_json) {
  if (!p || !report_json) return fail_invalid("null argument");
  return guarded([&] {
    const PolyMatrix m = hessian_matrix(p->v);
    Json text_rows = Json::array();
    for (const auto& row : m) {
      Json r = Json::array();
      for (const Poly& e : row) r.push_back(to_text(e));
      text_rows.push_back(std::move(r));
    }
    Json j;
    j["P"] = to_text(p->v);
    j["matrix"] = poly_matrix_to_json(m);
    j["matrix_text"] = std::move(text_rows);
    j["nilpotent"] = is_nilpotent_matrix(m);
    emit_json(j, report_json);
  });
}

imt_status imt_ic_check_json(const imt_poly* f, const imt_poly* g, int max_power,
                             char** report_json) {
  if (!f || !g || !report_json) return fail_invalid("null argument");
  return guarded([&] {
    const ICReport r = ic_instance_check(f->v, g->v, max_power);
    emit_json(ic_report_to_json(r, f->v, g->v), report_json);
  });
}

imt_status imt_random_triangular_map_json(int nvars, int degree, const char* field, uint64_t seed,
                                          char** map_json) {
  if (!field || !map_json) return fail_invalid("null argument");
  return guarded([&] {
    const PolyMap m = random_triangular_map(nvars, degree, Field::from_string(field), seed);
    emit_json(map_to_json(m), map_json);
  });
}

imt_status imt_example_json(const char* id, uint64_t p, int max_power, char** report_json) {
  if (!id || !report_json) return fail_invalid("null argument");
  return guarded([&] { emit_json(builtin_example(id, p, max_power), report_json); });
}

}  // extern "C"
