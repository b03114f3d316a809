/* Copyright 2026 The imtheta Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the imtheta computer-algebra core: exact sparse polynomial
 * arithmetic over Q, Q(i) and F_p, the evaluation and Laurent maps, image
 * membership tests, operator-family reduction, and the conjecture harnesses.
 *
 * Conventions: every function returns imt_status (IMT_OK on success) and
 * writes results through out-parameters. On failure, imt_last_error() gives
 * a thread-local message. Strings returned through char** are heap-allocated
 * and must be released with imt_string_free(); handles with the matching
 * *_free(). Structured reports are UTF-8 JSON documents.
 */

#ifndef IMTHETA_H
#define IMTHETA_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum imt_status {
  IMT_OK = 0,
  IMT_E_MISMATCHED_CONTEXT,
  IMT_E_INDEX_OUT_OF_RANGE,
  IMT_E_SINGULAR_MATRIX,
  IMT_E_NON_Z_PURE,
  IMT_E_NON_CONSTANT_LEADING,
  IMT_E_NOT_INTEGRABLE,
  IMT_E_POSITIVE_CHARACTERISTIC,
  IMT_E_NON_COMMUTING,
  IMT_E_ALL_ZERO_ORDER,
  IMT_E_NOT_UNIMODULAR,
  IMT_E_NOT_HOMOGENEOUS,
  IMT_E_ORACLE_DISAGREEMENT,
  IMT_E_SYNTAX,
  IMT_E_IMAGINARY_IN_NON_GAUSSIAN_FIELD,
  IMT_E_ZERO_DENOMINATOR,
  IMT_E_DIVISION_BY_ZERO,
  IMT_E_NOT_PRIME,
  IMT_E_INVALID_ARGUMENT,
  IMT_E_INTERNAL
} imt_status;

/* Polynomial in K[u1..un, z1..zn] (opaque). */
typedef struct imt_poly imt_poly;
/* Laurent polynomial with integer exponents of either sign (opaque). */
typedef struct imt_laurent imt_laurent;

const char* imt_version(void);
/* Thread-local message describing the most recent failure in this thread. */
const char* imt_last_error(void);
/* Stable PascalCase name of a status code (e.g. "SyntaxError"). */
const char* imt_status_name(imt_status s);

void imt_string_free(char* s);
void imt_poly_free(imt_poly* p);
void imt_laurent_free(imt_laurent* q);

/* --- construction and serialization ------------------------------------ */

/* Grammar: expr := term (('+'|'-') term)*; term := factor ('*' factor)*;
 * factor := base ('^' UINT)?; base := RAT | 'i' | VAR | '(' expr ')';
 * VAR := ('z'|'u') UINT; RAT := '-'? UINT ('/' UINT)?. Whitespace is
 * insignificant; implicit multiplication is not allowed.
 * field is "rational", "gaussian", or "fp:<p>". */
imt_status imt_poly_parse(const char* expr, int nvars, const char* field, imt_poly** out);
imt_status imt_poly_from_json(const char* json, imt_poly** out);
imt_status imt_poly_to_json(const imt_poly* p, char** out);
imt_status imt_poly_to_text(const imt_poly* p, char** out);
imt_status imt_poly_clone(const imt_poly* p, imt_poly** out);
imt_status imt_laurent_to_json(const imt_laurent* q, char** out);
/* var_letter 'z' or 'u' selects the display variable names. */
imt_status imt_laurent_to_text(const imt_laurent* q, char var_letter, char** out);

/* --- queries and arithmetic -------------------------------------------- */

imt_status imt_poly_equal(const imt_poly* a, const imt_poly* b, int* out);
imt_status imt_poly_is_zero(const imt_poly* p, int* out);
imt_status imt_poly_nvars(const imt_poly* p, int* out);
imt_status imt_poly_deg_z(const imt_poly* p, int* out);
imt_status imt_poly_deg_u(const imt_poly* p, int* out);
imt_status imt_poly_add(const imt_poly* a, const imt_poly* b, imt_poly** out);
imt_status imt_poly_mul(const imt_poly* a, const imt_poly* b, imt_poly** out);
imt_status imt_poly_pow(const imt_poly* a, unsigned m, imt_poly** out);
/* block is 'z' or 'u'; index is 1-based. */
imt_status imt_poly_derivative(const imt_poly* p, char block, int index, imt_poly** out);
imt_status imt_laurent_is_zero(const imt_laurent* q, int* out);
imt_status imt_laurent_holomorphic_part(const imt_laurent* q, imt_poly** out);

/* --- the maps and membership ------------------------------------------- */

/* Linear map u^a z^b -> b!/(b-a)! z^{b-a} (zero unless a <= b). */
imt_status imt_eval_e(const imt_poly* f, imt_poly** out);
/* Linear map u^a z^b -> b! z^{b-a}; characteristic zero only. */
imt_status imt_eval_z(const imt_poly* f, imt_laurent** out);
/* Symbolic Laplace transform; the result is a Laurent value in the u's. */
imt_status imt_laplace(const imt_poly* f, imt_laurent** out);
/* Decomposition report: {"terms":[{"alpha":[...],"a":<poly>,"a_text":s}]}. */
imt_status imt_taylor_json(const imt_poly* f, char** report_json);
/* Membership in the image of the family u_i - d/dz_i; report fields
 * is_member, e_value, z_holomorphic, witness. */
imt_status imt_member_json(const imt_poly* f, int want_witness, char** report_json);
/* Truncated brute-force witness search against an arbitrary first-order
 * family ({"ops":[{"leading":[<poly>..],"zero_order":<poly>}..]}; NULL means
 * the u_i - d/dz_i family). Negative bounds select the documented defaults
 * deg_u = max(deg_u f - 1, 0), deg_z = deg_z f + deg_u f. */
imt_status imt_member_bruteforce_json(const imt_poly* f, const char* ops_json, int deg_z, int deg_u,
                                      char** report_json);
/* Codimension of the truncated image of d/dz_i - dq/dz_i at one degree. */
imt_status imt_codim(const imt_poly* q, int degree, int64_t* out);
imt_status imt_codim_sweep_json(const imt_poly* q, const int* degrees, size_t count,
                                char** report_json);

/* --- operator families --------------------------------------------------- */

/* Reduction of a commuting constant-leading family to gradient form plus
 * multiplication generators. */
imt_status imt_reduce_json(const char* ops_json, char** report_json);

/* --- conjecture harnesses ------------------------------------------------ */

/* lambda is the operator symbol, a pure-u polynomial. */
imt_status imt_vc_check_json(const imt_poly* lambda, const imt_poly* p, const imt_poly* q,
                             int max_power, char** report_json);
/* map_json: {"components":[<poly>...]}. */
imt_status imt_jc_power_sums_json(const char* map_json, int max_power, char** report_json);
/* g == NULL inverts the identity map (componentwise formal inverse). */
imt_status imt_ag_inverse_json(const char* map_json, const imt_poly* g, int trunc_degree,
                               char** report_json);
imt_status imt_hessian_json(const imt_poly* p, char** report_json);
imt_status imt_ic_check_json(const imt_poly* f, const imt_poly* g, int max_power,
                             char** report_json);
imt_status imt_random_triangular_map_json(int nvars, int degree, const char* field, uint64_t seed,
                                          char** map_json);
/* Bundled counterexample instances; id is "2.6" or "2.7". */
imt_status imt_example_json(const char* id, uint64_t p, int max_power, char** report_json);

#ifdef __cplusplus
}
#endif

#endif /* IMTHETA_H */
