// Copyright 2026 The imtheta Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <json.hpp>

#include <string>

#include "poly.hpp"

namespace imtheta {

using Json = nlohmann::ordered_json;

/// Canonical expression text. Round-trips through parse_poly: for every P,
/// parse(print(P)) == P. Variables are spelled z1..zn and u1..un.
std::string to_text(const Poly& p);

/// Display form for Laurent polynomials (negative exponents appear as e.g.
/// z1^-2). Not re-parseable; var_letter selects z or u naming.
std::string to_text(const LaurentPoly& p, char var_letter = 'z');

/// {"nvars": n, "field": "rational"|"gaussian"|"fp:<p>",
///  "terms": [{"coeff": "<int>[/<uint>]" | ["re","im"], "zexp": [...], "uexp": [...]}]}
Json to_json(const Poly& p);
Poly poly_from_json(const Json& j);

/// Same shape without "uexp"; negative zexp entries permitted.
Json to_json(const LaurentPoly& p);
LaurentPoly laurent_from_json(const Json& j);

Json coeff_to_json(const Field& f, const Coeff& c);
Coeff coeff_from_json(const Field& f, const Json& j);

}  // namespace imtheta
