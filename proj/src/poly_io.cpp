// Copyright 2026 The imtheta Authors
// SPDX-License-Identifier: Apache-2.0

#include "poly_io.hpp"

namespace imtheta {

namespace {

std::string monomial_text(const MultiIndex& e, char letter, bool laurent) {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += '*';
    s += letter;
    s += std::to_string(i + 1);
    if (e[i] != 1) {
      s += '^';
      s += std::to_string(e[i]);
    }
    if (e[i] < 0 && !laurent) throw Error(Errc::internal, "negative exponent in polynomial");
  }
  return s;
}

bool needs_parens(const std::string& coeff_text) {
  for (std::size_t i = 1; i < coeff_text.size(); ++i)
    if (coeff_text[i] == '+' || coeff_text[i] == '-') return true;
  return false;
}

// Renders one term; `c` must not be folded-negative when `folded` is set.
std::string term_text(const Field& f, const Coeff& c, const std::string& mon) {
  if (mon.empty()) return f.to_text(c);
  if (f.is_one(c)) return mon;
  std::string cs = f.to_text(c);
  if (needs_parens(cs)) cs = "(" + cs + ")";
  return cs + "*" + mon;
}

template <typename TermsT, typename MonFn>
std::string render_terms(const Field& f, const TermsT& terms, MonFn&& mon_of) {
  if (terms.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [k, c] : terms) {
    if (first) {
      out += term_text(f, c, mon_of(k));
      first = false;
      continue;
    }
    if (f.is_displayed_negative(c)) {
      out += '-';
      out += term_text(f, f.abs_for_display(c), mon_of(k));
    } else {
      out += '+';
      out += term_text(f, c, mon_of(k));
    }
  }
  return out;
}

}  // namespace

std::string to_text(const Poly& p) {
  return render_terms(p.field(), p.terms(), [](const TermKey& k) {
    std::string m = monomial_text(k.z, 'z', false);
    std::string mu = monomial_text(k.u, 'u', false);
    if (m.empty()) return mu;
    if (mu.empty()) return m;
    return m + "*" + mu;
  });
}

std::string to_text(const LaurentPoly& p, char var_letter) {
  return render_terms(p.field(), p.terms(),
                      [&](const MultiIndex& k) { return monomial_text(k, var_letter, true); });
}

Json coeff_to_json(const Field& f, const Coeff& c) {
  switch (f.kind()) {
    case FieldKind::rational:
    case FieldKind::fp:
      return Json(f.to_text(c));
    case FieldKind::gaussian: {
      const GaussRat& g = c.gauss();
      auto rat_text = [](const Rat& r) {
        std::string s = numerator(r).str();
        if (denominator(r) != 1) s += "/" + denominator(r).str();
        return s;
      };
      return Json::array({rat_text(g.re), rat_text(g.im)});
    }
  }
  return Json("0");
}

namespace {

Rat rat_from_string(const std::string& s) {
  const auto slash = s.find('/');
  const std::string num = slash == std::string::npos ? s : s.substr(0, slash);
  if (num.empty() || num.find_first_not_of("-0123456789") != std::string::npos ||
      (num.size() > 1 && num.find('-', 1) != std::string::npos))
    throw Error(Errc::invalid_argument, "bad rational literal '" + s + "'");
  Int n(num);
  Int d(1);
  if (slash != std::string::npos) {
    const std::string den = s.substr(slash + 1);
    if (den.empty() || den.find_first_not_of("0123456789") != std::string::npos)
      throw Error(Errc::invalid_argument, "bad rational literal '" + s + "'");
    d = Int(den);
    if (d == 0) throw Error(Errc::zero_denominator, "zero denominator in '" + s + "'");
  }
  return Rat(n, d);
}

}  // namespace

Coeff coeff_from_json(const Field& f, const Json& j) {
  switch (f.kind()) {
    case FieldKind::rational: {
      if (!j.is_string()) throw Error(Errc::invalid_argument, "rational coeff must be a string");
      Rat r = rat_from_string(j.get<std::string>());
      return Coeff(std::move(r));
    }
    case FieldKind::gaussian: {
      if (!j.is_array() || j.size() != 2 || !j[0].is_string() || !j[1].is_string())
        throw Error(Errc::invalid_argument, "gaussian coeff must be [\"re\",\"im\"]");
      return Coeff(GaussRat{rat_from_string(j[0].get<std::string>()),
                            rat_from_string(j[1].get<std::string>())});
    }
    case FieldKind::fp: {
      if (!j.is_string()) throw Error(Errc::invalid_argument, "fp coeff must be a string");
      Rat r = rat_from_string(j.get<std::string>());
      return f.from_fraction(numerator(r), denominator(r));
    }
  }
  return f.zero();
}

namespace {

Json exps_to_json(const MultiIndex& e) {
  Json a = Json::array();
  for (auto v : e) a.push_back(v);
  return a;
}

MultiIndex exps_from_json(const Json& j, int nvars, bool allow_negative) {
  if (!j.is_array() || static_cast<int>(j.size()) != nvars)
    throw Error(Errc::invalid_argument, "exponent array must have nvars entries");
  MultiIndex e;
  e.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw Error(Errc::invalid_argument, "exponents must be integers");
    const auto x = v.get<std::int64_t>();
    if (!allow_negative && x < 0)
      throw Error(Errc::invalid_argument, "negative exponent in polynomial term");
    e.push_back(static_cast<std::int32_t>(x));
  }
  return e;
}

std::pair<int, Field> context_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("nvars") || !j.contains("field") || !j.contains("terms"))
    throw Error(Errc::invalid_argument, "polynomial JSON needs nvars, field, terms");
  if (!j["nvars"].is_number_integer())
    throw Error(Errc::invalid_argument, "nvars must be an integer");
  const int nvars = j["nvars"].get<int>();
  Field f = Field::from_string(j["field"].get<std::string>());
  return {nvars, f};
}

}  // namespace

Json to_json(const Poly& p) {
  Json j;
  j["nvars"] = p.nvars();
  j["field"] = p.field().to_string();
  Json terms = Json::array();
  for (const auto& [k, c] : p.terms()) {
    Json t;
    t["coeff"] = coeff_to_json(p.field(), c);
    t["zexp"] = exps_to_json(k.z);
    t["uexp"] = exps_to_json(k.u);
    terms.push_back(std::move(t));
  }
  j["terms"] = std::move(terms);
  return j;
}

Poly poly_from_json(const Json& j) {
  auto [nvars, f] = context_from_json(j);
  Poly p(nvars, f);
  for (const auto& t : j["terms"]) {
    if (!t.is_object() || !t.contains("coeff") || !t.contains("zexp"))
      throw Error(Errc::invalid_argument, "term needs coeff and zexp");
    MultiIndex z = exps_from_json(t["zexp"], nvars, false);
    MultiIndex u = t.contains("uexp") ? exps_from_json(t["uexp"], nvars, false)
                                      : MultiIndex(static_cast<std::size_t>(nvars), 0);
    p.add_term(TermKey{std::move(z), std::move(u)}, coeff_from_json(f, t["coeff"]));
  }
  return p;
}

Json to_json(const LaurentPoly& p) {
  Json j;
  j["nvars"] = p.nvars();
  j["field"] = p.field().to_string();
  Json terms = Json::array();
  for (const auto& [k, c] : p.terms()) {
    Json t;
    t["coeff"] = coeff_to_json(p.field(), c);
    t["zexp"] = exps_to_json(k);
    terms.push_back(std::move(t));
  }
  j["terms"] = std::move(terms);
  return j;
}

LaurentPoly laurent_from_json(const Json& j) {
  auto [nvars, f] = context_from_json(j);
  LaurentPoly p(nvars, f);
  for (const auto& t : j["terms"]) {
    if (!t.is_object() || !t.contains("coeff") || !t.contains("zexp"))
      throw Error(Errc::invalid_argument, "term needs coeff and zexp");
    p.add_term(exps_from_json(t["zexp"], nvars, true), coeff_from_json(f, t["coeff"]));
  }
  return p;
}

}  // namespace imtheta
