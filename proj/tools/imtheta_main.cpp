// Copyright 2026 The imtheta Authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end. Everything goes through the C API in imtheta.h;
// reports come back as JSON strings and are rendered here for text mode.

#include <imtheta.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using Json = nlohmann::json;

struct DomainError {
  imt_status status;
  std::string message;
};

struct UsageError {
  std::string message;
};

void check(imt_status st) {
  if (st != IMT_OK) throw DomainError{st, imt_last_error()};
}

struct PolyHandle {
  imt_poly* p = nullptr;
  PolyHandle() = default;
  explicit PolyHandle(imt_poly* q) : p(q) {}
  PolyHandle(const PolyHandle&) = delete;
  PolyHandle& operator=(const PolyHandle&) = delete;
  PolyHandle(PolyHandle&& o) noexcept : p(o.p) { o.p = nullptr; }
  ~PolyHandle() { imt_poly_free(p); }
};

struct LaurentHandle {
  imt_laurent* q = nullptr;
  ~LaurentHandle() { imt_laurent_free(q); }
};

struct StringHandle {
  char* s = nullptr;
  ~StringHandle() { imt_string_free(s); }
  std::string str() const { return s ? std::string(s) : std::string(); }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError{IMT_E_INVALID_ARGUMENT, "cannot read file '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool looks_like_json(const std::string& text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '{';
  }
  return false;
}

struct Common {
  int nvars = 1;
  std::string field = "rational";
  std::string poly;
  std::string file;
  std::string format = "text";
};

void add_context_flags(CLI::App* sub, Common& c) {
  sub->add_option("--nvars", c.nvars, "number of variables n (z1..zn, u1..un)")
      ->default_val(1);
  sub->add_option("--field", c.field, "coefficient field: rational|gaussian|fp:<p>")
      ->default_val("rational");
  sub->add_option("--format", c.format, "output format: text|json")
      ->default_val("text")
      ->check(CLI::IsMember({"text", "json"}));
}

void add_poly_flags(CLI::App* sub, Common& c) {
  add_context_flags(sub, c);
  sub->add_option("--poly", c.poly, "polynomial expression, e.g. \"u1^2*z1^4\"");
  sub->add_option("--file", c.file, "read the polynomial from a file (expression or JSON)");
}

PolyHandle parse_poly_text(const std::string& text, const Common& c) {
  imt_poly* p = nullptr;
  if (looks_like_json(text)) {
    check(imt_poly_from_json(text.c_str(), &p));
  } else {
    check(imt_poly_parse(text.c_str(), c.nvars, c.field.c_str(), &p));
  }
  return PolyHandle(p);
}

PolyHandle load_poly(const Common& c, const char* what = "--poly or --file") {
  if (!c.poly.empty() && !c.file.empty()) throw UsageError{"give either --poly or --file, not both"};
  if (c.poly.empty() && c.file.empty()) throw UsageError{std::string(what) + " is required"};
  return parse_poly_text(c.poly.empty() ? read_file(c.file) : c.poly, c);
}

PolyHandle parse_expr(const std::string& expr, const Common& c) {
  imt_poly* p = nullptr;
  check(imt_poly_parse(expr.c_str(), c.nvars, c.field.c_str(), &p));
  return PolyHandle(p);
}

std::string poly_out(const imt_poly* p, const Common& c) {
  StringHandle s;
  if (c.format == "json")
    check(imt_poly_to_json(p, &s.s));
  else
    check(imt_poly_to_text(p, &s.s));
  return s.str();
}

std::string laurent_out(const imt_laurent* q, const Common& c, char letter) {
  StringHandle s;
  if (c.format == "json")
    check(imt_laurent_to_json(q, &s.s));
  else
    check(imt_laurent_to_text(q, letter, &s.s));
  return s.str();
}

const char* yn(bool b) { return b ? "yes" : "no"; }

std::string alpha_text(const Json& alpha) {
  std::string s;
  for (const auto& e : alpha) {
    if (!s.empty()) s += ',';
    s += std::to_string(e.get<long>());
  }
  return s;
}

// --- text renderers for the JSON reports ---------------------------------

void render_taylor(const Json& r) {
  std::cout << "f = " << r["f_text"].get<std::string>() << "\n";
  for (const auto& t : r["terms"])
    std::cout << "a[" << alpha_text(t["alpha"]) << "] = " << t["a_text"].get<std::string>() << "\n";
}

void render_member(const Json& r) {
  std::cout << "member: " << yn(r["is_member"].get<bool>()) << "\n";
  std::cout << "E(f) = " << r["e_value_text"].get<std::string>() << "\n";
  std::cout << "holomorphic part of Z(f) = " << r["z_holomorphic_text"].get<std::string>() << "\n";
  if (r.contains("witness_text") && r["witness_text"].is_array()) {
    std::cout << "witness:\n";
    int i = 1;
    for (const auto& w : r["witness_text"])
      std::cout << "  w" << i++ << " = " << w.get<std::string>() << "\n";
  }
}

void render_member_bf(const Json& r) {
  std::cout << "witness found: " << yn(r["found"].get<bool>()) << " (bounds deg_z="
            << r["bounds"]["deg_z"].get<int>() << ", deg_u=" << r["bounds"]["deg_u"].get<int>()
            << ")\n";
  if (r["witness_text"].is_array()) {
    int i = 1;
    for (const auto& w : r["witness_text"])
      std::cout << "  w" << i++ << " = " << w.get<std::string>() << "\n";
  }
}

void render_power_table(const Json& r, const char* hyp_label, const char* concl_label) {
  const auto& hyp = r["hypothesis"];
  const auto& concl = r["conclusion"];
  for (std::size_t i = 0; i < hyp.size(); ++i)
    std::cout << "m=" << i + 1 << ": " << hyp_label << ": " << yn(hyp[i].get<bool>()) << " | "
              << concl_label << ": " << yn(concl[i].get<bool>()) << "\n";
  if (r["hypothesis_violated"].get<bool>()) std::cout << "hypothesis violated\n";
  if (r["threshold"].is_null())
    std::cout << "conclusion does not stabilize within the tested powers\n";
  else
    std::cout << "conclusion holds from m = " << r["threshold"].get<int>() << " on\n";
}

void render_vc(const Json& r) {
  const auto& inst = r["instance"];
  std::cout << "vanishing check: lambda = " << inst["lambda"].get<std::string>()
            << ", P = " << inst["P"].get<std::string>() << ", Q = " << inst["Q"].get<std::string>()
            << ", max power " << inst["max_power"].get<int>() << "\n";
  render_power_table(r, "lambda^m(P^m) = 0", "lambda^m(P^m*Q) = 0");
}

void render_ic(const Json& r) {
  const auto& inst = r["instance"];
  std::cout << "image check: f = " << inst["f"].get<std::string>()
            << ", g = " << inst["g"].get<std::string>() << ", max power "
            << inst["max_power"].get<int>() << "\n";
  render_power_table(r, "f^m member", "f^m*g member");
}

void render_jc_sums(const Json& r) {
  const auto& inst = r["instance"];
  std::cout << "jacobian power sums: nvars=" << inst["nvars"].get<int>() << ", H = (";
  bool first = true;
  for (const auto& h : inst["H"]) {
    if (!first) std::cout << ", ";
    std::cout << h.get<std::string>();
    first = false;
  }
  std::cout << ")\n";
  std::cout << "j(z-H) = " << r["jacobian_text"].get<std::string>()
            << " (unimodular: " << yn(r["jacobian_unimodular"].get<bool>()) << ")\n";
  for (const auto& s : r["sums"])
    std::cout << "m=" << s["m"].get<int>() << ": sum = " << s["sum_text"].get<std::string>()
              << " (zero: " << yn(s["zero"].get<bool>()) << ")\n";
  std::cout << "all sums zero: " << yn(r["all_zero"].get<bool>()) << "\n";
}

void render_jc_invert(const Json& r) {
  const auto& inst = r["instance"];
  std::cout << "formal inverse: nvars=" << inst["nvars"].get<int>() << ", truncated to degree "
            << inst["truncate"].get<int>() << "\n";
  if (r["g"].is_null()) {
    int i = 1;
    for (const auto& gi : r["result_text"])
      std::cout << "G" << i++ << " = " << gi.get<std::string>() << "\n";
    std::cout << "roundtrip F(G) = z up to degree " << inst["truncate"].get<int>() << ": "
              << (r["roundtrip_ok"].get<bool>() ? "ok" : "FAILED") << "\n";
  } else {
    std::cout << "g = " << r["g"].get<std::string>() << "\n";
    std::cout << "g(G) = " << r["result_text"].get<std::string>() << "\n";
  }
}

void render_hessian(const Json& r) {
  std::cout << "P = " << r["P"].get<std::string>() << "\n";
  std::cout << "hessian:\n";
  for (const auto& row : r["matrix_text"]) {
    std::cout << "  [";
    bool first = true;
    for (const auto& e : row) {
      if (!first) std::cout << ", ";
      std::cout << e.get<std::string>();
      first = false;
    }
    std::cout << "]\n";
  }
  std::cout << "nilpotent: " << yn(r["nilpotent"].get<bool>()) << "\n";
}

void render_codim(const Json& r) {
  std::cout << "codim sweep for q = " << r["q"].get<std::string>() << ":\n";
  for (const auto& e : r["sweep"])
    std::cout << "D=" << e["degree"].get<int>() << ": codim " << e["codim"].get<long>() << "\n";
  if (r["stabilized"].get<bool>())
    std::cout << "stabilized: yes (value " << r["value"].get<long>() << ")\n";
  else
    std::cout << "stabilized: no (inconclusive / likely infinite)\n";
}

void render_reduce(const Json& r) {
  std::cout << "reduced family: k = " << r["k"].get<int>() << "\n";
  std::cout << "coord change (columns are the new basis):\n";
  for (const auto& row : r["coord_change"]) {
    std::cout << "  [";
    bool first = true;
    for (const auto& e : row) {
      if (!first) std::cout << ", ";
      std::cout << e.get<std::string>();
      first = false;
    }
    std::cout << "]\n";
  }
  std::cout << "q = " << r["q_text"].get<std::string>() << "\n";
  std::cout << "reduced operators:\n";
  for (const auto& op : r["reduced_ops_text"]) std::cout << "  " << op.get<std::string>() << "\n";
  if (!r["gens_text"].empty()) {
    std::cout << "gens:\n";
    for (const auto& g : r["gens_text"]) std::cout << "  " << g.get<std::string>() << "\n";
  }
}

void render_example(const Json& r) {
  std::cout << "example " << r["id"].get<std::string>() << " (nvars=" << r["nvars"].get<int>()
            << ", field=" << r["field"].get<std::string>() << ")\n";
  std::cout << "operator: " << r["operator"].get<std::string>() << "\n";
  if (r.contains("f")) std::cout << "f = " << r["f"].get<std::string>() << "\n";
  if (r.contains("rows")) {
    for (const auto& row : r["rows"])
      std::cout << "m=" << row["m"].get<int>() << ": f^m member: " << yn(row["fm_member"].get<bool>())
                << " | " << r["g"].get<std::string>()
                << "*f^m member: " << yn(row["t_fm_member"].get<bool>()) << "\n";
  }
  if (r.contains("targets")) {
    for (const auto& t : r["targets"]) {
      std::cout << "target " << t["target"].get<std::string>()
                << ": member: " << yn(t["member"].get<bool>());
      if (t.contains("witness")) std::cout << " (witness " << t["witness"].get<std::string>() << ")";
      std::cout << "\n";
    }
  }
}

void emit_report(const std::string& json_text, const Common& c, void (*render)(const Json&)) {
  if (c.format == "json") {
    std::cout << json_text << "\n";
    return;
  }
  render(Json::parse(json_text));
}

// --- map input shared by jc-sums / jc-invert ------------------------------

struct MapInput {
  std::vector<std::string> h_exprs;
  std::string file;
  bool random = false;
  std::uint64_t seed = 1;
  int degree = 3;
};

void add_map_flags(CLI::App* sub, MapInput& m) {
  sub->add_option("--component", m.h_exprs, "map component expression (repeat once per component)");
  sub->add_option("--map-file", m.file, "JSON file {\"components\": [<poly>...]}");
  sub->add_flag("--random", m.random, "generate a strictly triangular homogeneous instance");
  sub->add_option("--seed", m.seed, "seed for --random")->default_val(1);
  sub->add_option("--degree", m.degree, "component degree for --random")->default_val(3);
}

std::string map_json_text(const MapInput& m, const Common& c) {
  const int sources = (!m.h_exprs.empty() ? 1 : 0) + (!m.file.empty() ? 1 : 0) + (m.random ? 1 : 0);
  if (sources != 1) throw UsageError{"give exactly one of --component ..., --map-file, --random"};
  if (m.random) {
    StringHandle s;
    check(imt_random_triangular_map_json(c.nvars, m.degree, c.field.c_str(), m.seed, &s.s));
    return s.str();
  }
  if (!m.file.empty()) return read_file(m.file);
  Json components = Json::array();
  for (const std::string& e : m.h_exprs) {
    PolyHandle p = parse_expr(e, c);
    StringHandle s;
    check(imt_poly_to_json(p.p, &s.s));
    components.push_back(Json::parse(s.str()));
  }
  return Json{{"components", components}}.dump();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact computer algebra for images of first-order differential operator families"};
  app.set_version_flag("--version", imt_version());
  app.require_subcommand(1);

  // eval-e
  Common c_evale;
  auto* evale = app.add_subcommand("eval-e", "apply the evaluation map u^a z^b -> (d/dz)^a z^b");
  add_poly_flags(evale, c_evale);
  evale->callback([&] {
    PolyHandle f = load_poly(c_evale);
    imt_poly* out = nullptr;
    check(imt_eval_e(f.p, &out));
    PolyHandle r(out);
    std::cout << poly_out(r.p, c_evale) << "\n";
  });

  // eval-z
  Common c_evalz;
  auto* evalz = app.add_subcommand("eval-z", "apply the Laurent map u^a z^b -> b! z^{b-a}");
  add_poly_flags(evalz, c_evalz);
  evalz->callback([&] {
    PolyHandle f = load_poly(c_evalz);
    LaurentHandle out;
    check(imt_eval_z(f.p, &out.q));
    std::cout << laurent_out(out.q, c_evalz, 'z') << "\n";
  });

  // laplace
  Common c_lap;
  auto* lap = app.add_subcommand("laplace", "symbolic Laplace transform (Laurent value in u)");
  add_poly_flags(lap, c_lap);
  lap->callback([&] {
    PolyHandle f = load_poly(c_lap);
    LaurentHandle out;
    check(imt_laplace(f.p, &out.q));
    std::cout << laurent_out(out.q, c_lap, 'u') << "\n";
  });

  // taylor
  Common c_tay;
  auto* tay = app.add_subcommand("taylor", "twisted Taylor decomposition f = sum (1/a!) T^a c_a");
  add_poly_flags(tay, c_tay);
  tay->callback([&] {
    PolyHandle f = load_poly(c_tay);
    StringHandle s;
    check(imt_taylor_json(f.p, &s.s));
    emit_report(s.str(), c_tay, render_taylor);
  });

  // member
  Common c_mem;
  bool want_witness = false;
  auto* mem = app.add_subcommand("member", "membership in the image of the u_i - d/dz_i family");
  add_poly_flags(mem, c_mem);
  mem->add_flag("--witness", want_witness, "produce an explicit decomposition when member");
  mem->callback([&] {
    PolyHandle f = load_poly(c_mem);
    StringHandle s;
    check(imt_member_json(f.p, want_witness ? 1 : 0, &s.s));
    emit_report(s.str(), c_mem, render_member);
  });

  // member-bf
  Common c_bf;
  std::string ops_file;
  int bf_deg_z = -1, bf_deg_u = -1;
  auto* bf = app.add_subcommand("member-bf", "truncated brute-force witness search");
  add_poly_flags(bf, c_bf);
  bf->add_option("--ops-file", ops_file, "JSON operator family (default: the u_i - d/dz_i family)");
  bf->add_option("--deg-z", bf_deg_z, "witness z-degree bound (default: documented bounds)");
  bf->add_option("--deg-u", bf_deg_u, "witness u-degree bound (default: documented bounds)");
  bf->callback([&] {
    PolyHandle f = load_poly(c_bf);
    std::string ops_text;
    if (!ops_file.empty()) ops_text = read_file(ops_file);
    StringHandle s;
    check(imt_member_bruteforce_json(f.p, ops_file.empty() ? nullptr : ops_text.c_str(), bf_deg_z,
                                     bf_deg_u, &s.s));
    emit_report(s.str(), c_bf, render_member_bf);
  });

  // vc
  Common c_vc;
  std::string vc_lambda, vc_g = "1";
  int vc_max = 4;
  auto* vc = app.add_subcommand("vc", "power table for lambda^m(P^m) and lambda^m(P^m*Q)");
  add_poly_flags(vc, c_vc);
  vc->add_option("--lambda", vc_lambda, "operator symbol, a pure-u expression")->required();
  vc->add_option("--g", vc_g, "the factor Q")->default_val("1");
  vc->add_option("--max-power", vc_max, "largest power m")->default_val(4);
  vc->callback([&] {
    PolyHandle lam = parse_expr(vc_lambda, c_vc);
    PolyHandle p = load_poly(c_vc);
    PolyHandle q = parse_expr(vc_g, c_vc);
    StringHandle s;
    check(imt_vc_check_json(lam.p, p.p, q.p, vc_max, &s.s));
    emit_report(s.str(), c_vc, render_vc);
  });

  // jc-sums
  Common c_jcs;
  MapInput m_jcs;
  int jcs_max = 4;
  auto* jcs = app.add_subcommand("jc-sums", "power sums sum_{|a|=m} (1/a!) d^a(H^a)");
  add_context_flags(jcs, c_jcs);
  add_map_flags(jcs, m_jcs);
  jcs->add_option("--max-power", jcs_max, "largest power m")->default_val(4);
  jcs->callback([&] {
    const std::string map_text = map_json_text(m_jcs, c_jcs);
    StringHandle s;
    check(imt_jc_power_sums_json(map_text.c_str(), jcs_max, &s.s));
    emit_report(s.str(), c_jcs, render_jc_sums);
  });

  // jc-invert
  Common c_jci;
  MapInput m_jci;
  int jci_trunc = 9;
  std::string jci_g;
  auto* jci = app.add_subcommand("jc-invert", "truncated formal inverse of z - H");
  add_context_flags(jci, c_jci);
  add_map_flags(jci, m_jci);
  jci->add_option("--truncate", jci_trunc, "truncation degree")->default_val(9);
  jci->add_option("--g", jci_g, "scalar g to transport (default: invert the identity map)");
  jci->callback([&] {
    const std::string map_text = map_json_text(m_jci, c_jci);
    std::optional<PolyHandle> g;
    if (!jci_g.empty()) g.emplace(parse_expr(jci_g, c_jci));
    StringHandle s;
    check(imt_ag_inverse_json(map_text.c_str(), g ? g->p : nullptr, jci_trunc, &s.s));
    emit_report(s.str(), c_jci, render_jc_invert);
  });

  // hessian
  Common c_hes;
  auto* hes = app.add_subcommand("hessian", "matrix of second partials and its nilpotency");
  add_poly_flags(hes, c_hes);
  hes->callback([&] {
    PolyHandle p = load_poly(c_hes);
    StringHandle s;
    check(imt_hessian_json(p.p, &s.s));
    emit_report(s.str(), c_hes, render_hessian);
  });

  // codim
  Common c_cod;
  std::string cod_sweep = "8,12,16";
  int cod_single = -1;
  auto* cod = app.add_subcommand("codim", "codimension sweep of the truncated gradient-family image");
  add_poly_flags(cod, c_cod);
  cod->add_option("--sweep", cod_sweep, "comma-separated truncation degrees")->default_val("8,12,16");
  cod->add_option("--truncate", cod_single, "single truncation degree (overrides --sweep)");
  cod->callback([&] {
    PolyHandle q = load_poly(c_cod);
    std::vector<int> degrees;
    if (cod_single >= 0) {
      degrees.push_back(cod_single);
    } else {
      std::stringstream ss(cod_sweep);
      std::string tok;
      while (std::getline(ss, tok, ',')) {
        try {
          degrees.push_back(std::stoi(tok));
        } catch (const std::exception&) {
          throw UsageError{"--sweep expects comma-separated integers"};
        }
      }
    }
    StringHandle s;
    check(imt_codim_sweep_json(q.p, degrees.data(), degrees.size(), &s.s));
    emit_report(s.str(), c_cod, render_codim);
  });

  // reduce
  Common c_red;
  std::string red_ops;
  auto* red = app.add_subcommand("reduce", "reduce a commuting constant-leading family");
  add_context_flags(red, c_red);
  red->add_option("--ops-file", red_ops, "JSON operator family {\"ops\": [...]}")->required();
  red->callback([&] {
    const std::string ops_text = read_file(red_ops);
    StringHandle s;
    check(imt_reduce_json(ops_text.c_str(), &s.s));
    emit_report(s.str(), c_red, render_reduce);
  });

  // ic-check
  Common c_ic;
  std::string ic_g = "1";
  int ic_max = 4;
  auto* ic = app.add_subcommand("ic-check", "membership power table for f^m and f^m*g");
  add_poly_flags(ic, c_ic);
  ic->add_option("--g", ic_g, "the factor g")->default_val("1");
  ic->add_option("--max-power", ic_max, "largest power m")->default_val(4);
  ic->callback([&] {
    PolyHandle f = load_poly(c_ic);
    PolyHandle g = parse_expr(ic_g, c_ic);
    StringHandle s;
    check(imt_ic_check_json(f.p, g.p, ic_max, &s.s));
    emit_report(s.str(), c_ic, render_ic);
  });

  // examples
  Common c_ex;
  std::string ex_id;
  std::uint64_t ex_p = 5;
  int ex_max = 5;
  auto* ex = app.add_subcommand("examples", "bundled counterexample instances");
  ex->add_option("--id", ex_id, "example id: 2.6 or 2.7")->required();
  ex->add_option("--p", ex_p, "characteristic for 2.7")->default_val(5);
  ex->add_option("--max-power", ex_max, "largest power for 2.6")->default_val(5);
  ex->add_option("--format", c_ex.format, "output format: text|json")
      ->default_val("text")
      ->check(CLI::IsMember({"text", "json"}));
  ex->callback([&] {
    StringHandle s;
    check(imt_example_json(ex_id.c_str(), ex_p, ex_max, &s.s));
    emit_report(s.str(), c_ex, render_example);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    std::cerr << e.message << "\n";
    return 2;
  } catch (const DomainError& e) {
    Json err;
    err["error"] = Json{{"code", imt_status_name(e.status)}, {"message", e.message}};
    std::cout << err.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    Json err;
    err["error"] = Json{{"code", "InvalidArgument"}, {"message", e.what()}};
    std::cout << err.dump() << "\n";
    return 1;
  }
  return 0;
}
