#include "isurf/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <vector>

#include "isurf/bilinfrac.hpp"
#include "isurf/json_io.hpp"
#include "isurf/selftest.hpp"
#include "isurf/surface.hpp"
#include "isurf/svg.hpp"
#include "isurf/topview.hpp"

namespace isurf {

namespace {

struct HandlerOut {
  Json payload = Json::object();
  std::vector<std::string> diagnostics;
  // Selftest failures keep their payload but flip the report to an error.
  bool failed = false;
  std::string fail_tag, fail_message;
};

std::string read_stream(std::istream& in) {
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string load_input(const CommandRequest& req, std::istream& in) {
  const std::string& s = req.input;
  size_t i = s.find_first_not_of(" \t\r\n");
  if (i != std::string::npos && (s[i] == '{' || s[i] == '[')) return s;
  if (s == "-") return read_stream(in);
  std::ifstream f(s, std::ios::binary);
  if (!f) throw ParseError("cannot read input file: " + s);
  return read_stream(f);
}

const Json& field(const Json& j, const char* k) {
  if (!j.is_object()) throw ParseError(std::string("expected an object carrying '") + k + "'");
  auto it = j.find(k);
  if (it == j.end()) throw ParseError(std::string("missing key '") + k + "'");
  return *it;
}

std::string doc_kind(const Json& doc) {
  if (doc.is_array()) {
    if (doc.size() == 5) return "projpoint";
    if (doc.size() == 3) return "affine";
    throw ParseError("bare arrays must be points: 5 (projective) or 3 (affine) entries");
  }
  const Json& k = field(doc, "kind");
  if (!k.is_string()) throw ParseError("'kind' must be a string");
  return k.get<std::string>();
}

const char* flip_str(FlipKind f) {
  switch (f) {
    case FlipKind::none: return "none";
    case FlipKind::flip_u: return "flip-u";
    case FlipKind::flip_v: return "flip-v";
    case FlipKind::flip_uv: return "flip-uv";
  }
  return "none";
}

void note_degenerate(const CylinderTuple& t, HandlerOut& h) {
  if (t.degenerate_line())
    h.diagnostics.push_back("degenerate tuple: X1 = X2 = 0, projection image is a vertical line");
}

void cmd_construct(const Json& doc, HandlerOut& h) {
  std::string k = doc_kind(doc);
  std::optional<CylinderTuple> t;
  if (k == "tparam") {
    TParamDoc d = tparam_from_json(doc);
    t = compose_tparam(d.P, d.Q, d.R, d.T, d.X3);
  } else if (k == "pythagorean") {
    PythagoreanDoc d = pythagorean_from_json(doc);
    t = compose_pythagorean(d.P0, d.P1, d.P2, d.P3, d.T, d.X3);
  } else {
    throw ParseError("construct expects a tparam or pythagorean document");
  }
  note_degenerate(*t, h);
  h.payload["tuple"] = to_json(*t);
}

void cmd_lift(const Json& doc, HandlerOut& h) {
  std::string k = doc_kind(doc);
  std::optional<CylinderTuple> t;
  if (k == "param1") t = lift_param1(param1_from_json(doc));
  else if (k == "param2") t = lift_param2(param2_from_json(doc));
  else throw ParseError("lift expects a param1 or param2 surface document");
  note_degenerate(*t, h);
  h.payload["tuple"] = to_json(*t);
}

void cmd_decompose(const Json& doc, HandlerOut& h) {
  CylinderTuple t = tuple_from_json(doc);
  note_degenerate(t, h);
  h.payload["witness"] = to_json(decompose_tparam(t));
}

void cmd_normalize(const Json& doc, HandlerOut& h) {
  CylinderTuple t = tuple_from_json(doc);
  NormalizeResult r = normalize_for_parabolas(t);
  h.payload["flip"] = flip_str(r.flip);
  h.payload["tuple"] = to_json(r.tuple);
}

void cmd_classify(const CommandRequest& req, const Json& doc, HandlerOut& h) {
  BilinFracQ F = bilinfrac_from_json(doc);
  CanonicalClass cls = req.float_mode
                           ? classify_float(BilinFracF(to_float(F.A), to_float(F.B)), req.tol)
                           : classify(F);
  int used = 0;
  double resid = witness_residual(F, cls, 25, &used);
  h.payload["class"] = to_json(cls);
  h.payload["witness_pairs"] = used;
  h.payload["witness_residual"] = resid;
  if (!cls.exact)
    h.diagnostics.push_back(req.float_mode
                                ? "float mode: witnesses are floating point"
                                : "irrational eigenvalue pair: witnesses are floating point");
  if (cls.ill_conditioned) h.diagnostics.push_back("ill-conditioned eigenvalue separation");
}

void cmd_dualconic(const Json& doc, HandlerOut& h) {
  std::string k = doc_kind(doc);
  if (k != "param1") throw ParseError("dual-conic expects a param1 surface document");
  BiPolyQ P = poly_q_from_json(field(doc, "P"));
  BiPolyQ Q = poly_q_from_json(field(doc, "Q"));
  BiPolyQ R = poly_q_from_json(field(doc, "R"));
  h.payload["dual_conic"] = to_json(dual_conic_param1(P, Q, R));
}

void cmd_topview(const CommandRequest& req, const Json& doc, HandlerOut& h) {
  std::string k = doc_kind(doc);
  std::optional<BilinFracQ> F;
  if (k == "param2") F = topview_map(param2_from_json(doc));
  else if (k == "bilinfrac") F = bilinfrac_from_json(doc);
  else throw ParseError("topview expects a param2 surface or bilinfrac document");
  TopviewReport rep = top2_pipeline(*F, req.tol);
  h.payload["map"] = to_json(*F);
  h.payload["report"] = to_json(rep);
  if (rep.cls.ill_conditioned)
    h.diagnostics.push_back("ill-conditioned eigenvalue separation in the classification");
}

struct BuiltFamily {
  bool product;
  GenCircle omega1, omega2circle;
  CircleFamily fam;
};

BuiltFamily build_family(const Json& doc) {
  FamilyDoc d = family_from_json(doc);
  MoebiusQ om2(d.omega2);
  BuiltFamily b{d.product, d.omega1, moebius_image_circle(om2, gc_real_line()),
                d.product ? family_product(d.omega1, om2) : family_sum(d.omega1, om2)};
  return b;
}

void cmd_envelope(const CommandRequest& req, const Json& doc, HandlerOut& h) {
  BuiltFamily b = build_family(doc);
  h.payload["family"] = b.product ? "product" : "sum";
  if (!b.product)
    h.payload["shape"] = to_string(sum_envelope_shape(b.omega1, b.omega2circle));
  h.payload["A"] = to_json(b.fam.A);
  h.payload["B"] = to_json(b.fam.B);
  h.payload["C"] = to_json(b.fam.C2);
  Json env = Json::object();
  if (!req.float_mode) {
    Envelope e = envelope_cyclic(b.fam);
    if (e.kind == EnvelopeKind::cyclic) {
      env["kind"] = "cyclic";
      env["cyclic"] = to_json(e.cyclic);
    } else {
      env["kind"] = "linear-family";
      env["base_b"] = to_json(e.base_b);
      env["base_c"] = to_json(e.base_c);
      h.diagnostics.push_back(
          "family is linear in the parameter; reporting the stationary base locus");
    }
  } else {
    EnvelopeF e = envelope_cyclic(family_to_float(b.fam));
    if (e.kind == EnvelopeKind::cyclic) {
      env["kind"] = "cyclic";
      env["cyclic"] = to_json(e.cyclic);
    } else {
      env["kind"] = "linear-family";
      env["base_b"] = to_json(e.base_b);
      env["base_c"] = to_json(e.base_c);
      h.diagnostics.push_back(
          "family is linear in the parameter; reporting the stationary base locus");
    }
  }
  h.payload["envelope"] = std::move(env);
}

void cmd_verify(const Json& doc, HandlerOut& h) {
  Json checks = Json::array();
  auto add = [&checks](const char* name, bool ok) {
    Json e = Json::object();
    e["name"] = name;
    e["pass"] = ok;
    checks.push_back(std::move(e));
  };
  std::string k = doc_kind(doc);
  if (k == "projpoint") {
    ProjPoint4 p = projpoint_from_json(doc);
    add("on-cylinder", on_cylinder(p));
    add("off-exceptional-line", !on_line_l(p));
  } else if (k == "affine") {
    AffinePoint3 a = affine_from_json(doc);
    ProjPoint4 p = iso_unproj(a);
    add("unprojection-on-cylinder", on_cylinder(p));
    add("projection-round-trip", iso_proj(p) == a);
  } else if (k == "tuple") {
    // Re-check the identity directly instead of relying on the validating
    // constructor, so a bad tuple yields a failing check, not an error exit.
    const Json& xs = field(doc, "X");
    if (!xs.is_array() || xs.size() != 5) throw ParseError("'X' must be an array of 5 polynomials");
    std::array<BiPolyQ, 5> X;
    for (int i = 0; i < 5; ++i) X[i] = poly_q_from_json(xs[i]);
    BiPolyQ lhs = X[0] * X[0] + X[1] * X[1] + X[3] * X[3] - X[4] * X[4];
    bool ok = lhs.zero() && !X[4].zero();
    add("cylinder-identity", ok);
    if (ok) {
      CylinderTuple t(X);
      h.payload["degenerate_line"] = t.degenerate_line();
      bool dec = true;
      try {
        decompose_tparam(t);
      } catch (const DomainError&) {
        dec = false;
      }
      add("tparam-decomposable", dec);
    }
  } else if (k == "tparam") {
    TParamDoc d = tparam_from_json(doc);
    bool ok = true;
    try {
      note_degenerate(compose_tparam(d.P, d.Q, d.R, d.T, d.X3), h);
    } catch (const DomainError&) {
      ok = false;
    }
    add("composes-to-cylinder-tuple", ok);
  } else if (k == "pythagorean") {
    PythagoreanDoc d = pythagorean_from_json(doc);
    bool ok = true;
    try {
      note_degenerate(compose_pythagorean(d.P0, d.P1, d.P2, d.P3, d.T, d.X3), h);
    } catch (const DomainError&) {
      ok = false;
    }
    add("composes-to-cylinder-tuple", ok);
  } else if (k == "param1") {
    note_degenerate(lift_param1(param1_from_json(doc)), h);
    add("lift-on-cylinder", true);
  } else if (k == "param2") {
    note_degenerate(lift_param2(param2_from_json(doc)), h);
    add("lift-on-cylinder", true);
  } else {
    throw ParseError("verify cannot handle kind '" + k + "'");
  }
  bool all = true;
  for (const Json& e : checks) all = all && e.at("pass").get<bool>();
  h.payload["checks"] = std::move(checks);
  h.payload["valid"] = all;
}

void cmd_render(const CommandRequest& req, const Json& doc, HandlerOut& h) {
  if (req.svg_path.empty()) throw ParseError("render-svg requires --svg <path>");
  BuiltFamily b = build_family(doc);
  CircleFamilyF famf = family_to_float(b.fam);
  std::optional<CyclicF> envf;
  try {
    Envelope e = envelope_cyclic(b.fam);
    if (e.kind == EnvelopeKind::cyclic) envf = cyclic_to_float(e.cyclic);
    else h.diagnostics.push_back("family is linear in the parameter; no envelope drawn");
  } catch (const DomainError& e) {
    if (e.tag() != errtag::pencil_has_no_envelope) throw;
    h.diagnostics.push_back("pencil family: no envelope drawn");
  }
  constexpr int kMembers = 9;
  std::string svg = svg_family(famf, envf, kMembers);
  std::ofstream f(req.svg_path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open SVG output path: " + req.svg_path);
  f << svg;
  h.payload["svg_path"] = req.svg_path;
  h.payload["members"] = kMembers;
  h.payload["envelope"] = envf.has_value();
  h.payload["bytes"] = svg.size();
}

void cmd_selftest(const CommandRequest& req, HandlerOut& h, std::ostream& err) {
  if (req.selftest_scale != "smoke" && req.selftest_scale != "full")
    throw ParseError("--scale must be smoke or full");
  int div = req.selftest_scale == "full" ? 1 : 10;
  std::vector<CriterionResult> results = run_acceptance(div, req.seed);
  Json arr = Json::array();
  bool all = true;
  std::string first_fail;
  for (const CriterionResult& r : results) {
    Json e = Json::object();
    e["name"] = r.name;
    e["pass"] = r.pass;
    if (!r.pass) e["detail"] = r.detail;
    arr.push_back(std::move(e));
    // Timing goes to stderr only; the report must not depend on wall time.
    err << (r.pass ? "PASS " : "FAIL ") << r.name << " (" << r.seconds << "s)\n";
    if (!r.pass && all) {
      all = false;
      first_fail = r.name + ": " + r.detail;
    }
  }
  h.payload["scale"] = req.selftest_scale;
  h.payload["criteria"] = std::move(arr);
  h.payload["all_pass"] = all;
  if (!all) {
    h.failed = true;
    h.fail_tag = errtag::internal_inconsistency;
    h.fail_message = first_fail;
  }
}

Json error_report(const std::string& cmd, const std::string& tag, const std::string& msg) {
  Json r = Json::object();
  r["status"] = "error";
  r["command"] = cmd;
  Json e = Json::object();
  e["tag"] = tag;
  e["message"] = msg;
  r["error"] = std::move(e);
  r["diagnostics"] = Json::array();
  return r;
}

}  // namespace

int run_command(const CommandRequest& req, std::istream& in, std::ostream& out,
                std::ostream& err) {
  Json report;
  int code = 0;
  try {
    HandlerOut h;
    if (req.command == "selftest") {
      cmd_selftest(req, h, err);
    } else {
      Json doc = json_parse(load_input(req, in));
      if (req.command == "construct") cmd_construct(doc, h);
      else if (req.command == "lift") cmd_lift(doc, h);
      else if (req.command == "decompose") cmd_decompose(doc, h);
      else if (req.command == "normalize") cmd_normalize(doc, h);
      else if (req.command == "classify-map") cmd_classify(req, doc, h);
      else if (req.command == "dual-conic") cmd_dualconic(doc, h);
      else if (req.command == "topview") cmd_topview(req, doc, h);
      else if (req.command == "envelope") cmd_envelope(req, doc, h);
      else if (req.command == "verify") cmd_verify(doc, h);
      else if (req.command == "render-svg") cmd_render(req, doc, h);
      else throw ParseError("unknown command: " + req.command);
    }
    report = Json::object();
    if (h.failed) {
      report["status"] = "error";
      report["command"] = req.command;
      Json e = Json::object();
      e["tag"] = h.fail_tag;
      e["message"] = h.fail_message;
      report["error"] = std::move(e);
      report["payload"] = std::move(h.payload);
      report["diagnostics"] = h.diagnostics;
      code = 1;
    } else {
      report["status"] = "ok";
      report["command"] = req.command;
      report["payload"] = std::move(h.payload);
      report["diagnostics"] = h.diagnostics;
    }
  } catch (const ParseError& e) {
    report = error_report(req.command, errtag::parse_error, e.what());
    code = 2;
  } catch (const DomainError& e) {
    report = error_report(req.command, e.tag(), e.what());
    code = 1;
  } catch (const std::exception& e) {
    report = error_report(req.command, errtag::internal_inconsistency, e.what());
    code = 1;
  }
  std::string text = json_dump(report);
  if (req.output_path.empty() || req.output_path == "-") {
    out << text;
  } else {
    std::ofstream f(req.output_path, std::ios::binary);
    if (!f) {
      err << "cannot write output file: " << req.output_path << "\n";
      return 1;
    }
    f << text;
  }
  return code;
}

}  // namespace isurf
