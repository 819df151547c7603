#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "helpers.hpp"
#include "isurf/bilinfrac.hpp"
#include "isurf/cli.hpp"
#include "isurf/json_io.hpp"
#include "isurf/surface.hpp"
#include "isurf/topview.hpp"

using namespace isurf;
using tst::C;
using tst::throws_parse_error;
using tst::U;
using tst::V;

namespace {

GaussRat gq(long re, long im = 0) { return {rat(re), rat(im)}; }

struct RunResult {
  int code = 0;
  std::string text;
  Json report;
};

RunResult run(const CommandRequest& req, const std::string& stdin_text = "") {
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  RunResult r;
  r.code = run_command(req, in, out, err);
  r.text = out.str();
  if (!r.text.empty()) r.report = json_parse(r.text);
  return r;
}

CommandRequest make_req(const std::string& cmd, const Json& doc) {
  CommandRequest req;
  req.command = cmd;
  req.input = json_dump(doc);
  return req;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  REQUIRE(bool(f));
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// R = 1 + uv keeps gcd3(X1, X2, X5 - X4) bilinear, so the tuple decomposes.
CylinderTuple worked_tuple() {
  return compose_tparam(U(), V(), C(1) + U() * V(), C(1), BiPolyQ{});
}

Json unit_circle_product_doc() {
  Json d = Json::object();
  d["kind"] = "family";
  d["family"] = "product";
  d["omega1"] = to_json(gc_circle(gq(0), rat(1)));
  d["omega2"] = to_json(Mat2Q{gq(0, 1), gq(2), gq(0), gq(1)});
  return d;
}

}  // namespace

TEST_CASE("polynomial JSON round trip") {
  BiPolyQ p = tst::pq({{2, 1, 3}, {1, 0, 5}});
  p.set(0, 0, rat(-7, 3));
  Json j = to_json(p);
  CHECK(j["field"] == "Q");
  CHECK(poly_q_from_json(j) == p);

  BiPolyC c;
  c.set(1, 1, GaussRat(rat(2), rat(-1)));
  c.set(0, 0, GaussRat(rat(0), rat(1, 2)));
  Json jc = to_json(c);
  CHECK(jc["field"] == "Q(i)");
  CHECK(poly_c_from_json(jc) == c);

  // A rational document promotes to the Gaussian ring.
  CHECK(poly_c_from_json(j) == complexify(p));

  CHECK(to_json(BiPolyQ{})["terms"].empty());
  CHECK(poly_q_from_json(to_json(BiPolyQ{})).zero());
}

TEST_CASE("malformed polynomial documents are rejected") {
  auto parse_q = [](const char* text) { poly_q_from_json(json_parse(text)); };
  CHECK(throws_parse_error([&] { parse_q(R"({"field":"Q","terms":[[0,0,"0"]]})"); }));
  CHECK(throws_parse_error([&] { parse_q(R"({"field":"Q","terms":[[1,0,"1"],[1,0,"2"]]})"); }));
  CHECK(throws_parse_error([&] { parse_q(R"({"terms":[]})"); }));
  CHECK(throws_parse_error([&] { parse_q(R"x({"field":"Q(i)","terms":[]})x"); }));
  CHECK(throws_parse_error([&] { parse_q(R"({"field":"Q","terms":[[-1,0,"1"]]})"); }));
  CHECK(throws_parse_error([&] { parse_q(R"({"field":"Q","terms":[[0,65,"1"]]})"); }));
  CHECK(throws_parse_error([&] { parse_q(R"({"field":"Q","terms":[[0,0,"1/0"]]})"); }));
}

TEST_CASE("point and surface documents round trip") {
  Json a = Json::array({"3", "4", "7", "0", "5"});
  ProjPoint4 p = projpoint_from_json(a);
  CHECK(projpoint_from_json(to_json(p)).x == p.x);
  CHECK(throws_parse_error([] { projpoint_from_json(json_parse(R"(["1","2"])")); }));

  AffinePoint3 pt = affine_from_json(json_parse(R"(["1/2","-3","7"])"));
  CHECK(pt.x == rat(1, 2));
  AffinePoint3 back = affine_from_json(to_json(pt));
  CHECK(back == pt);

  CylinderTuple t = worked_tuple();
  CHECK(tuple_from_json(to_json(t)).X == t.X);

  ParabolicSurface s1(U(), V(), C(1) + U() * V(), U() * V());
  ParabolicSurface s1b = param1_from_json(to_json(s1));
  CHECK(s1b.P == s1.P);
  CHECK(s1b.R == s1.R);
  CHECK(s1b.Z == s1.Z);

  IsoCircleSurface s2(C(1), U(), V(), U() * V(), U() * V());
  IsoCircleSurface s2b = param2_from_json(to_json(s2));
  CHECK(s2b.P0 == s2.P0);
  CHECK(s2b.P3 == s2.P3);

  TParamWitness w = decompose_tparam(t);
  TParamDoc d = tparam_from_json(to_json(w));
  CHECK(d.P == w.P);
  CHECK(d.Q == w.Q);
  CHECK(d.R == w.R);
  CHECK(d.T == w.T);
  CHECK(d.X3.zero());  // the witness document carries no X3

  CHECK(throws_parse_error([&] { param1_from_json(to_json(t)); }));  // kind mismatch
}

TEST_CASE("map and circle documents round trip") {
  Mat2Q m{gq(1, 2), gq(0, -1), gq(-3), GaussRat(rat(1, 2), rat(-2, 3))};
  CHECK(mat2_from_json(to_json(m)) == m);

  BilinFracQ F(Mat2Q{gq(2), gq(0), gq(0), gq(3)}, Mat2Q{gq(1), gq(0), gq(0), gq(1)});
  BilinFracQ F2 = bilinfrac_from_json(to_json(F));
  CHECK(F2.A == F.A);
  CHECK(F2.B == F.B);

  // Entries also parse from [re, im] pairs and bare integers.
  Json jm = json_parse(R"([[["1","2"],"-i"],[-3,"1/2-2/3i"]])");
  CHECK(mat2_from_json(jm) == m);

  GenCircle w = gc_circle(gq(1, 1), rat(4));
  GenCircle wb = gc_from_json(to_json(w));
  CHECK(wb.alpha == w.alpha);
  CHECK(wb.beta == w.beta);
  CHECK(wb.gamma == w.gamma);

  Cyclic k;
  k.c22 = rat(2);
  k.c21 = gq(1, -1);
  k.c20 = gq(3, 2);
  k.c11 = rat(5);
  k.c10 = gq(-1, 4);
  k.c00 = rat(7);
  Cyclic kb = cyclic_from_json(to_json(k));
  CHECK(kb.c22 == k.c22);
  CHECK(kb.c21 == k.c21);
  CHECK(kb.c20 == k.c20);
  CHECK(kb.c11 == k.c11);
  CHECK(kb.c10 == k.c10);
  CHECK(kb.c00 == k.c00);
  CHECK(throws_parse_error([] { cyclic_from_json(json_parse(R"(["1","2"])")); }));

  FamilyDoc fd = family_from_json(unit_circle_product_doc());
  CHECK(fd.product);
  CHECK(fd.omega1.gamma == rat(-1));
  CHECK(fd.omega2.b == gq(2));
  Json bad = unit_circle_product_doc();
  bad["family"] = "circus";
  CHECK(throws_parse_error([&] { family_from_json(bad); }));
}

TEST_CASE("construct command composes cylinder tuples deterministically") {
  Json d = Json::object();
  d["kind"] = "tparam";
  d["P"] = to_json(U());
  d["Q"] = to_json(V());
  d["R"] = to_json(C(1) + U() * V());
  d["T"] = to_json(C(1));
  CommandRequest req = make_req("construct", d);
  RunResult r = run(req);
  CHECK(r.code == 0);
  CHECK(r.report["status"] == "ok");
  CHECK(r.report["command"] == "construct");
  CHECK(r.report["diagnostics"].empty());
  CHECK(tuple_from_json(r.report["payload"]["tuple"]).X == worked_tuple().X);

  RunResult again = run(req);
  CHECK(again.text == r.text);

  Json py = Json::object();
  py["kind"] = "pythagorean";
  py["P0"] = to_json(C(1));
  py["P1"] = to_json(U());
  py["P2"] = to_json(V());
  py["P3"] = to_json(U() * V());
  py["T"] = to_json(C(1));
  RunResult rp = run(make_req("construct", py));
  CHECK(rp.code == 0);
  CylinderTuple expect =
      compose_pythagorean(C(1), U(), V(), U() * V(), C(1), BiPolyQ{});
  CHECK(tuple_from_json(rp.report["payload"]["tuple"]).X == expect.X);

  RunResult rw = run(make_req("construct", to_json(worked_tuple())));
  CHECK(rw.code == 2);  // construct wants a generator document, not a tuple
}

TEST_CASE("lift and normalize commands") {
  ParabolicSurface s(U(), V(), C(1) + U() * V(), U() * V());
  RunResult r = run(make_req("lift", to_json(s)));
  CHECK(r.code == 0);
  CHECK(tuple_from_json(r.report["payload"]["tuple"]).X == lift_param1(s).X);

  CylinderTuple t = worked_tuple();
  RunResult rn = run(make_req("normalize", to_json(t)));
  CHECK(rn.code == 0);
  CHECK(rn.report["payload"]["flip"] == "none");
  CHECK(tuple_from_json(rn.report["payload"]["tuple"]).X == t.X);
}

TEST_CASE("decompose command recovers the generator or reports the obstruction") {
  CylinderTuple t = worked_tuple();
  RunResult r = run(make_req("decompose", to_json(t)));
  CHECK(r.code == 0);
  TParamDoc w = tparam_from_json(r.report["payload"]["witness"]);
  CHECK(w.P == U());
  CHECK(w.Q == V());
  CHECK(w.R == C(1) + U() * V());
  CHECK(w.T == C(1));

  // One-parameter tuple: X = (2u, 2u, 0, 2u^2 - 1, 2u^2 + 1) sits on the
  // cylinder but gcd3(X1, X2, X5 - X4) = 1 has no uv term.
  BiPolyQ u2 = U() * U();
  std::array<BiPolyQ, 5> X;
  X[0] = U().scaled(rat(2));
  X[1] = U().scaled(rat(2));
  X[2] = BiPolyQ{};
  X[3] = u2.scaled(rat(2)) + C(-1);
  X[4] = u2.scaled(rat(2)) + C(1);
  RunResult rf = run(make_req("decompose", to_json(CylinderTuple(X))));
  CHECK(rf.code == 1);
  CHECK(rf.report["status"] == "error");
  CHECK(rf.report["error"]["tag"] == errtag::theorem_hypothesis_violated);
}

TEST_CASE("classify-map command reports witnesses and residuals") {
  Mat2Q A{gq(2), gq(0), gq(0), gq(3)};
  Mat2Q B{gq(1), gq(0), gq(0), gq(1)};
  CommandRequest req = make_req("classify-map", to_json(BilinFracQ(A, B)));
  RunResult r = run(req);
  CHECK(r.code == 0);
  CHECK(r.report["payload"]["class"]["tag"] == "uv");
  CHECK(r.report["payload"]["class"]["exact"] == true);
  CHECK(r.report["payload"]["witness_pairs"] == 25);
  CHECK(r.report["payload"]["witness_residual"] == 0.0);
  CHECK(r.report["diagnostics"].empty());

  req.float_mode = true;
  RunResult rf = run(req);
  CHECK(rf.code == 0);
  CHECK(rf.report["payload"]["class"]["tag"] == "uv");
  CHECK(rf.report["payload"]["class"]["exact"] == false);
  CHECK(rf.report["payload"]["witness_residual"].get<double>() <= 1e-9);
  CHECK_FALSE(rf.report["diagnostics"].empty());
}

TEST_CASE("verify command checks documents without failing the process") {
  CommandRequest req;
  req.command = "verify";
  RunResult r = run(req, R"(["3","4","7","0","5"])");  // stdin input
  CHECK(r.code == 0);
  CHECK(r.report["payload"]["valid"] == true);
  CHECK(r.report["payload"]["checks"].size() == 2);

  RunResult ra = run(make_req("verify", json_parse(R"(["1/2","-3","7"])")));
  CHECK(ra.code == 0);
  CHECK(ra.report["payload"]["valid"] == true);

  RunResult rt = run(make_req("verify", to_json(worked_tuple())));
  CHECK(rt.code == 0);
  CHECK(rt.report["payload"]["valid"] == true);
  CHECK(rt.report["payload"]["degenerate_line"] == false);

  // Tampered tuple: the identity check fails but the exit code stays 0.
  Json bad = Json::object();
  bad["kind"] = "tuple";
  Json xs = Json::array();
  xs.push_back(to_json(U()));
  for (int i = 0; i < 3; ++i) xs.push_back(to_json(BiPolyQ{}));
  xs.push_back(to_json(C(1)));
  bad["X"] = xs;
  RunResult rb = run(make_req("verify", bad));
  CHECK(rb.code == 0);
  CHECK(rb.report["status"] == "ok");
  CHECK(rb.report["payload"]["valid"] == false);
  CHECK(rb.report["payload"]["checks"][0]["name"] == "cylinder-identity");
  CHECK(rb.report["payload"]["checks"][0]["pass"] == false);
}

TEST_CASE("envelope command emits the cyclic or the domain error") {
  RunResult r = run(make_req("envelope", unit_circle_product_doc()));
  CHECK(r.code == 0);
  CHECK(r.report["payload"]["family"] == "product");
  CHECK(r.report["payload"]["A"]["r"] == "-1");
  CHECK(r.report["payload"]["C"]["p"] == "1");
  CHECK(r.report["payload"]["C"]["r"] == "-4");
  const Json& env = r.report["payload"]["envelope"];
  CHECK(env["kind"] == "cyclic");
  CHECK(env["cyclic"][0] == "0");
  CHECK(env["cyclic"][9] == "1");
  CHECK(env["cyclic"][11] == "1");
  CHECK(env["cyclic"][14] == "-4");

  Json sum = Json::object();
  sum["kind"] = "family";
  sum["family"] = "sum";
  sum["omega1"] = to_json(gc_real_line());
  sum["omega2"] = to_json(Mat2Q{gq(1), -gauss_i(), gq(1), gauss_i()});
  RunResult rs = run(make_req("envelope", sum));
  CHECK(rs.code == 0);
  CHECK(rs.report["payload"]["family"] == "sum");
  CHECK(rs.report["payload"]["shape"] == "parallel-lines");
  CHECK(rs.report["payload"]["envelope"]["kind"] == "cyclic");
  CHECK(rs.report["payload"]["envelope"]["cyclic"][11] == "1");
  CHECK(rs.report["payload"]["envelope"]["cyclic"][14] == "-1");

  Json pencil = Json::object();
  pencil["kind"] = "family";
  pencil["family"] = "product";
  pencil["omega1"] = to_json(gc_circle(gq(0), rat(0)));
  pencil["omega2"] = to_json(Mat2Q{gq(1), gq(1), gq(-1), gq(1)});
  RunResult rp = run(make_req("envelope", pencil));
  CHECK(rp.code == 1);
  CHECK(rp.report["error"]["tag"] == errtag::pencil_has_no_envelope);
}

TEST_CASE("dual-conic command classifies the doubly tangent line system") {
  Json d = Json::object();
  d["kind"] = "param1";
  d["P"] = to_json(U());
  d["Q"] = to_json(V());
  d["R"] = to_json(C(1) + U() * V());
  d["Z"] = to_json(BiPolyQ{});
  RunResult r = run(make_req("dual-conic", d));
  CHECK(r.code == 0);
  const Json& dc = r.report["payload"]["dual_conic"];
  CHECK(dc["kind"] == "smooth_conic");
  CHECK(dc["cstar"][0][0] == "0");
  CHECK(dc["cstar"][0][1] == "1");
  CHECK(dc["cstar"][1][0] == "1");
  CHECK(dc["cstar"][2][2] == "-2");

  d["R"] = to_json(C(1));
  RunResult r2 = run(make_req("dual-conic", d));
  CHECK(r2.code == 0);
  const Json& dc2 = r2.report["payload"]["dual_conic"];
  CHECK(dc2["kind"] == "two_pencils");
  CHECK(dc2["vertices_exact"] == true);
  CHECK(dc2["vertex1"] == Json::array({"0", "1", "0"}));
  CHECK(dc2["vertex2"] == Json::array({"1", "0", "0"}));
}

TEST_CASE("topview command runs the full pipeline") {
  Mat2Q A{gq(4), gq(0, 2), gq(0, -4), gq(2)};
  Mat2Q B{gq(1), gq(0, 1), gq(0, 1), gq(-1)};
  RunResult r = run(make_req("topview", to_json(BilinFracQ(A, B))));
  CHECK(r.code == 0);
  CHECK(r.report["payload"]["map"]["kind"] == "bilinfrac");
  const Json& rep = r.report["payload"]["report"];
  CHECK(rep["class"] == "uv");
  CHECK(rep["exact"] == true);
  CHECK(rep["same_cyclic"] == true);
  CHECK(rep["envelope1"] == rep["envelope2"]);
  CHECK(rep["notes"].size() == 1);

  IsoCircleSurface s(C(1), U(), V(), U() * V(), BiPolyQ{});
  RunResult rs = run(make_req("topview", to_json(s)));
  CHECK(rs.code == 0);
  CHECK(rs.report["payload"]["report"]["class"] == "uv");
  CHECK(rs.report["payload"]["report"]["exact"] == true);

  Mat2Q Au{gq(0), gq(1), gq(0), gq(0)};
  Mat2Q Den{gq(0), gq(0), gq(0), gq(1)};
  RunResult rd = run(make_req("topview", to_json(BilinFracQ(Au, Den))));
  CHECK(rd.code == 1);
  CHECK(rd.report["error"]["tag"] == errtag::top_view_degenerate);
}

TEST_CASE("render-svg command writes the drawing") {
  CommandRequest req = make_req("render-svg", unit_circle_product_doc());
  RunResult r0 = run(req);
  CHECK(r0.code == 2);  // missing --svg path
  CHECK(r0.report["error"]["tag"] == errtag::parse_error);

  req.svg_path = "cli_render_test.svg";
  RunResult r = run(req);
  CHECK(r.code == 0);
  CHECK(r.report["payload"]["envelope"] == true);
  CHECK(r.report["payload"]["members"] == 9);
  std::string svg = read_file(req.svg_path);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("<path") != std::string::npos);
  CHECK(svg.size() == r.report["payload"]["bytes"].get<size_t>());
  std::remove(req.svg_path.c_str());
}

TEST_CASE("reports can be written to a file") {
  CommandRequest req = make_req("verify", json_parse(R"(["3","4","7","0","5"])"));
  req.output_path = "cli_report_test.json";
  RunResult r = run(req);
  CHECK(r.code == 0);
  CHECK(r.text.empty());
  Json rep = json_parse(read_file(req.output_path));
  CHECK(rep["status"] == "ok");
  CHECK(rep["payload"]["valid"] == true);
  std::remove(req.output_path.c_str());
}

TEST_CASE("bad invocations exit with the parse code") {
  CommandRequest req;
  req.command = "frobnicate";
  req.input = "{}";
  RunResult r = run(req);
  CHECK(r.code == 2);
  CHECK(r.report["status"] == "error");
  CHECK(r.report["error"]["tag"] == errtag::parse_error);

  req.command = "construct";
  req.input = "{not json";
  RunResult rj = run(req);
  CHECK(rj.code == 2);
  CHECK(rj.report["error"]["tag"] == errtag::parse_error);

  req.input = "no_such_file_here.json";
  RunResult rm = run(req);
  CHECK(rm.code == 2);

  req.command = "verify";
  req.input = R"(["1","2"])";
  RunResult rb = run(req);
  CHECK(rb.code == 2);  // bare arrays must have 3 or 5 entries
}
