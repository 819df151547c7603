#include "isurf/json_io.hpp"

#include <complex>
#include <string>
#include <utility>

namespace isurf {

namespace {

[[noreturn]] void bad(const std::string& msg) { throw ParseError(msg); }

const Json& need(const Json& j, const char* key) {
  if (!j.is_object()) bad(std::string("expected an object carrying '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing key '") + key + "'");
  return *it;
}

std::string str_of(const Json& j, const char* what) {
  if (!j.is_string()) bad(std::string(what) + " must be a string");
  return j.get<std::string>();
}

Rat rat_of(const Json& j, const char* what) {
  if (j.is_string()) return rat_parse(j.get<std::string>());
  if (j.is_number_integer()) return rat(static_cast<long>(j.get<long long>()));
  bad(std::string(what) + " must be a rational string");
}

GaussRat gauss_of(const Json& j, const char* what) {
  if (j.is_string()) return gauss_parse(j.get<std::string>());
  if (j.is_number_integer()) return GaussRat(rat(static_cast<long>(j.get<long long>())));
  if (j.is_array() && j.size() == 2) return {rat_of(j[0], what), rat_of(j[1], what)};
  bad(std::string(what) + " must be a complex string or [re, im] pair");
}

int exp_of(const Json& j) {
  if (!j.is_number_integer()) bad("exponent must be an integer");
  long long e = j.get<long long>();
  if (e < 0 || e > 64) bad("exponent out of range [0, 64]");
  return static_cast<int>(e);
}

Json cx_pair(const std::complex<double>& z) { return Json::array({z.real(), z.imag()}); }

}  // namespace

Json json_parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

std::string json_dump(const Json& j) { return j.dump(2) + "\n"; }

// ---- polynomials ----

Json to_json(const BiPolyQ& p) {
  Json terms = Json::array();
  for (const auto& [deg, k] : p.terms()) terms.push_back({deg.first, deg.second, rat_str(k)});
  Json j = Json::object();
  j["field"] = "Q";
  j["terms"] = std::move(terms);
  return j;
}

Json to_json(const BiPolyC& p) {
  Json terms = Json::array();
  for (const auto& [deg, k] : p.terms())
    terms.push_back({deg.first, deg.second, rat_str(k.re), rat_str(k.im)});
  Json j = Json::object();
  j["field"] = "Q(i)";
  j["terms"] = std::move(terms);
  return j;
}

BiPolyQ poly_q_from_json(const Json& j) {
  if (str_of(need(j, "field"), "field") != "Q") bad("expected a polynomial over field \"Q\"");
  const Json& terms = need(j, "terms");
  if (!terms.is_array()) bad("'terms' must be an array");
  BiPolyQ p;
  for (const Json& t : terms) {
    if (!t.is_array() || t.size() != 3) bad("rational term must be [du, dv, \"num/den\"]");
    int du = exp_of(t[0]), dv = exp_of(t[1]);
    Rat c = rat_of(t[2], "coefficient");
    if (is_zero(c)) bad("zero-coefficient term");
    if (!is_zero(p.coeff(du, dv))) bad("repeated monomial in term list");
    p.set(du, dv, c);
  }
  return p;
}

BiPolyC poly_c_from_json(const Json& j) {
  std::string field = str_of(need(j, "field"), "field");
  if (field == "Q") return complexify(poly_q_from_json(j));
  if (field != "Q(i)") bad("expected a polynomial over \"Q\" or \"Q(i)\"");
  const Json& terms = need(j, "terms");
  if (!terms.is_array()) bad("'terms' must be an array");
  BiPolyC p;
  for (const Json& t : terms) {
    if (!t.is_array() || t.size() != 4)
      bad("Gaussian term must be [du, dv, \"re_num/re_den\", \"im_num/im_den\"]");
    int du = exp_of(t[0]), dv = exp_of(t[1]);
    GaussRat c(rat_of(t[2], "real part"), rat_of(t[3], "imaginary part"));
    if (is_zero(c)) bad("zero-coefficient term");
    if (!is_zero(p.coeff(du, dv))) bad("repeated monomial in term list");
    p.set(du, dv, c);
  }
  return p;
}

// ---- points ----

Json to_json(const ProjPoint4& p) {
  Json a = Json::array();
  for (const Rat& c : p.x) a.push_back(rat_str(c));
  return a;
}

Json to_json(const AffinePoint3& a) {
  return Json::array({rat_str(a.x), rat_str(a.y), rat_str(a.z)});
}

ProjPoint4 projpoint_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 5) bad("projective point must be an array of 5 rational strings");
  std::array<Rat, 5> c;
  for (int i = 0; i < 5; ++i) c[i] = rat_of(j[i], "coordinate");
  return ProjPoint4(std::move(c));
}

AffinePoint3 affine_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 3) bad("affine point must be an array of 3 rational strings");
  return {rat_of(j[0], "coordinate"), rat_of(j[1], "coordinate"), rat_of(j[2], "coordinate")};
}

// ---- surfaces, tuples, generator documents ----

namespace {

std::string kind_of(const Json& j) { return str_of(need(j, "kind"), "kind"); }

void check_kind(const Json& j, const char* expect) {
  std::string k = kind_of(j);
  if (k != expect) bad("expected kind \"" + std::string(expect) + "\", got \"" + k + "\"");
}

BiPolyQ poly_field(const Json& j, const char* key) { return poly_q_from_json(need(j, key)); }

BiPolyQ poly_field_opt(const Json& j, const char* key) {
  if (!j.is_object() || j.find(key) == j.end()) return {};
  return poly_q_from_json(j.at(key));
}

}  // namespace

Json to_json(const ParabolicSurface& s) {
  Json j = Json::object();
  j["kind"] = "param1";
  j["P"] = to_json(s.P);
  j["Q"] = to_json(s.Q);
  j["R"] = to_json(s.R);
  j["Z"] = to_json(s.Z);
  return j;
}

Json to_json(const IsoCircleSurface& s) {
  Json j = Json::object();
  j["kind"] = "param2";
  j["P0"] = to_json(s.P0);
  j["P1"] = to_json(s.P1);
  j["P2"] = to_json(s.P2);
  j["P3"] = to_json(s.P3);
  j["Z"] = to_json(s.Z);
  return j;
}

Json to_json(const CylinderTuple& t) {
  Json xs = Json::array();
  for (const BiPolyQ& x : t.X) xs.push_back(to_json(x));
  Json j = Json::object();
  j["kind"] = "tuple";
  j["X"] = std::move(xs);
  return j;
}

Json to_json(const TParamWitness& w) {
  Json j = Json::object();
  j["kind"] = "tparam";
  j["P"] = to_json(w.P);
  j["Q"] = to_json(w.Q);
  j["R"] = to_json(w.R);
  j["T"] = to_json(w.T);
  return j;
}

ParabolicSurface param1_from_json(const Json& j) {
  check_kind(j, "param1");
  return {poly_field(j, "P"), poly_field(j, "Q"), poly_field(j, "R"), poly_field(j, "Z")};
}

IsoCircleSurface param2_from_json(const Json& j) {
  check_kind(j, "param2");
  return {poly_field(j, "P0"), poly_field(j, "P1"), poly_field(j, "P2"), poly_field(j, "P3"),
          poly_field(j, "Z")};
}

CylinderTuple tuple_from_json(const Json& j) {
  check_kind(j, "tuple");
  const Json& xs = need(j, "X");
  if (!xs.is_array() || xs.size() != 5) bad("'X' must be an array of 5 polynomials");
  std::array<BiPolyQ, 5> x;
  for (int i = 0; i < 5; ++i) x[i] = poly_q_from_json(xs[i]);
  return CylinderTuple(std::move(x));
}

TParamDoc tparam_from_json(const Json& j) {
  check_kind(j, "tparam");
  TParamDoc d;
  d.P = poly_field(j, "P");
  d.Q = poly_field(j, "Q");
  d.R = poly_field(j, "R");
  d.T = poly_field(j, "T");
  d.X3 = poly_field_opt(j, "X3");
  return d;
}

PythagoreanDoc pythagorean_from_json(const Json& j) {
  check_kind(j, "pythagorean");
  PythagoreanDoc d;
  d.P0 = poly_field(j, "P0");
  d.P1 = poly_field(j, "P1");
  d.P2 = poly_field(j, "P2");
  d.P3 = poly_field(j, "P3");
  d.T = poly_field(j, "T");
  d.X3 = poly_field_opt(j, "X3");
  return d;
}

// ---- bilinear-fractional maps ----

Json to_json(const Mat2Q& m) {
  return Json::array({Json::array({gauss_str(m.a), gauss_str(m.b)}),
                      Json::array({gauss_str(m.c), gauss_str(m.d)})});
}

Json to_json(const Mat2F& m) {
  return Json::array({Json::array({cx_pair(m.a), cx_pair(m.b)}),
                      Json::array({cx_pair(m.c), cx_pair(m.d)})});
}

Mat2Q mat2_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_array() || j[0].size() != 2 ||
      !j[1].is_array() || j[1].size() != 2)
    bad("matrix must be a 2x2 array of complex strings");
  return {gauss_of(j[0][0], "matrix entry"), gauss_of(j[0][1], "matrix entry"),
          gauss_of(j[1][0], "matrix entry"), gauss_of(j[1][1], "matrix entry")};
}

Json to_json(const BilinFracQ& F) {
  Json j = Json::object();
  j["kind"] = "bilinfrac";
  j["A"] = to_json(F.A);
  j["B"] = to_json(F.B);
  return j;
}

BilinFracQ bilinfrac_from_json(const Json& j) {
  check_kind(j, "bilinfrac");
  return BilinFracQ(mat2_from_json(need(j, "A")), mat2_from_json(need(j, "B")));
}

Json to_json(const CanonicalClass& r) {
  Json j = Json::object();
  j["tag"] = to_string(r.tag);
  j["exact"] = r.exact;
  if (r.exact) {
    j["M"] = to_json(r.M);
    j["C"] = to_json(r.C);
    j["D"] = to_json(r.D);
  } else {
    j["M"] = to_json(r.Mf);
    j["C"] = to_json(r.Cf);
    j["D"] = to_json(r.Df);
  }
  if (r.ill_conditioned) j["ill_conditioned"] = true;
  return j;
}

// ---- top-view geometry ----

Json to_json(const GenCircle& w) {
  Json j = Json::object();
  j["alpha"] = rat_str(w.alpha);
  j["beta"] = Json::array({rat_str(w.beta.re), rat_str(w.beta.im)});
  j["gamma"] = rat_str(w.gamma);
  return j;
}

Json to_json(const GenCircleF& w) {
  Json j = Json::object();
  j["alpha"] = w.alpha;
  j["beta"] = Json::array({w.beta.real(), w.beta.imag()});
  j["gamma"] = w.gamma;
  return j;
}

GenCircle gc_from_json(const Json& j) {
  GenCircle w;
  w.alpha = rat_of(need(j, "alpha"), "alpha");
  w.beta = gauss_of(need(j, "beta"), "beta");
  w.gamma = rat_of(need(j, "gamma"), "gamma");
  return w;
}

Json to_json(const HermForm& h) {
  Json j = Json::object();
  j["p"] = rat_str(h.p);
  j["q"] = Json::array({rat_str(h.q.re), rat_str(h.q.im)});
  j["r"] = rat_str(h.r);
  return j;
}

Json to_json(const HermFormF& h) {
  Json j = Json::object();
  j["p"] = h.p;
  j["q"] = Json::array({h.q.real(), h.q.imag()});
  j["r"] = h.r;
  return j;
}

Json to_json(const Cyclic& k) {
  Json a = Json::array();
  for (const Rat& c : cyclic_to_dense(k)) a.push_back(rat_str(c));
  return a;
}

Json to_json(const CyclicF& k) {
  Json a = Json::array();
  for (double c : cyclic_to_dense(k)) a.push_back(c);
  return a;
}

Cyclic cyclic_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 15)
    bad("cyclic must be a dense array of 15 rational coefficients");
  Dense15 d;
  for (int i = 0; i < 15; ++i) d[i] = rat_of(j[i], "coefficient");
  return cyclic_from_dense(d);
}

FamilyDoc family_from_json(const Json& j) {
  check_kind(j, "family");
  FamilyDoc doc;
  std::string fam = str_of(need(j, "family"), "family");
  if (fam == "product") doc.product = true;
  else if (fam == "sum") doc.product = false;
  else bad("'family' must be \"product\" or \"sum\"");
  doc.omega1 = gc_from_json(need(j, "omega1"));
  doc.omega2 = mat2_from_json(need(j, "omega2"));
  return doc;
}

Json to_json(const DualConicResult& r) {
  Json j = Json::object();
  j["kind"] = to_string(r.kind);
  auto line3 = [](const std::array<Rat, 3>& l) {
    return Json::array({rat_str(l[0]), rat_str(l[1]), rat_str(l[2])});
  };
  switch (r.kind) {
    case DualConicKind::smooth_conic:
    case DualConicKind::two_pencils: {
      Json rows = Json::array();
      for (const auto& row : r.cstar) rows.push_back(line3(row));
      j["cstar"] = std::move(rows);
      break;
    }
    case DualConicKind::single_pencil:
      j["vertex"] = line3(r.pencil_vertex);
      return j;
    case DualConicKind::single_line_set:
      j["line"] = line3(r.line);
      return j;
  }
  if (r.kind == DualConicKind::two_pencils) {
    j["vertices_exact"] = r.vertices_exact;
    if (r.vertices_exact) {
      j["vertex1"] = line3(r.vertex1);
      j["vertex2"] = line3(r.vertex2);
    } else {
      auto line3f = [](const std::array<std::complex<double>, 3>& l) {
        return Json::array({cx_pair(l[0]), cx_pair(l[1]), cx_pair(l[2])});
      };
      j["vertex1"] = line3f(r.vertex1f);
      j["vertex2"] = line3f(r.vertex2f);
    }
  }
  return j;
}

Json to_json(const TopviewReport& r) {
  Json j = Json::object();
  j["class"] = to_string(r.cls.tag);
  j["exact"] = r.exact;
  if (r.exact) {
    j["omega1"] = r.omega1 ? to_json(*r.omega1) : Json(nullptr);
    j["omega2"] = r.omega2 ? to_json(*r.omega2) : Json(nullptr);
    j["envelope1"] = r.envelope1 ? to_json(*r.envelope1) : Json(nullptr);
    j["envelope2"] = r.envelope2 ? to_json(*r.envelope2) : Json(nullptr);
  } else {
    j["omega1"] = r.omega1f ? to_json(*r.omega1f) : Json(nullptr);
    j["omega2"] = r.omega2f ? to_json(*r.omega2f) : Json(nullptr);
    j["envelope1"] = r.envelope1f ? to_json(*r.envelope1f) : Json(nullptr);
    j["envelope2"] = r.envelope2f ? to_json(*r.envelope2f) : Json(nullptr);
  }
  j["same_cyclic"] = r.same_cyclic ? Json(*r.same_cyclic) : Json(nullptr);
  j["notes"] = r.notes;
  return j;
}

}  // namespace isurf
