#pragma once

#include <string>

#include "isurf/bilinfrac.hpp"
#include "isurf/bipoly.hpp"
#include "isurf/projgeom.hpp"
#include "isurf/surface.hpp"
#include "isurf/topview.hpp"
#include "json.hpp"

namespace isurf {

// Ordered maps keep report key order stable, which the CLI promises
// (byte-identical reports for identical requests).
using Json = nlohmann::ordered_json;

// Parse text, rethrowing nlohmann's diagnostics as ParseError.
Json json_parse(const std::string& text);

// dump(2) plus a trailing newline.
std::string json_dump(const Json& j);

// ---- polynomials ----
// {"field":"Q","terms":[[du,dv,"num/den"],...]}
// {"field":"Q(i)","terms":[[du,dv,"re_num/re_den","im_num/im_den"],...]}
// Terms with zero coefficient or repeated monomials are rejected.
Json to_json(const BiPolyQ& p);
Json to_json(const BiPolyC& p);
BiPolyQ poly_q_from_json(const Json& j);
BiPolyC poly_c_from_json(const Json& j);

// ---- points: bare arrays of rational strings (5 projective, 3 affine) ----
Json to_json(const ProjPoint4& p);
Json to_json(const AffinePoint3& a);
ProjPoint4 projpoint_from_json(const Json& j);
AffinePoint3 affine_from_json(const Json& j);

// ---- surfaces, tuples, and generator documents ----
Json to_json(const ParabolicSurface& s);  // {"kind":"param1","P":…,"Q":…,"R":…,"Z":…}
Json to_json(const IsoCircleSurface& s);  // {"kind":"param2","P0":…,…,"P3":…,"Z":…}
Json to_json(const CylinderTuple& t);     // {"kind":"tuple","X":[5 polynomials]}
Json to_json(const TParamWitness& w);     // {"kind":"tparam","P":…,"Q":…,"R":…,"T":…}
ParabolicSurface param1_from_json(const Json& j);
IsoCircleSurface param2_from_json(const Json& j);
CylinderTuple tuple_from_json(const Json& j);

struct TParamDoc {
  BiPolyQ P, Q, R, T, X3;  // X3 optional in the document, defaults to 0
};
TParamDoc tparam_from_json(const Json& j);

struct PythagoreanDoc {
  BiPolyQ P0, P1, P2, P3, T, X3;
};
PythagoreanDoc pythagorean_from_json(const Json& j);

// ---- bilinear-fractional maps ----
// 2x2 matrix as [["a11","a10"],["a01","a00"]]: first row multiplies uv and u,
// second row v and 1. Entries are complex strings like "1/2-3/4i".
Json to_json(const Mat2Q& m);
Json to_json(const Mat2F& m);  // float entries as [re, im] pairs
Mat2Q mat2_from_json(const Json& j);
Json to_json(const BilinFracQ& F);  // {"kind":"bilinfrac","A":…,"B":…}
BilinFracQ bilinfrac_from_json(const Json& j);
Json to_json(const CanonicalClass& r);

// ---- top-view geometry ----
Json to_json(const GenCircle& w);  // {"alpha":"…","beta":["re","im"],"gamma":"…"}
Json to_json(const GenCircleF& w);
GenCircle gc_from_json(const Json& j);
Json to_json(const HermForm& h);  // {"p":"…","q":["re","im"],"r":"…"}
Json to_json(const HermFormF& h);
Json to_json(const Cyclic& k);   // dense 15-vector of rational strings
Json to_json(const CyclicF& k);  // dense 15-vector of numbers
Cyclic cyclic_from_json(const Json& j);

// {"kind":"family","family":"product"|"sum","omega1":<circle>,
//  "omega2":[["a","b"],["c","d"]]}: omega2 is Moebius data tracing the
// second circle as the image of the real line.
struct FamilyDoc {
  bool product = true;
  GenCircle omega1;
  Mat2Q omega2;
};
FamilyDoc family_from_json(const Json& j);

Json to_json(const DualConicResult& r);
Json to_json(const TopviewReport& r);

}  // namespace isurf
