#include "doctest.h"
#include "helpers.hpp"
#include "isurf/rng.hpp"
#include "isurf/surface.hpp"

using namespace isurf;
using tst::C;
using tst::domain_tag;
using tst::pq;
using tst::U;
using tst::V;

namespace {

const BiPolyQ kZero{};

CylinderTuple paraboloid_tuple() { return compose_tparam(U(), V(), C(1), C(1)); }

}  // namespace

TEST_CASE("tangent-form composition matches the hand-expanded tuple") {
  CylinderTuple t = paraboloid_tuple();
  CHECK(t.X[0] == C(2) * U());
  CHECK(t.X[1] == C(2) * V());
  CHECK(t.X[2].zero());
  CHECK(t.X[3] == U() * U() + V() * V() - C(1));
  CHECK(t.X[4] == U() * U() + V() * V() + C(1));
  CHECK_FALSE(t.degenerate_line());
}

TEST_CASE("pythagorean composition satisfies the identity for mixed data") {
  CylinderTuple t = compose_pythagorean(U(), V(), C(1), U() * V(), C(3), kZero);
  BiPolyQ lhs = t.X[0] * t.X[0] + t.X[1] * t.X[1] + t.X[3] * t.X[3];
  CHECK(lhs == t.X[4] * t.X[4]);
}

TEST_CASE("tuple constructor enforces the quadric identity and degree caps") {
  std::array<BiPolyQ, 5> bad{C(2) * U(), C(2) * V(), kZero, U() * U() + V() * V() - C(1),
                             U() * U() + V() * V() + C(2)};
  CHECK(domain_tag([&] { (void)CylinderTuple(bad); }) == errtag::not_on_cylinder);
  std::array<BiPolyQ, 5> zero5{kZero, kZero, kZero, kZero, kZero};
  CHECK(domain_tag([&] { (void)CylinderTuple(zero5); }) == errtag::degenerate_input);
}

TEST_CASE("tuple evaluation lands on the cylinder quadric") {
  CylinderTuple t = paraboloid_tuple();
  ProjPoint4 p = t.eval(rat(1, 2), rat(-3));
  CHECK(on_cylinder(p));
  CHECK(iso_proj(p) == AffinePoint3{rat(1, 2), rat(-3), rat(0)});
}

TEST_CASE("decomposition recovers the generating quadruple in the monic gauge") {
  CylinderTuple t = compose_tparam(U(), V(), U() * V() + C(1), C(1));
  TParamWitness w = decompose_tparam(t);
  CHECK(w.P == U());
  CHECK(w.Q == V());
  CHECK(w.R == U() * V() + C(1));
  CHECK(w.T == C(1));
}

TEST_CASE("decomposition gauge: non-monic input is rescaled, tuple preserved") {
  BiPolyQ r = C(2) * U() * V() + C(6);
  CylinderTuple t = compose_tparam(U(), V(), r, C(1));
  TParamWitness w = decompose_tparam(t);
  CHECK(w.R == U() * V() + C(3));
  CHECK(w.P == C(1, 2) * U());
  CHECK(w.Q == C(1, 2) * V());
  CHECK(w.T == C(4));
  CylinderTuple re = compose_tparam(w.P, w.Q, w.R, w.T, t.X[2]);
  for (int i = 0; i < 5; ++i) CHECK(re.X[i] == t.X[i]);
}

TEST_CASE("decomposition requires a mixed-degree common factor") {
  CHECK(domain_tag([] { (void)decompose_tparam(paraboloid_tuple()); }) ==
        errtag::theorem_hypothesis_violated);
}

TEST_CASE("vertical-line tuples use the fixed witnesses") {
  BiPolyQ p = U() * U() + C(1);
  CylinderTuple down({kZero, kZero, U() * V(), -p, p});
  TParamWitness wd = decompose_tparam(down);
  CHECK(wd.P.zero());
  CHECK(wd.Q.zero());
  CHECK(wd.R == C(1));
  CHECK(wd.T == p);

  CylinderTuple up({kZero, kZero, U() * V(), p, p});
  TParamWitness wu = decompose_tparam(up);
  CHECK(wu.P == C(1));
  CHECK(wu.Q.zero());
  CHECK(wu.R.zero());
  CHECK(wu.T == p);
  CHECK(up.degenerate_line());
}

TEST_CASE("normalization finds the flip that exposes the tangent form") {
  CylinderTuple t = compose_tparam(V(), C(1), U(), C(1));
  NormalizeResult res = normalize_for_parabolas(t);
  CHECK(res.flip == FlipKind::flip_v);
  TParamWitness w = decompose_tparam(res.tuple);
  CHECK(w.P == C(1));
  CHECK(w.Q == V());
  CHECK(w.R == U() * V());
  CHECK(w.T == C(1));
  // flip_v is the substitution v -> 1/v followed by clearing v^2
  CHECK(proj_equal(res.tuple.eval(rat(2), rat(3)), t.eval(rat(2), rat(1, 3))));
}

TEST_CASE("normalization of the paraboloid needs the double flip") {
  NormalizeResult res = normalize_for_parabolas(paraboloid_tuple());
  CHECK(res.flip == FlipKind::flip_uv);
  TParamWitness w = decompose_tparam(res.tuple);
  CHECK(w.P == V());
  CHECK(w.Q == U());
  CHECK(w.R == U() * V());
  CHECK(w.T == C(1));
}

TEST_CASE("already-decomposable tuples keep flip none") {
  CylinderTuple t = compose_tparam(U(), V(), U() * V() + C(1), C(1));
  CHECK(normalize_for_parabolas(t).flip == FlipKind::none);
}

TEST_CASE("first-kind lift commutes with pointwise evaluation") {
  ParabolicSurface s(U(), V(), C(1), pq({{2, 0, 1}, {0, 2, 1}}));  // z = u^2 + v^2
  CylinderTuple t = lift_param1(s);
  SplitMix64 rng(kDefaultSeed);
  for (int it = 0; it < 25; ++it) {
    Rat u0 = rng.rat_height(6), v0 = rng.rat_height(6);
    CHECK(iso_proj(t.eval(u0, v0)) == eval_param1(s, u0, v0));
  }
}

TEST_CASE("second-kind lift commutes with pointwise evaluation") {
  IsoCircleSurface s(C(1), U(), V(), U() * V(), U());
  CylinderTuple t = lift_param2(s);
  SplitMix64 rng(kDefaultSeed ^ 0x5eedULL);
  for (int it = 0; it < 25; ++it) {
    Rat u0 = rng.rat_height(6), v0 = rng.rat_height(6);
    CHECK(iso_proj(t.eval(u0, v0)) == eval_param2(s, u0, v0));
  }
}

TEST_CASE("surface constructors reject out-of-cap and zero denominators") {
  CHECK(domain_tag([] { ParabolicSurface s(U() * U(), V(), C(1), kZero); (void)s; }) ==
        errtag::bidegree_overflow);
  CHECK(domain_tag([] { ParabolicSurface s(U(), V(), kZero, kZero); (void)s; }) ==
        errtag::degenerate_input);
  CHECK(domain_tag([] { IsoCircleSurface s(kZero, U(), V(), kZero, kZero); (void)s; }) ==
        errtag::degenerate_input);
}

TEST_CASE("evaluation poles raise the pole tag") {
  ParabolicSurface s(U(), V(), U(), kZero);
  CHECK(domain_tag([&] { (void)eval_param1(s, rat(0), rat(1)); }) == errtag::pole);
}

TEST_CASE("u-isocurves of a graph surface are vertical parabolas or lines") {
  ParabolicSurface parab(U(), V(), C(1), pq({{2, 0, 1}, {0, 2, 1}}));
  auto pts = isocurve_sample(parab, Axis::U, rat(0), 9);
  CHECK(classify_isocurve(pts) == IsocurveClass::vertical_parabola);

  ParabolicSurface plane(U(), V(), C(1), U() * V());
  CHECK(classify_isocurve(isocurve_sample(plane, Axis::U, rat(2), 9)) == IsocurveClass::line);
  // along u = 0 the plane z = uv degenerates to the x-axis
  CHECK(classify_isocurve(isocurve_sample(plane, Axis::U, rat(0), 9)) == IsocurveClass::line);
}

TEST_CASE("constant isocurves classify as a point") {
  ParabolicSurface s(U(), C(1), C(1), U() * U());
  CHECK(classify_isocurve(isocurve_sample(s, Axis::U, rat(3), 9)) == IsocurveClass::point);
}

TEST_CASE("circle-form isocurves are isotropic ellipses") {
  IsoCircleSurface s(C(1), U(), V(), U() * V(), U());
  auto pts = isocurve_sample(s, Axis::U, rat(1), 9);
  CHECK(classify_isocurve(pts) == IsocurveClass::isotropic_ellipse);
}

TEST_CASE("sampling reports pole-starved isocurves") {
  ParabolicSurface s(V(), C(1), U(), kZero);
  CHECK(domain_tag([&] { (void)isocurve_sample(s, Axis::U, rat(0), 7); }) ==
        errtag::too_few_samples);
  CHECK(domain_tag([&] { (void)classify_isocurve({}); }) == errtag::degenerate_input);
}

TEST_CASE("skew samples classify as other") {
  // twisted cubic style: top view is a parabola, not a line or circle
  std::vector<AffinePoint3> pts;
  for (long k = -3; k <= 3; ++k) pts.push_back({rat(k), rat(k * k), rat(k * k * k)});
  CHECK(classify_isocurve(pts) == IsocurveClass::other);
}
