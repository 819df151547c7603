#pragma once

#include <array>
#include <optional>
#include <vector>

#include "isurf/bipoly.hpp"
#include "isurf/projgeom.hpp"

namespace isurf {

// Surface x = P/R, y = Q/R, z = Z/R^2 with P, Q, R of bidegree at most
// (1,1) and Z at most (2,2). Every member of this family carries two
// parabolas with vertical axes through each point (its u- and v-isocurves).
struct ParabolicSurface {
  BiPolyQ P, Q, R, Z;
  ParabolicSurface(BiPolyQ p, BiPolyQ q, BiPolyQ r, BiPolyQ z);
};

// Surface x + iy = (P1 + iP2)/(P0 - iP3), z = Z/(P0^2 + P3^2), same degree
// bounds. Its isocurves are isotropic circles (top views are circles).
struct IsoCircleSurface {
  BiPolyQ P0, P1, P2, P3, Z;
  IsoCircleSurface(BiPolyQ p0, BiPolyQ p1, BiPolyQ p2, BiPolyQ p3, BiPolyQ z);
};

// Quintuple X1..X5 of bidegree at most (2,2) satisfying the cylinder
// identity X1^2 + X2^2 + X4^2 = X5^2 with X5 != 0; a parametrized curve
// family on the cylinder model in RP^4.
struct CylinderTuple {
  std::array<BiPolyQ, 5> X;
  explicit CylinderTuple(std::array<BiPolyQ, 5> x);

  // True when X1 = X2 = 0, i.e. the image degenerates to a vertical line or
  // point under projection. Flagged, not rejected.
  bool degenerate_line() const { return X[0].zero() && X[1].zero(); }

  ProjPoint4 eval(const Rat& u0, const Rat& v0) const;
};

// Witness of membership in the tangent-parametrization family:
// X1 = 2PRT, X2 = 2QRT, X4 = (P^2+Q^2-R^2)T, X5 = (P^2+Q^2+R^2)T.
struct TParamWitness {
  BiPolyQ P, Q, R, T;
};

// Compose the tangent-form tuple from (P,Q,R,T); x3 rides along unchanged
// since the cylinder identity does not involve it.
CylinderTuple compose_tparam(const BiPolyQ& P, const BiPolyQ& Q, const BiPolyQ& R,
                             const BiPolyQ& T, const BiPolyQ& x3 = {});

// Compose the four-polynomial Pythagorean-tuple form:
// X1 = 2(P0P1 - P2P3)T, X2 = 2(P1P3 + P0P2)T,
// X4 = (P1^2+P2^2-P0^2-P3^2)T, X5 = (sum Pi^2)T.
CylinderTuple compose_pythagorean(const BiPolyQ& P0, const BiPolyQ& P1, const BiPolyQ& P2,
                                  const BiPolyQ& P3, const BiPolyQ& T, const BiPolyQ& x3 = {});

// Recover (P,Q,R,T) from a tuple: D = gcd3(X1, X2, X5-X4) must have degree
// at least 1 in both u and v (else theorem-hypothesis-violated), then
// P = X1/D, Q = X2/D, R = (X5-X4)/D, T = D/(2R). The two X1 = X2 = 0
// branches return the fixed witnesses (0,0,1,X5) and (1,0,0,X4).
// Gauge: R is scaled to graded-lex leading coefficient 1.
TParamWitness decompose_tparam(const CylinderTuple& t);

enum class FlipKind { none, flip_u, flip_v, flip_uv };

struct NormalizeResult {
  CylinderTuple tuple;
  FlipKind flip;
};

// Search the four parameter flips (u,v) -> (1/u, v) etc., realized as
// coefficient reversals at cap 2, for a representative satisfying the
// decomposition hypothesis. First hit wins; none -> not-parabolic-family.
NormalizeResult normalize_for_parabolas(const CylinderTuple& t);

AffinePoint3 eval_param1(const ParabolicSurface& s, const Rat& u0, const Rat& v0);
AffinePoint3 eval_param2(const IsoCircleSurface& s, const Rat& u0, const Rat& v0);

// Symbolic lift to the cylinder: (2PR : 2QR : 2Z : P^2+Q^2-R^2 : P^2+Q^2+R^2).
CylinderTuple lift_param1(const ParabolicSurface& s);

// Symbolic lift of the circle form: X1 = 2(P0P1-P2P3), X2 = 2(P1P3+P0P2),
// X3 = 2Z, X4 = P1^2+P2^2-P0^2-P3^2, X5 = sum Pi^2.
CylinderTuple lift_param2(const IsoCircleSurface& s);

// Sample an isocurve u = value (axis U) or v = value (axis V) at the grid
// 0, 1, -1, 2, -2, ... skipping poles, until n points are collected; gives
// up after 10n candidates.
std::vector<AffinePoint3> isocurve_sample(const ParabolicSurface& s, Axis fixed_axis,
                                          const Rat& value, int n);
std::vector<AffinePoint3> isocurve_sample(const IsoCircleSurface& s, Axis fixed_axis,
                                          const Rat& value, int n);

enum class IsocurveClass { point, line, vertical_parabola, isotropic_ellipse, other };

const char* to_string(IsocurveClass c);

// Exact classification from at least 7 sample points: equal points -> point;
// collinear top view with z an exact quadratic (resp. affine) function of
// the position along the line -> vertical_parabola (resp. line); concyclic
// top view with coplanar points -> isotropic_ellipse; anything else other.
IsocurveClass classify_isocurve(const std::vector<AffinePoint3>& pts);

}  // namespace isurf
