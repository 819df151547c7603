#pragma once

#include <array>
#include <string>

#include "isurf/rational.hpp"

namespace isurf {

// Affine point of R^3.
struct AffinePoint3 {
  Rat x, y, z;
  bool operator==(const AffinePoint3& o) const { return x == o.x && y == o.y && z == o.z; }
};

// Point of RP^4 with exact rational coordinates, not all zero.
struct ProjPoint4 {
  std::array<Rat, 5> x;

  explicit ProjPoint4(std::array<Rat, 5> coords);
  ProjPoint4(Rat a, Rat b, Rat c, Rat d, Rat e)
      : ProjPoint4(std::array<Rat, 5>{std::move(a), std::move(b), std::move(c), std::move(d),
                                      std::move(e)}) {}
};

// Scale-invariant equality: all 2x2 minors of the coordinate pair vanish.
bool proj_equal(const ProjPoint4& a, const ProjPoint4& b);

// Membership in the quadric x1^2 + x2^2 + x4^2 = x5^2 with x5 != 0, the
// model of the cylinder S^2 x R inside RP^4.
bool on_cylinder(const ProjPoint4& p);

// Membership in the exceptional line l: x1 = x2 = 0, x4 = x5.
bool on_line_l(const ProjPoint4& p);

// Stereographic-style projection from the cylinder minus l to R^3:
// (x1:...:x5) -> (x1, x2, x3) / (x5 - x4). On the cylinder, x5 = x4 happens
// exactly on l, which is the projection center.
AffinePoint3 iso_proj(const ProjPoint4& p);

// Inverse projection: (x,y,z) -> (2x : 2y : 2z : x^2+y^2-1 : x^2+y^2+1).
// Always lands on the cylinder, off the line l.
ProjPoint4 iso_unproj(const AffinePoint3& a);

std::string to_string(const ProjPoint4& p);

}  // namespace isurf
