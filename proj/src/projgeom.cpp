#include "isurf/projgeom.hpp"

#include <sstream>

#include "isurf/errors.hpp"

namespace isurf {

ProjPoint4::ProjPoint4(std::array<Rat, 5> coords) : x(std::move(coords)) {
  bool all_zero = true;
  for (const Rat& c : x)
    if (!is_zero(c)) { all_zero = false; break; }
  if (all_zero)
    throw DomainError(errtag::degenerate_input, "projective point with all coordinates zero");
}

bool proj_equal(const ProjPoint4& a, const ProjPoint4& b) {
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j)
      if (a.x[i] * b.x[j] != a.x[j] * b.x[i]) return false;
  return true;
}

bool on_cylinder(const ProjPoint4& p) {
  if (is_zero(p.x[4])) return false;
  return p.x[0] * p.x[0] + p.x[1] * p.x[1] + p.x[3] * p.x[3] == p.x[4] * p.x[4];
}

bool on_line_l(const ProjPoint4& p) {
  return is_zero(p.x[0]) && is_zero(p.x[1]) && p.x[3] == p.x[4];
}

AffinePoint3 iso_proj(const ProjPoint4& p) {
  if (!on_cylinder(p))
    throw DomainError(errtag::not_on_cylinder, "projection requires a point on the cylinder");
  Rat den = p.x[4] - p.x[3];
  if (is_zero(den))
    throw DomainError(errtag::projection_center,
                      "point lies on the exceptional line l (x5 - x4 = 0)");
  return {Rat(p.x[0] / den), Rat(p.x[1] / den), Rat(p.x[2] / den)};
}

ProjPoint4 iso_unproj(const AffinePoint3& a) {
  Rat s = a.x * a.x + a.y * a.y;
  return {Rat(2 * a.x), Rat(2 * a.y), Rat(2 * a.z), Rat(s - 1), Rat(s + 1)};
}

std::string to_string(const ProjPoint4& p) {
  std::ostringstream out;
  out << "(";
  for (int i = 0; i < 5; ++i) out << (i ? " : " : "") << rat_str(p.x[i]);
  out << ")";
  return out.str();
}

}  // namespace isurf
