#include "doctest.h"
#include "helpers.hpp"
#include "isurf/projgeom.hpp"
#include "isurf/rng.hpp"

using namespace isurf;
using tst::domain_tag;

TEST_CASE("worked projection of a cylinder point") {
  ProjPoint4 p(rat(3), rat(4), rat(7), rat(0), rat(5));
  CHECK(on_cylinder(p));
  CHECK_FALSE(on_line_l(p));
  AffinePoint3 a = iso_proj(p);
  CHECK(a == AffinePoint3{rat(3, 5), rat(4, 5), rat(7, 5)});
}

TEST_CASE("unprojection section: round trip on random rational points") {
  SplitMix64 rng(kDefaultSeed);
  for (int it = 0; it < 200; ++it) {
    AffinePoint3 a{rng.rat_height(10), rng.rat_height(10), rng.rat_height(10)};
    ProjPoint4 p = iso_unproj(a);
    CHECK(on_cylinder(p));
    CHECK_FALSE(on_line_l(p));
    CHECK(iso_proj(p) == a);
  }
}

TEST_CASE("projection rejects its center and off-quadric points") {
  CHECK(domain_tag([] { (void)iso_proj(ProjPoint4(rat(0), rat(0), rat(1), rat(1), rat(1))); }) ==
        errtag::projection_center);
  CHECK(domain_tag([] { (void)iso_proj(ProjPoint4(rat(1), rat(1), rat(1), rat(1), rat(1))); }) ==
        errtag::not_on_cylinder);
}

TEST_CASE("points of the exceptional line") {
  ProjPoint4 l(rat(0), rat(0), rat(3), rat(2), rat(2));
  CHECK(on_line_l(l));
  CHECK(on_cylinder(l));
  // x5 = 0 never counts as a cylinder point
  CHECK_FALSE(on_cylinder(ProjPoint4(rat(0), rat(0), rat(1), rat(0), rat(0))));
}

TEST_CASE("projective equality ignores scale only") {
  ProjPoint4 a(rat(1), rat(2), rat(3), rat(4), rat(5));
  ProjPoint4 b(rat(-2), rat(-4), rat(-6), rat(-8), rat(-10));
  ProjPoint4 c(rat(1), rat(2), rat(3), rat(4), rat(6));
  CHECK(proj_equal(a, b));
  CHECK_FALSE(proj_equal(a, c));
  CHECK(to_string(a) == "(1 : 2 : 3 : 4 : 5)");
}

TEST_CASE("the zero tuple is not a projective point") {
  CHECK(domain_tag([] { (void)ProjPoint4(rat(0), rat(0), rat(0), rat(0), rat(0)); }) ==
        errtag::degenerate_input);
}
