#include <complex>

#include "doctest.h"
#include "helpers.hpp"
#include "isurf/bilinfrac.hpp"
#include "isurf/rng.hpp"

using namespace isurf;
using tst::C;
using tst::domain_tag;
using tst::U;
using tst::V;

namespace {

GaussRat gq(long re, long im = 0) { return {rat(re), rat(im)}; }

Mat2Q qm(long a, long b, long c, long d) { return {gq(a), gq(b), gq(c), gq(d)}; }

const Mat2Q kDen1 = qm(0, 0, 0, 1);  // denominator 1

}  // namespace

TEST_CASE("matrix and Moebius basics") {
  Mat2Q m = qm(1, 2, 3, 4);
  CHECK(m.det() == gq(-2));
  CHECK(m * m.inverse() == Mat2Q::identity());
  CHECK(m.transpose().b == gq(3));
  CHECK(domain_tag([] { (void)qm(1, 2, 2, 4).inverse(); }) == errtag::degenerate_input);
  CHECK(domain_tag([] { MoebiusQ f(qm(1, 2, 2, 4)); (void)f; }) == errtag::degenerate_input);

  MoebiusQ f(qm(0, 1, 1, 0));  // z -> 1/z
  CHECK(*f.apply(gq(2)) == GaussRat(rat(1, 2)));
  CHECK_FALSE(f.apply(gq(0)).has_value());
  MoebiusQ g(qm(1, 1, 0, 1));  // z -> z + 1
  CHECK(*f.compose(g).apply(gq(1)) == GaussRat(rat(1, 2)));  // f after g
  CHECK(*f.inverse().apply(*f.apply(gq(5))) == gq(5));
  CHECK(domain_tag([] { BilinFracQ F(qm(1, 0, 0, 0), qm(0, 0, 0, 0)); (void)F; }) ==
        errtag::degenerate_input);
}

TEST_CASE("rank-1 factorization exists exactly for singular matrices") {
  CHECK_FALSE(rank1_factor(qm(1, 2, 3, 4)).has_value());

  auto f = rank1_factor(qm(1, 2, 2, 4));
  REQUIRE(f.has_value());
  CHECK(f->uf[0] * f->vf[0] == gq(1));
  CHECK(f->uf[0] * f->vf[1] == gq(2));
  CHECK(f->uf[1] * f->vf[0] == gq(2));
  CHECK(f->uf[1] * f->vf[1] == gq(4));

  auto z = rank1_factor(qm(0, 0, 0, 0));
  REQUIRE(z.has_value());
  CHECK(is_zero(z->uf[0]));
  CHECK(is_zero(z->uf[1]));

  // exhaustive iff-check over entries in {0, 1, i}
  const GaussRat pool[3] = {gq(0), gq(1), gauss_i()};
  for (int code = 0; code < 81; ++code) {
    int c = code;
    GaussRat e[4];
    for (auto& x : e) { x = pool[c % 3]; c /= 3; }
    Mat2Q m{e[0], e[1], e[2], e[3]};
    auto r = rank1_factor(m);
    CHECK(r.has_value() == is_zero(m.det()));
    if (r) {
      CHECK(r->uf[0] * r->vf[0] == m.a);
      CHECK(r->uf[0] * r->vf[1] == m.b);
      CHECK(r->uf[1] * r->vf[0] == m.c);
      CHECK(r->uf[1] * r->vf[1] == m.d);
    }
  }
}

TEST_CASE("exact Jordan forms satisfy J X = X M") {
  Mat2Q dist = qm(2, 0, 0, 3);
  auto jd = jordan_exact(dist);
  REQUIRE(jd.has_value());
  CHECK(jd->kind == JordanKind::distinct);
  CHECK(jd->J * jd->X == jd->X * dist);
  CHECK(((jd->lambda == gq(2) && jd->mu == gq(3)) || (jd->lambda == gq(3) && jd->mu == gq(2))));

  Mat2Q block = qm(1, 1, 0, 1);
  auto jb = jordan_exact(block);
  REQUIRE(jb.has_value());
  CHECK(jb->kind == JordanKind::block);
  CHECK(jb->J * jb->X == jb->X * block);
  CHECK(jb->J.b == gq(1));

  auto js = jordan_exact(qm(5, 0, 0, 5));
  REQUIRE(js.has_value());
  CHECK(js->kind == JordanKind::scalar);

  // eigenvalues +-sqrt(2): no Gaussian-rational Jordan form
  CHECK_FALSE(jordan_exact(qm(0, 1, 2, 0)).has_value());

  // Gaussian eigenvalues +-i are exact
  auto ji = jordan_exact(qm(0, 1, -1, 0));
  REQUIRE(ji.has_value());
  CHECK(ji->kind == JordanKind::distinct);
  CHECK(ji->lambda * ji->lambda == gq(-1));
}

TEST_CASE("float Jordan agrees on a separated spectrum") {
  Mat2F m = to_float(qm(0, 1, 2, 0));
  auto jf = jordan_float(m, 1e-9);
  CHECK(jf.kind == JordanKind::distinct);
  Mat2F lhs = jf.J * jf.X, rhs = jf.X * m;
  for (auto [l, r] : {std::pair(lhs.a, rhs.a), std::pair(lhs.b, rhs.b), std::pair(lhs.c, rhs.c),
                      std::pair(lhs.d, rhs.d)})
    CHECK(std::abs(l - r) < 1e-12);
  CHECK_FALSE(jf.ill_conditioned);
}

TEST_CASE("product-class map with rational spectrum") {
  BilinFracQ F(qm(2, 0, 0, 3), qm(1, 0, 0, 1));  // (2uv+3)/(uv+1)
  CanonicalClass cls = classify(F);
  CHECK(cls.tag == MapClass::uv);
  CHECK(cls.exact);
  CHECK_FALSE(cls.ill_conditioned);
  int used = 0;
  CHECK(witness_residual(F, cls, 25, &used) == 0.0);
  CHECK(used == 25);
}

TEST_CASE("translation-class map u + iv") {
  Mat2Q A{gq(0), gq(1), gauss_i(), gq(0)};
  BilinFracQ F(A, kDen1);
  CanonicalClass cls = classify(F);
  CHECK(cls.tag == MapClass::u_plus_v);
  CHECK(cls.exact);
  CHECK(witness_residual(F, cls, 25) == 0.0);
}

TEST_CASE("plain canonical representatives classify as themselves") {
  CHECK(classify(BilinFracQ(qm(1, 0, 0, 0), kDen1)).tag == MapClass::uv);
  CHECK(classify(BilinFracQ(qm(0, 1, 1, 0), kDen1)).tag == MapClass::u_plus_v);
  CHECK(classify(BilinFracQ(qm(0, 1, 0, 0), kDen1)).tag == MapClass::u);
  CHECK(classify(BilinFracQ(qm(0, 0, 1, 0), kDen1)).tag == MapClass::v);
  CHECK(classify(BilinFracQ(qm(0, 0, 0, 0), kDen1)).tag == MapClass::zero);
  for (MapClass tag : {MapClass::uv, MapClass::u_plus_v, MapClass::u, MapClass::v,
                       MapClass::zero}) {
    Mat2Q A{gq(tag == MapClass::uv ? 1 : 0), gq(tag == MapClass::u_plus_v || tag == MapClass::u ? 1 : 0),
            gq(tag == MapClass::u_plus_v || tag == MapClass::v ? 1 : 0), gq(0)};
    BilinFracQ F(A, kDen1);
    CHECK(witness_residual(F, classify(F), 25) == 0.0);
  }
}

TEST_CASE("one-variable and constant maps") {
  // u/(v+1) still depends on both parameters: numerator u, denominator v+1
  BilinFracQ F(qm(0, 1, 0, 0), qm(0, 0, 1, 1));
  CanonicalClass cls = classify(F);
  CHECK(cls.tag == MapClass::uv);
  CHECK(witness_residual(F, cls, 25) == 0.0);

  BilinFracQ G(qm(0, 0, 0, 5), kDen1);  // constant 5
  CanonicalClass cg = classify(G);
  CHECK(cg.tag == MapClass::zero);
  CHECK(cg.M.b == gq(-5));
  CHECK(witness_residual(G, cg, 25) == 0.0);

  BilinFracQ H(qm(0, 2, 0, 4), qm(0, 1, 0, 2));  // (2u+4)/(u+2) = 2
  CanonicalClass ch = classify(H);
  CHECK(ch.tag == MapClass::zero);
  CHECK(witness_residual(H, ch, 25) == 0.0);
}

TEST_CASE("scalar numerator-denominator ratio is the constant class") {
  BilinFracQ F(qm(3, 0, 0, 3), qm(1, 0, 0, 1));  // = 3 on the whole plane
  CanonicalClass cls = classify(F);
  CHECK(cls.tag == MapClass::zero);
  CHECK(witness_residual(F, cls, 25) == 0.0);
}

TEST_CASE("irrational spectrum keeps the exact tag with float witnesses") {
  BilinFracQ F(qm(0, 1, 2, 0), qm(1, 0, 0, 1));
  CanonicalClass cls = classify(F);
  CHECK(cls.tag == MapClass::uv);
  CHECK_FALSE(cls.exact);
  int used = 0;
  double resid = witness_residual(F, cls, 25, &used);
  CHECK(used == 25);
  CHECK(resid <= 1e-9);
}

TEST_CASE("classification tag is invariant under parameter Moebius changes") {
  SplitMix64 rng(kDefaultSeed);
  std::vector<BilinFracQ> maps;
  maps.push_back(BilinFracQ(qm(2, 0, 0, 3), qm(1, 0, 0, 1)));
  maps.push_back(BilinFracQ(Mat2Q{gq(0), gq(1), gauss_i(), gq(0)}, kDen1));
  maps.push_back(BilinFracQ(qm(0, 1, 0, 0), kDen1));
  maps.push_back(BilinFracQ(qm(0, 0, 1, 0), kDen1));
  maps.push_back(BilinFracQ(qm(0, 0, 0, 7), kDen1));
  auto rand_invertible = [&] {
    for (;;) {
      Mat2Q m{rng.gauss_height(3), rng.gauss_height(3), rng.gauss_height(3), rng.gauss_height(3)};
      if (!is_zero(m.det())) return m;
    }
  };
  for (const BilinFracQ& F : maps) {
    MapClass tag = classify(F).tag;
    for (int it = 0; it < 10; ++it) {
      BilinFracQ G = transform(F, rand_invertible(), rand_invertible());
      CHECK(classify(G).tag == tag);
    }
  }
}

TEST_CASE("float classifier mirrors the exact one and flags near-merges") {
  BilinFracQ F(qm(2, 0, 0, 3), qm(1, 0, 0, 1));
  BilinFracF Ff(to_float(F.A), to_float(F.B));
  CanonicalClass cls = classify_float(Ff, 1e-9);
  CHECK(cls.tag == MapClass::uv);
  CHECK_FALSE(cls.exact);

  // Denominator uv + 1 keeps B invertible, so W = A B^-1 is the near matrix
  // itself. Eigenvalues 1 +- 2^-26; the discriminant 2^-50 is exact in
  // doubles, so the gap 2^-25 lands between tol and 10*tol: merged with a
  // warning.
  using Cx = std::complex<double>;
  double h = std::ldexp(1.0, -26);
  Mat2F near{Cx(1), Cx(h), Cx(h), Cx(1)};
  CanonicalClass nc = classify_float(BilinFracF(near, to_float(qm(1, 0, 0, 1))), 5e-9);
  CHECK(nc.tag == MapClass::u_plus_v);
  CHECK(nc.ill_conditioned);
}

TEST_CASE("top-view map of a circle-form surface") {
  IsoCircleSurface s(C(1), U(), V(), U() * V(), BiPolyQ{});
  BilinFracQ F = topview_map(s);
  Mat2Q expA{gq(0), gq(1), gauss_i(), gq(0)};
  Mat2Q expB{-gauss_i(), gq(0), gq(0), gq(1)};
  CHECK(F.A == expA);
  CHECK(F.B == expB);
  // x + iy = (u + iv)/(1 - i uv) at (u,v) = (1,1) equals (1+i)/(1-i) = i
  CHECK(*F.eval(gq(1), gq(1)) == gauss_i());
}

TEST_CASE("canonical values") {
  GaussRat u = gq(2), v = gq(5);
  CHECK(canonical_value(MapClass::uv, u, v) == gq(10));
  CHECK(canonical_value(MapClass::u_plus_v, u, v) == gq(7));
  CHECK(canonical_value(MapClass::u, u, v) == u);
  CHECK(canonical_value(MapClass::v, u, v) == v);
  CHECK(canonical_value(MapClass::zero, u, v) == gq(0));
  CHECK(std::string(to_string(MapClass::u_plus_v)) == "u_plus_v");
}
