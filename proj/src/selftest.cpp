#include "isurf/selftest.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <vector>

#include "isurf/bilinfrac.hpp"
#include "isurf/bipoly.hpp"
#include "isurf/json_io.hpp"
#include "isurf/projgeom.hpp"
#include "isurf/rng.hpp"
#include "isurf/surface.hpp"
#include "isurf/topview.hpp"

namespace isurf {

namespace {

struct Ctx {
  SplitMix64 rng;
  bool pass = true;
  std::string detail;

  // First failure wins; later ones would usually be noise from the same cause.
  void fail(const std::string& property, const std::string& counterexample) {
    if (!pass) return;
    pass = false;
    detail = counterexample.empty() ? property : property + ": " + counterexample;
  }
};

int scaled(int n, int d) { return std::max(1, n / d); }

long grid_int(int i) {
  long k = (i + 1) / 2;
  return i % 2 == 1 ? k : -k;
}

BiPolyQ rand11(SplitMix64& rng, long h) {
  BiPolyQ p;
  for (int du = 0; du <= 1; ++du)
    for (int dv = 0; dv <= 1; ++dv) p.set(du, dv, rng.rat_height(h));
  return p;
}

BiPolyQ rand11_nonzero(SplitMix64& rng, long h) {
  for (;;) {
    BiPolyQ p = rand11(rng, h);
    if (!p.zero()) return p;
  }
}

BiPolyQ rand22(SplitMix64& rng, long h) {
  BiPolyQ p;
  for (int du = 0; du <= 2; ++du)
    for (int dv = 0; dv <= 2; ++dv) p.set(du, dv, rng.rat_height(h));
  return p;
}

Mat2Q rand_mat(SplitMix64& rng, long h) {
  return {rng.gauss_height(h), rng.gauss_height(h), rng.gauss_height(h), rng.gauss_height(h)};
}

Mat2Q rand_invertible(SplitMix64& rng, long h) {
  for (;;) {
    Mat2Q m = rand_mat(rng, h);
    if (!is_zero(m.det())) return m;
  }
}

std::string dump1(const Json& j) { return j.dump(); }

// 1. Composed tuples satisfy X1^2 + X2^2 + X4^2 - X5^2 = 0 exactly, for both
//    the tangent (P,Q,R,T) and the Pythagorean (P0..P3,T) forms.
void crit_cylinder(Ctx& c, int d) {
  int n = scaled(1000, d);
  for (int i = 0; i < n && c.pass; ++i) {
    BiPolyQ P = rand11(c.rng, 3), Q = rand11(c.rng, 3), R = rand11(c.rng, 3);
    if (P.zero() && Q.zero() && R.zero()) {
      --i;
      continue;
    }
    BiPolyQ T = BiPolyQ::constant(c.rng.nonzero_rat_height(3));
    CylinderTuple t = compose_tparam(P, Q, R, T);
    BiPolyQ lhs = t.X[0] * t.X[0] + t.X[1] * t.X[1] + t.X[3] * t.X[3] - t.X[4] * t.X[4];
    if (!lhs.zero())
      c.fail("cylinder identity (tangent form)",
             "P=" + dump1(to_json(P)) + " Q=" + dump1(to_json(Q)) + " R=" + dump1(to_json(R)) +
                 " T=" + dump1(to_json(T)));
  }
  for (int i = 0; i < n && c.pass; ++i) {
    std::array<BiPolyQ, 4> Ps;
    bool all0 = true;
    for (BiPolyQ& p : Ps) {
      p = rand11(c.rng, 3);
      all0 = all0 && p.zero();
    }
    if (all0) {
      --i;
      continue;
    }
    BiPolyQ T = BiPolyQ::constant(c.rng.nonzero_rat_height(3));
    CylinderTuple t = compose_pythagorean(Ps[0], Ps[1], Ps[2], Ps[3], T);
    BiPolyQ lhs = t.X[0] * t.X[0] + t.X[1] * t.X[1] + t.X[3] * t.X[3] - t.X[4] * t.X[4];
    if (!lhs.zero())
      c.fail("cylinder identity (pythagorean form)",
             "P0=" + dump1(to_json(Ps[0])) + " P1=" + dump1(to_json(Ps[1])) +
                 " P2=" + dump1(to_json(Ps[2])) + " P3=" + dump1(to_json(Ps[3])));
  }
}

// 2. decompose_tparam recovers generators: recomposition is polynomial-equal
//    to the input whenever gcd3(X1, X2, X5-X4) has degree >= 1 in u and in v.
void crit_roundtrip(Ctx& c, int d) {
  int n = scaled(500, d);
  int made = 0, tries = 0;
  while (made < n && c.pass) {
    if (++tries > 60 * n) {
      c.fail("tuple generator exhausted before reaching the target count", "");
      return;
    }
    BiPolyQ P = rand11(c.rng, 3), Q = rand11(c.rng, 3), R = rand11_nonzero(c.rng, 3);
    BiPolyQ T = BiPolyQ::constant(c.rng.nonzero_rat_height(3));
    CylinderTuple t = compose_tparam(P, Q, R, T);
    Bidegree bd = gcd3(t.X[0], t.X[1], t.X[4] - t.X[3]).bidegree();
    if (bd.zero || bd.du < 1 || bd.dv < 1) continue;
    ++made;
    TParamWitness w = decompose_tparam(t);
    CylinderTuple back = compose_tparam(w.P, w.Q, w.R, w.T, t.X[2]);
    for (int k = 0; k < 5; ++k)
      if (!(back.X[k] == t.X[k])) {
        c.fail("tparam round trip", "P=" + dump1(to_json(P)) + " Q=" + dump1(to_json(Q)) +
                                        " R=" + dump1(to_json(R)) + " T=" + dump1(to_json(T)));
        break;
      }
  }
}

// 3. iso_proj(iso_unproj(a)) == a exactly, and the lift is on the cylinder.
void crit_projection(Ctx& c, int d) {
  int n = scaled(1000, d);
  for (int i = 0; i < n && c.pass; ++i) {
    AffinePoint3 a{c.rng.rat_height(20), c.rng.rat_height(20), c.rng.rat_height(20)};
    ProjPoint4 p = iso_unproj(a);
    if (!on_cylinder(p)) {
      c.fail("iso_unproj lands on the cylinder", dump1(to_json(a)));
      continue;
    }
    if (!(iso_proj(p) == a)) c.fail("projection round trip", dump1(to_json(a)));
  }
}

// 4. Every random map classifies into one of the five tags, the Moebius
//    witness identity holds on 100 pole-free pairs (exact, or residual
//    <= 1e-9 for irrational-eigenvalue witnesses), and the tag is invariant
//    under parameter substitution by invertible Moebius pairs.
void crit_classifier(Ctx& c, int d) {
  constexpr double kTol = 1e-9;
  int n = scaled(1000, d);
  for (int i = 0; i < n && c.pass; ++i) {
    Mat2Q A = rand_mat(c.rng, 5);
    Mat2Q B = rand_mat(c.rng, 5);
    if (B.zero()) {
      --i;
      continue;
    }
    BilinFracQ F(A, B);
    CanonicalClass cls = classify(F);
    int used = 0;
    double resid = witness_residual(F, cls, 100, &used);
    if (used < 100) {
      c.fail("fewer than 100 pole-free witness pairs on the sampling grid", dump1(to_json(F)));
      continue;
    }
    bool ok = cls.exact ? resid == 0.0 : resid <= kTol;
    if (!ok)
      c.fail("witness identity f_M(F(f_C(u), f_D(v))) = canonical",
             dump1(to_json(F)) + " tag=" + to_string(cls.tag) +
                 " residual=" + std::to_string(resid));
  }
  int m = scaled(500, d);
  for (int i = 0; i < m && c.pass; ++i) {
    Mat2Q A = rand_mat(c.rng, 3);
    Mat2Q B = rand_mat(c.rng, 3);
    if (B.zero()) {
      --i;
      continue;
    }
    Mat2Q Cm = rand_invertible(c.rng, 3), Dm = rand_invertible(c.rng, 3);
    BilinFracQ F(A, B);
    BilinFracQ G = transform(F, Cm, Dm);
    MapClass tf = classify(F).tag, tg = classify(G).tag;
    if (tf != tg)
      c.fail("class tag invariance under invertible substitution",
             dump1(to_json(F)) + " C=" + dump1(to_json(Cm)) + " D=" + dump1(to_json(Dm)) +
                 " tags " + to_string(tf) + " vs " + to_string(tg));
  }
}

// 5. Random bidegree-(1,1) central projections have dual-line families fitting
//    one conic: kind smooth_conic or two_pencils, and in the smooth case every
//    sampled line of both families satisfies l^T C* l = 0 exactly.  The worked
//    instance P=u, Q=v, R=1+uv gives the normalized conic with C*_12 = 1 and
//    C*_33 = -2.
void crit_dualconic(Ctx& c, int d) {
  int n = scaled(200, d);
  for (int i = 0; i < n && c.pass; ++i) {
    BiPolyQ P = rand11(c.rng, 3), Q = rand11(c.rng, 3), R = rand11_nonzero(c.rng, 3);
    DualConicResult r = dual_conic_param1(P, Q, R);
    if (r.kind != DualConicKind::smooth_conic && r.kind != DualConicKind::two_pencils) {
      c.fail("dual conic kind for a random doubly ruled top view",
             "kind=" + to_string(r.kind) + " P=" + dump1(to_json(P)) + " Q=" + dump1(to_json(Q)) +
                 " R=" + dump1(to_json(R)));
      continue;
    }
    if (r.kind != DualConicKind::smooth_conic) continue;
    for (int g = 0; g < 12 && c.pass; ++g) {
      Rat t0(grid_int(g));
      for (int famv = 0; famv < 2; ++famv) {
        std::array<Rat, 3> l =
            famv ? topview_line_v(P, Q, R, t0) : topview_line_u(P, Q, R, t0);
        if (is_zero(l[0]) && is_zero(l[1]) && is_zero(l[2])) continue;
        Rat val(0);
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b) val += l[a] * r.cstar[a][b] * l[b];
        if (!is_zero(val))
          c.fail("sampled line exactly on the fitted dual conic",
                 "P=" + dump1(to_json(P)) + " Q=" + dump1(to_json(Q)) +
                     " R=" + dump1(to_json(R)));
      }
    }
  }
  if (!c.pass) return;
  BiPolyQ u = BiPolyQ::var_u(), v = BiPolyQ::var_v();
  DualConicResult w = dual_conic_param1(u, v, BiPolyQ::constant(Rat(1)) + u * v);
  if (w.kind != DualConicKind::smooth_conic) {
    c.fail("worked dual conic kind", "P=u Q=v R=1+uv gave " + to_string(w.kind));
    return;
  }
  std::array<std::array<Rat, 3>, 3> want{};
  want[0][1] = want[1][0] = Rat(1);
  want[2][2] = Rat(-2);
  if (w.cstar != want)
    c.fail("worked dual conic matrix",
           "expected off-diagonal 1 and corner -2 after normalization");
}

// 6. The product family of the unit circle along the line Re w = 2 has
//    A = -1, B = 0, C = z zbar - 4 and envelope exactly x^2 + y^2 - 4 = 0.
void crit_envelope_worked(Ctx& c, int) {
  GenCircle unit = gc_circle(GaussRat(Rat(0)), Rat(1));
  MoebiusQ line2(Mat2Q{gauss_i(), GaussRat(Rat(2)), GaussRat(Rat(0)), GaussRat(Rat(1))});
  CircleFamily fam = family_product(unit, line2);
  bool okA = is_zero(fam.A.p) && is_zero(fam.A.q) && fam.A.r == Rat(-1);
  bool okB = herm_is_zero(fam.B);
  bool okC = fam.C2.p == Rat(1) && is_zero(fam.C2.q) && fam.C2.r == Rat(-4);
  if (!(okA && okB && okC)) {
    c.fail("worked family coefficients A=-1, B=0, C=zzbar-4",
           "A=" + dump1(to_json(fam.A)) + " B=" + dump1(to_json(fam.B)) +
               " C=" + dump1(to_json(fam.C2)));
    return;
  }
  Envelope env = envelope_cyclic(fam);
  if (env.kind != EnvelopeKind::cyclic) {
    c.fail("worked envelope is a genuine cyclic", "");
    return;
  }
  Dense15 want{};
  want[9] = Rat(1);
  want[11] = Rat(1);
  want[14] = Rat(-4);
  if (cyclic_to_dense(env.cyclic) != want)
    c.fail("worked envelope equals x^2+y^2-4", dump1(to_json(env.cyclic)));
}

// 7. For product-family pairs with nonzero discriminant, tangency samples of
//    each envelope satisfy the other family's cyclic within 1e-9 (scaled by
//    the quartic growth (1+|z|^2)^2); pencil configurations raise
//    pencil-has-no-envelope.
void crit_coincidence(Ctx& c, int d) {
  constexpr double kTol = 1e-9;
  int n = scaled(50, d);
  int made = 0, tries = 0;
  auto samples = [](const CircleFamilyF& fam) {
    std::vector<std::complex<double>> pts;
    for (int g = 0; g < 25 && pts.size() < 12; ++g) {
      auto t = family_tangency_points(fam, static_cast<double>(grid_int(g)));
      pts.insert(pts.end(), t.begin(), t.end());
    }
    return pts;
  };
  while (made < n && c.pass) {
    if (++tries > 200 * n) {
      c.fail("pair generator exhausted before reaching the target count", "");
      return;
    }
    Mat2Q d1 = rand_invertible(c.rng, 2), d2 = rand_invertible(c.rng, 2);
    MoebiusQ m1(d1), m2(d2);
    GenCircle om1 = moebius_image_circle(m1, gc_real_line());
    GenCircle om2 = moebius_image_circle(m2, gc_real_line());
    CircleFamily f1 = family_product(om1, m2);
    CircleFamily f2 = family_product(om2, m1);
    if (herm_is_zero(f1.A) || herm_is_zero(f2.A)) continue;
    Cyclic disc1 = family_discriminant(f1), disc2 = family_discriminant(f2);
    if (cyclic_is_zero(disc1) || cyclic_is_zero(disc2)) continue;
    auto p1 = samples(family_to_float(f1));
    auto p2 = samples(family_to_float(f2));
    if (p1.empty() || p2.empty()) continue;
    ++made;
    CyclicF k1 = cyclic_to_float(cyclic_normalize(disc1));
    CyclicF k2 = cyclic_to_float(cyclic_normalize(disc2));
    auto check = [&](const std::vector<std::complex<double>>& pts, const CyclicF& other,
                     const char* dir) {
      for (const auto& z : pts) {
        double growth = (1.0 + std::norm(z)) * (1.0 + std::norm(z));
        if (!(std::abs(cyclic_eval(other, z)) <= kTol * growth)) {
          c.fail("envelope tangency samples lie on the other family's cyclic",
                 std::string(dir) + " omega1=" + dump1(to_json(om1)) +
                     " omega2=" + dump1(to_json(om2)));
          return;
        }
      }
    };
    check(p1, k2, "family1->cyclic2");
    if (c.pass) check(p2, k1, "family2->cyclic1");
  }
  if (!c.pass) return;
  // Pencil inputs: proportional forms (point circle scaled along (v+1)/(1-v))
  // and the constant family; both must raise pencil-has-no-envelope.
  GenCircle point0{Rat(1), GaussRat(Rat(0)), Rat(0)};
  Mat2Q datas[2] = {
      Mat2Q{GaussRat(Rat(1)), GaussRat(Rat(1)), GaussRat(Rat(-1)), GaussRat(Rat(1))},
      Mat2Q::identity()};
  const char* labels[2] = {"proportional-forms family", "constant family"};
  for (int i = 0; i < 2; ++i) {
    bool ok = false;
    try {
      envelope_cyclic(family_product(point0, MoebiusQ(datas[i])));
    } catch (const DomainError& e) {
      ok = e.tag() == errtag::pencil_has_no_envelope;
    }
    if (!ok) c.fail("pencil input raises pencil-has-no-envelope", labels[i]);
  }
}

// 8. Isocurves of random first-kind surfaces classify as vertical parabolas or
//    flagged degenerates (line, point, too few samples); never as isotropic
//    ellipses and never as unrecognized curves.
void crit_isocurve(Ctx& c, int d) {
  int n = scaled(100, d);
  for (int i = 0; i < n && c.pass; ++i) {
    ParabolicSurface s(rand11(c.rng, 3), rand11(c.rng, 3), rand11_nonzero(c.rng, 3),
                       rand22(c.rng, 3));
    for (int ax = 0; ax < 2 && c.pass; ++ax)
      for (int g = 0; g < 2 && c.pass; ++g) {
        Rat val(grid_int(g));
        std::vector<AffinePoint3> pts;
        try {
          pts = isocurve_sample(s, ax ? Axis::V : Axis::U, val, 9);
        } catch (const DomainError& e) {
          if (std::string(e.tag()) == errtag::too_few_samples) continue;
          throw;
        }
        IsocurveClass k = classify_isocurve(pts);
        if (k != IsocurveClass::vertical_parabola && k != IsocurveClass::line &&
            k != IsocurveClass::point)
          c.fail("isocurve classifies as vertical parabola or flagged degenerate",
                 dump1(to_json(s)) + std::string(ax ? " v=" : " u=") + rat_str(val) + " got " +
                     to_string(k));
      }
  }
}

// 9. Over all 81 bilinear forms with coefficients in {0, 1, i}, rank1_factor
//    succeeds exactly when the determinant vanishes, and the returned factors
//    expand back to the form.
void crit_rank1(Ctx& c, int) {
  const GaussRat vals[3] = {GaussRat(Rat(0)), GaussRat(Rat(1)), gauss_i()};
  for (int idx = 0; idx < 81 && c.pass; ++idx) {
    int t = idx;
    GaussRat e[4];
    for (int k = 0; k < 4; ++k) {
      e[k] = vals[t % 3];
      t /= 3;
    }
    Mat2Q m{e[0], e[1], e[2], e[3]};
    bool det0 = is_zero(m.det());
    auto f = rank1_factor(m);
    if (f.has_value() != det0) {
      c.fail("rank-1 factorization succeeds exactly when the determinant vanishes",
             dump1(to_json(m)));
      continue;
    }
    if (!f) continue;
    bool expand = m.a == f->uf[0] * f->vf[0] && m.b == f->uf[0] * f->vf[1] &&
                  m.c == f->uf[1] * f->vf[0] && m.d == f->uf[1] * f->vf[1];
    if (!expand) c.fail("rank-1 factors expand back to the form", dump1(to_json(m)));
  }
}

struct Criterion {
  const char* name;
  double limit;
  void (*fn)(Ctx&, int);
};

constexpr Criterion kCriteria[] = {
    {"cylinder-identity", 10.0, crit_cylinder},
    {"tparam-roundtrip", 10.0, crit_roundtrip},
    {"projection-inverse", 1.0, crit_projection},
    {"classifier", 60.0, crit_classifier},
    {"dual-conic", 10.0, crit_dualconic},
    {"envelope-worked", 1.0, crit_envelope_worked},
    {"envelope-coincidence", 30.0, crit_coincidence},
    {"isocurve-parabola", 10.0, crit_isocurve},
    {"rank1-criterion", 1.0, crit_rank1},
};

}  // namespace

std::vector<CriterionResult> run_acceptance(int scale_div, std::uint64_t seed) {
  std::vector<CriterionResult> out;
  int idx = 0;
  for (const Criterion& cr : kCriteria) {
    Ctx c{SplitMix64(seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(++idx)), true, {}};
    auto t0 = std::chrono::steady_clock::now();
    try {
      cr.fn(c, scale_div);
    } catch (const DomainError& e) {
      c.fail(std::string("unexpected domain error [") + e.tag() + "]", e.what());
    } catch (const std::exception& e) {
      c.fail("unexpected exception", e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (scale_div == 1 && secs > cr.limit)
      c.fail("runtime budget exceeded",
             std::to_string(secs) + "s > " + std::to_string(cr.limit) + "s");
    out.push_back({cr.name, c.pass, secs, cr.limit, c.detail});
  }
  return out;
}

}  // namespace isurf
