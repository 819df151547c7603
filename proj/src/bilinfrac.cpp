#include "isurf/bilinfrac.hpp"

#include <cmath>
#include <limits>

namespace isurf {

const char* to_string(MapClass c) {
  switch (c) {
    case MapClass::uv: return "uv";
    case MapClass::u_plus_v: return "u_plus_v";
    case MapClass::u: return "u";
    case MapClass::v: return "v";
    case MapClass::zero: return "zero";
  }
  return "zero";
}

std::optional<Rank1Factors> rank1_factor(const Mat2Q& m) {
  if (!is_zero(m.det())) return std::nullopt;
  if (m.zero()) {
    // 0 = (0*u + 0)(0*v + 1); keeps "factors exist iff det = 0" unconditional.
    Rank1Factors z;
    z.uf[0] = GaussRat(Rat(0));
    z.uf[1] = GaussRat(Rat(0));
    z.vf[0] = GaussRat(Rat(0));
    z.vf[1] = GaussRat(Rat(1));
    return z;
  }
  Rank1Factors f;
  if (!is_zero(m.a) || !is_zero(m.b)) {
    // row 1 nonzero: N = (u + q0) style split with row 1 as the v-factor
    f.vf[0] = m.a;
    f.vf[1] = m.b;
    f.uf[0] = GaussRat(Rat(1));
    f.uf[1] = is_zero(m.a) ? m.d / m.b : m.c / m.a;
  } else {
    f.vf[0] = m.c;
    f.vf[1] = m.d;
    f.uf[0] = GaussRat(Rat(0));
    f.uf[1] = GaussRat(Rat(1));
  }
  return f;
}

std::optional<Jordan<GaussRat>> jordan_exact(const Mat2Q& m) {
  GaussRat tr = m.a + m.d;
  GaussRat det = m.det();
  GaussRat disc = tr * tr - GaussRat(Rat(4)) * det;
  GaussRat half(Rat(1, 2));

  if (is_zero(disc)) {
    GaussRat lam = tr * half;
    Mat2Q n{m.a - lam, m.b, m.c, m.d - lam};
    Jordan<GaussRat> jd;
    jd.lambda = jd.mu = lam;
    if (n.zero()) {
      jd.kind = JordanKind::scalar;
      jd.X = Mat2Q::identity();
      jd.J = m;
      return jd;
    }
    jd.kind = JordanKind::block;
    // w = N v for a column v with N v != 0; basis (w, v) brings m to the
    // standard block since N^2 = 0.
    GaussRat w0, w1, v0, v1;
    if (!is_zero(n.a) || !is_zero(n.c)) {
      v0 = GaussRat(Rat(1)); v1 = GaussRat(Rat(0));
      w0 = n.a; w1 = n.c;
    } else {
      v0 = GaussRat(Rat(0)); v1 = GaussRat(Rat(1));
      w0 = n.b; w1 = n.d;
    }
    Mat2Q xinv{w0, v0, w1, v1};
    jd.X = xinv.inverse();
    jd.J = Mat2Q{lam, GaussRat(Rat(1)), GaussRat(Rat(0)), lam};
    return jd;
  }

  auto s = gauss_sqrt(disc);
  if (!s) return std::nullopt;
  GaussRat lam = (tr + *s) * half;
  GaussRat mu = (tr - *s) * half;
  auto eigvec = [&](const GaussRat& ev, GaussRat& x, GaussRat& y) {
    x = m.b;
    y = ev - m.a;
    if (is_zero(x) && is_zero(y)) {
      x = ev - m.d;
      y = m.c;
    }
  };
  GaussRat p0, p1, q0, q1;
  eigvec(lam, p0, p1);
  eigvec(mu, q0, q1);
  Mat2Q xinv{p0, q0, p1, q1};
  Jordan<GaussRat> jd;
  jd.kind = JordanKind::distinct;
  jd.lambda = lam;
  jd.mu = mu;
  jd.X = xinv.inverse();
  jd.J = Mat2Q{lam, GaussRat(Rat(0)), GaussRat(Rat(0)), mu};
  return jd;
}

Jordan<std::complex<double>> jordan_float(const Mat2F& m, double tol) {
  using Cx = std::complex<double>;
  Cx tr = m.a + m.d;
  Cx s = std::sqrt(tr * tr - 4.0 * m.det());
  double gap = std::abs(s);

  Jordan<Cx> jd;
  if (gap > 10.0 * tol) {
    Cx lam = (tr + s) / 2.0, mu = (tr - s) / 2.0;
    auto eigvec = [&](const Cx& ev, Cx& x, Cx& y) {
      Cx x1 = m.b, y1 = ev - m.a;
      Cx x2 = ev - m.d, y2 = m.c;
      if (std::abs(x1) + std::abs(y1) >= std::abs(x2) + std::abs(y2)) { x = x1; y = y1; }
      else { x = x2; y = y2; }
    };
    Cx p0, p1, q0, q1;
    eigvec(lam, p0, p1);
    eigvec(mu, q0, q1);
    Mat2F xinv{p0, q0, p1, q1};
    jd.kind = JordanKind::distinct;
    jd.lambda = lam;
    jd.mu = mu;
    jd.X = xinv.inverse();
    jd.J = Mat2F{lam, Cx(0), Cx(0), mu};
    return jd;
  }

  jd.ill_conditioned = gap > tol;  // merged although the gap exceeds tol
  Cx lam = tr / 2.0;
  jd.lambda = jd.mu = lam;
  Mat2F n{m.a - lam, m.b, m.c, m.d - lam};
  double nn = std::abs(n.a) + std::abs(n.b) + std::abs(n.c) + std::abs(n.d);
  if (nn <= tol) {
    jd.kind = JordanKind::scalar;
    jd.X = Mat2F::identity();
    jd.J = Mat2F{lam, Cx(0), Cx(0), lam};
    return jd;
  }
  jd.kind = JordanKind::block;
  Cx w0, w1, v0, v1;
  if (std::abs(n.a) + std::abs(n.c) >= std::abs(n.b) + std::abs(n.d)) {
    v0 = Cx(1); v1 = Cx(0); w0 = n.a; w1 = n.c;
  } else {
    v0 = Cx(0); v1 = Cx(1); w0 = n.b; w1 = n.d;
  }
  Mat2F xinv{w0, v0, w1, v1};
  jd.X = xinv.inverse();
  jd.J = Mat2F{lam, Cx(1), Cx(0), lam};
  return jd;
}

namespace {

void fill_float_mirrors(CanonicalClass& r) {
  r.Mf = to_float(r.M);
  r.Cf = to_float(r.C);
  r.Df = to_float(r.D);
}

// Invertible-denominator case: conjugate A*B^{-1} to Jordan form J; with
// C = X^T and D = B^{-1} X^{-1} the map becomes F^J_I, whose class is read
// off J directly.
CanonicalClass classify_invertible_den(const BilinFracQ& F) {
  Mat2Q W = F.A * F.B.inverse();
  CanonicalClass r;

  auto je = jordan_exact(W);
  if (je) {
    const auto& jd = *je;
    switch (jd.kind) {
      case JordanKind::distinct:
        r.tag = MapClass::uv;
        r.C = jd.X.transpose();
        r.D = F.B.inverse() * jd.X.inverse();
        r.M = Mat2Q{GaussRat(Rat(-1)), jd.mu, GaussRat(Rat(1)), -jd.lambda};
        break;
      case JordanKind::scalar:
        r.tag = MapClass::zero;
        r.C = jd.X.transpose();
        r.D = F.B.inverse() * jd.X.inverse();
        r.M = Mat2Q{GaussRat(Rat(1)), -jd.lambda, GaussRat(Rat(0)), GaussRat(Rat(1))};
        break;
      case JordanKind::block:
        r.tag = MapClass::u_plus_v;
        r.C = jd.X.transpose() * Mat2Q::swap();
        r.D = F.B.inverse() * jd.X.inverse();
        r.M = Mat2Q{GaussRat(Rat(0)), GaussRat(Rat(1)), GaussRat(Rat(1)), -jd.lambda};
        break;
    }
    r.exact = true;
    fill_float_mirrors(r);
    return r;
  }

  // Irrational eigenvalue pair: the discriminant is exactly nonzero, so the
  // class is uv; only the witnesses need floats.
  auto jf = jordan_float(to_float(W), 0.0);
  using Cx = std::complex<double>;
  r.tag = MapClass::uv;
  r.exact = false;
  r.Cf = jf.X.transpose();
  r.Df = to_float(F.B.inverse()) * jf.X.inverse();
  r.Mf = Mat2F{Cx(-1), jf.mu, Cx(1), -jf.lambda};
  r.ill_conditioned = std::abs(jf.lambda - jf.mu) < 1e-9;
  return r;
}

}  // namespace

CanonicalClass classify(const BilinFracQ& F) {
  bool singA = is_zero(F.A.det());
  bool singB = is_zero(F.B.det());

  if (!singB) return classify_invertible_den(F);

  if (!singA) {
    // Swap roles: F^B_A = 1/F^A_B, then undo the reciprocal with the final
    // Moebius witness.
    BilinFracQ G(F.B, F.A);
    CanonicalClass r = classify_invertible_den(G);
    if (r.exact) {
      r.M = r.M * Mat2Q::swap();
      fill_float_mirrors(r);
    } else {
      r.Mf = r.Mf * Mat2F::swap();
    }
    return r;
  }

  // Both determinants vanish: the map splits as f_u(u) * f_v(v).
  CanonicalClass r;
  r.exact = true;
  if (F.A.zero()) {
    r.tag = MapClass::zero;
    r.M = Mat2Q::identity();
    r.C = Mat2Q::identity();
    r.D = Mat2Q::identity();
    fill_float_mirrors(r);
    return r;
  }

  Rank1Factors fa = *rank1_factor(F.A);
  Rank1Factors fb = *rank1_factor(F.B);
  Mat2Q U{fa.uf[0], fa.uf[1], fb.uf[0], fb.uf[1]};  // f_u = row1 / row2
  Mat2Q V{fa.vf[0], fa.vf[1], fb.vf[0], fb.vf[1]};
  bool u_const = is_zero(U.det());
  bool v_const = is_zero(V.det());

  auto const_ratio = [](const GaussRat& na, const GaussRat& nb, const GaussRat& da,
                        const GaussRat& db) {
    // value of (na*t + nb) / (da*t + db) when the two vectors are parallel
    return is_zero(da) ? nb / db : na / da;
  };

  if (!u_const && !v_const) {
    r.tag = MapClass::uv;
    r.C = U.inverse();
    r.D = V.inverse();
    r.M = Mat2Q::identity();
  } else if (!u_const && v_const) {
    GaussRat k = const_ratio(fa.vf[0], fa.vf[1], fb.vf[0], fb.vf[1]);
    r.tag = MapClass::u;
    r.C = U.inverse();
    r.D = Mat2Q::identity();
    r.M = Mat2Q{GaussRat(Rat(1)), GaussRat(Rat(0)), GaussRat(Rat(0)), k};
  } else if (u_const && !v_const) {
    GaussRat k = const_ratio(fa.uf[0], fa.uf[1], fb.uf[0], fb.uf[1]);
    r.tag = MapClass::v;
    r.C = Mat2Q::identity();
    r.D = V.inverse();
    r.M = Mat2Q{GaussRat(Rat(1)), GaussRat(Rat(0)), GaussRat(Rat(0)), k};
  } else {
    GaussRat ku = const_ratio(fa.uf[0], fa.uf[1], fb.uf[0], fb.uf[1]);
    GaussRat kv = const_ratio(fa.vf[0], fa.vf[1], fb.vf[0], fb.vf[1]);
    GaussRat k = ku * kv;
    r.tag = MapClass::zero;
    r.C = Mat2Q::identity();
    r.D = Mat2Q::identity();
    r.M = Mat2Q{GaussRat(Rat(1)), -k, GaussRat(Rat(0)), GaussRat(Rat(1))};
  }
  fill_float_mirrors(r);
  return r;
}

namespace {

CanonicalClass classify_float_invertible_den(const BilinFracF& F, double tol) {
  using Cx = std::complex<double>;
  Mat2F W = F.A * F.B.inverse();
  auto jf = jordan_float(W, tol);
  CanonicalClass r;
  r.exact = false;
  r.ill_conditioned = jf.ill_conditioned;
  switch (jf.kind) {
    case JordanKind::distinct:
      r.tag = MapClass::uv;
      r.Cf = jf.X.transpose();
      r.Df = F.B.inverse() * jf.X.inverse();
      r.Mf = Mat2F{Cx(-1), jf.mu, Cx(1), -jf.lambda};
      break;
    case JordanKind::scalar:
      r.tag = MapClass::zero;
      r.Cf = jf.X.transpose();
      r.Df = F.B.inverse() * jf.X.inverse();
      r.Mf = Mat2F{Cx(1), -jf.lambda, Cx(0), Cx(1)};
      break;
    case JordanKind::block:
      r.tag = MapClass::u_plus_v;
      r.Cf = jf.X.transpose() * Mat2F::swap();
      r.Df = F.B.inverse() * jf.X.inverse();
      r.Mf = Mat2F{Cx(0), Cx(1), Cx(1), -jf.lambda};
      break;
  }
  return r;
}

std::optional<std::pair<std::array<std::complex<double>, 2>, std::array<std::complex<double>, 2>>>
rank1_factor_float(const Mat2F& m, double tol) {
  using Cx = std::complex<double>;
  if (std::abs(m.det()) > tol) return std::nullopt;
  double r1 = std::abs(m.a) + std::abs(m.b);
  double r2 = std::abs(m.c) + std::abs(m.d);
  std::array<Cx, 2> uf, vf;
  if (r1 >= r2) {
    vf = {m.a, m.b};
    uf[0] = Cx(1);
    uf[1] = std::abs(m.a) >= std::abs(m.b) ? m.c / m.a : m.d / m.b;
  } else {
    vf = {m.c, m.d};
    uf[0] = Cx(0);
    uf[1] = Cx(1);
  }
  return std::make_pair(uf, vf);
}

}  // namespace

CanonicalClass classify_float(const BilinFracF& F, double tol) {
  using Cx = std::complex<double>;
  bool singA = std::abs(F.A.det()) <= tol;
  bool singB = std::abs(F.B.det()) <= tol;

  if (!singB) return classify_float_invertible_den(F, tol);
  if (!singA) {
    BilinFracF G(F.B, F.A);
    CanonicalClass r = classify_float_invertible_den(G, tol);
    r.Mf = r.Mf * Mat2F::swap();
    return r;
  }

  CanonicalClass r;
  r.exact = false;
  double anorm = std::abs(F.A.a) + std::abs(F.A.b) + std::abs(F.A.c) + std::abs(F.A.d);
  if (anorm <= tol) {
    r.tag = MapClass::zero;
    r.Mf = Mat2F::identity();
    r.Cf = Mat2F::identity();
    r.Df = Mat2F::identity();
    return r;
  }
  auto fa = rank1_factor_float(F.A, tol);
  auto fb = rank1_factor_float(F.B, tol);
  if (!fa || !fb)
    throw DomainError(errtag::internal_inconsistency, "float rank-1 factorization failed");
  Mat2F U{fa->first[0], fa->first[1], fb->first[0], fb->first[1]};
  Mat2F V{fa->second[0], fa->second[1], fb->second[0], fb->second[1]};
  bool u_const = std::abs(U.det()) <= tol;
  bool v_const = std::abs(V.det()) <= tol;
  auto const_ratio = [&](const Cx& na, const Cx& nb, const Cx& da, const Cx& db) {
    return std::abs(da) > std::abs(db) ? na / da : nb / db;
  };
  if (!u_const && !v_const) {
    r.tag = MapClass::uv;
    r.Cf = U.inverse();
    r.Df = V.inverse();
    r.Mf = Mat2F::identity();
  } else if (!u_const && v_const) {
    Cx k = const_ratio(fa->second[0], fa->second[1], fb->second[0], fb->second[1]);
    r.tag = MapClass::u;
    r.Cf = U.inverse();
    r.Df = Mat2F::identity();
    r.Mf = Mat2F{Cx(1), Cx(0), Cx(0), k};
  } else if (u_const && !v_const) {
    Cx k = const_ratio(fa->first[0], fa->first[1], fb->first[0], fb->first[1]);
    r.tag = MapClass::v;
    r.Cf = Mat2F::identity();
    r.Df = V.inverse();
    r.Mf = Mat2F{Cx(1), Cx(0), Cx(0), k};
  } else {
    Cx ku = const_ratio(fa->first[0], fa->first[1], fb->first[0], fb->first[1]);
    Cx kv = const_ratio(fa->second[0], fa->second[1], fb->second[0], fb->second[1]);
    r.tag = MapClass::zero;
    r.Cf = Mat2F::identity();
    r.Df = Mat2F::identity();
    r.Mf = Mat2F{Cx(1), -ku * kv, Cx(0), Cx(1)};
  }
  return r;
}

BilinFracQ topview_map(const IsoCircleSurface& s) {
  BiPolyC num = complexify(s.P1) + BiPolyC::constant(gauss_i()) * complexify(s.P2);
  BiPolyC den = complexify(s.P0) - BiPolyC::constant(gauss_i()) * complexify(s.P3);
  Mat2Q A{num.coeff(1, 1), num.coeff(1, 0), num.coeff(0, 1), num.coeff(0, 0)};
  Mat2Q B{den.coeff(1, 1), den.coeff(1, 0), den.coeff(0, 1), den.coeff(0, 0)};
  return {A, B};
}

double witness_residual(const BilinFracQ& F, const CanonicalClass& cls, int pairs, int* used) {
  auto grid = [](int idx) {
    long k = (idx + 1) / 2;
    return idx % 2 ? k : -k;
  };
  constexpr int kWidth = 25;
  int checked = 0;
  double worst = 0.0;
  for (int idx = 0; idx < kWidth * kWidth && checked < pairs; ++idx) {
    long ui = grid(idx % kWidth), vi = grid(idx / kWidth);
    if (cls.exact) {
      GaussRat u{rat(ui)}, v{rat(vi)};
      MoebiusQ mc(cls.C), md(cls.D), mm(cls.M);
      auto cu = mc.apply(u);
      auto dv = md.apply(v);
      if (!cu || !dv) continue;
      auto fv = F.eval(*cu, *dv);
      if (!fv) continue;
      auto out = mm.apply(*fv);
      if (!out) continue;
      ++checked;
      if (!(*out == canonical_value(cls.tag, u, v)))
        worst = std::numeric_limits<double>::infinity();
    } else {
      using Cx = std::complex<double>;
      Cx u(static_cast<double>(ui), 0.0), v(static_cast<double>(vi), 0.0);
      BilinFracF Ff(to_float(F.A), to_float(F.B));
      auto safe_apply = [](const Mat2F& m, const Cx& z) -> std::optional<Cx> {
        Cx den = m.c * z + m.d;
        if (std::abs(den) < 1e-9) return std::nullopt;
        return (m.a * z + m.b) / den;
      };
      auto cu = safe_apply(cls.Cf, u);
      auto dv = safe_apply(cls.Df, v);
      if (!cu || !dv) continue;
      Cx den = Ff.B.bilinear(*cu, *dv);
      if (std::abs(den) < 1e-9) continue;
      Cx fv = Ff.A.bilinear(*cu, *dv) / den;
      auto out = safe_apply(cls.Mf, fv);
      if (!out) continue;
      ++checked;
      worst = std::max(worst, std::abs(*out - canonical_value(cls.tag, u, v)));
    }
  }
  if (used) *used = checked;
  return worst;
}

}  // namespace isurf
