#pragma once

#include <complex>
#include <optional>

#include "isurf/bipoly.hpp"
#include "isurf/surface.hpp"

namespace isurf {

inline bool is_zero(const std::complex<double>& z) { return z == std::complex<double>(0.0); }

// 2x2 matrix over a complex field C (GaussRat exactly, std::complex<double>
// in the float fallback), rows (a,b) and (c,d).
//
// As a coefficient matrix of a bilinear form N(u,v) = a*uv + b*u + c*v + d,
// i.e. N = (u 1) * M * (v 1)^T; as a Moebius map, f(z) = (az+b)/(cz+d).
template <class C>
struct Mat2 {
  C a, b, c, d;

  static Mat2 identity() { return {C(1), C(0), C(0), C(1)}; }
  static Mat2 swap() { return {C(0), C(1), C(1), C(0)}; }

  C det() const { return a * d - b * c; }
  bool zero() const { return is_zero(a) && is_zero(b) && is_zero(c) && is_zero(d); }

  Mat2 operator*(const Mat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  Mat2 transpose() const { return {a, c, b, d}; }
  Mat2 inverse() const {
    C dt = det();
    if (is_zero(dt)) throw DomainError(errtag::degenerate_input, "singular 2x2 matrix");
    return {d / dt, -b / dt, -c / dt, a / dt};
  }
  bool operator==(const Mat2& o) const {
    return a == o.a && b == o.b && c == o.c && d == o.d;
  }

  // Bilinear form value N(u,v).
  C bilinear(const C& u, const C& v) const { return a * u * v + b * u + c * v + d; }
};

using Mat2Q = Mat2<GaussRat>;
using Mat2F = Mat2<std::complex<double>>;

inline Mat2F to_float(const Mat2Q& m) {
  return {to_complex(m.a), to_complex(m.b), to_complex(m.c), to_complex(m.d)};
}

// Moebius transformation f(z) = (az+b)/(cz+d), ad - bc != 0.
template <class C>
struct Moebius {
  Mat2<C> m;
  explicit Moebius(Mat2<C> mat) : m(std::move(mat)) {
    if (is_zero(m.det()))
      throw DomainError(errtag::degenerate_input, "Moebius map with zero determinant");
  }
  // nullopt at the pole z = -d/c.
  std::optional<C> apply(const C& z) const {
    C den = m.c * z + m.d;
    if (is_zero(den)) return std::nullopt;
    return (m.a * z + m.b) / den;
  }
  Moebius inverse() const { return Moebius(Mat2<C>{m.d, -m.b, -m.c, m.a}); }
  Moebius compose(const Moebius& o) const { return Moebius(m * o.m); }  // this after o
};

using MoebiusQ = Moebius<GaussRat>;
using MoebiusF = Moebius<std::complex<double>>;

// Bilinear-fractional map F(u,v) = N_A(u,v) / N_B(u,v); B must be nonzero.
template <class C>
struct BilinFrac {
  Mat2<C> A, B;
  BilinFrac(Mat2<C> num, Mat2<C> den) : A(std::move(num)), B(std::move(den)) {
    if (B.zero()) throw DomainError(errtag::degenerate_input, "zero denominator matrix");
  }
  // nullopt at poles of the map.
  std::optional<C> eval(const C& u, const C& v) const {
    C den = B.bilinear(u, v);
    if (is_zero(den)) return std::nullopt;
    return A.bilinear(u, v) / den;
  }
};

using BilinFracQ = BilinFrac<GaussRat>;
using BilinFracF = BilinFrac<std::complex<double>>;

// Parameter substitution: F'(u,v) = F(f_C(u), f_D(v)) has coefficient
// matrices (C^T A D, C^T B D).
template <class C>
BilinFrac<C> transform(const BilinFrac<C>& F, const Mat2<C>& Cm, const Mat2<C>& Dm) {
  return {Cm.transpose() * F.A * Dm, Cm.transpose() * F.B * Dm};
}

struct Rank1Factors {
  // N(u,v) = (uf[0]*u + uf[1]) * (vf[0]*v + vf[1])
  GaussRat uf[2];
  GaussRat vf[2];
};

// Factor a coefficient matrix of determinant zero as an outer product,
// splitting the bilinear form into u- and v-linear factors.  nullopt when
// det != 0; the zero matrix factors trivially with a zero u-factor.
std::optional<Rank1Factors> rank1_factor(const Mat2Q& m);

enum class JordanKind { distinct, scalar, block };

template <class C>
struct Jordan {
  JordanKind kind;
  Mat2<C> J, X;  // J = X * M * X^{-1}
  C lambda, mu;  // eigenvalues; mu == lambda unless kind == distinct
  bool ill_conditioned = false;
};

// Exact Jordan form over Q(i); nullopt when the eigenvalues are irrational
// (discriminant not a Gaussian-rational square).
std::optional<Jordan<GaussRat>> jordan_exact(const Mat2Q& m);

// Floating Jordan form. Eigenvalues closer than 10*tol are merged (with an
// ill-conditioning warning when the gap still exceeds tol).
Jordan<std::complex<double>> jordan_float(const Mat2F& m, double tol);

enum class MapClass { uv, u_plus_v, u, v, zero };
const char* to_string(MapClass c);

// Classification result: tag plus Moebius witnesses M, C, D with
// f_M(F(f_C(u), f_D(v))) equal to the canonical form named by the tag.
// The tag is always exact for Gaussian-rational input; the witnesses are
// exact when `exact` is set and otherwise only the float mirrors Mf, Cf, Df
// are meaningful.
struct CanonicalClass {
  MapClass tag;
  bool exact = true;
  Mat2Q M, C, D;
  Mat2F Mf, Cf, Df;
  bool ill_conditioned = false;
};

CanonicalClass classify(const BilinFracQ& F);

// Float-input variant; all zero tests use tol.
CanonicalClass classify_float(const BilinFracF& F, double tol);

// Canonical form value for a tag.
template <class C>
C canonical_value(MapClass tag, const C& u, const C& v) {
  switch (tag) {
    case MapClass::uv: return u * v;
    case MapClass::u_plus_v: return u + v;
    case MapClass::u: return u;
    case MapClass::v: return v;
    case MapClass::zero: return C(0);
  }
  return C(0);
}

// Top-view map of a circle-form surface: numerator coefficients from
// P1 + i*P2, denominator from P0 - i*P3.
BilinFracQ topview_map(const IsoCircleSurface& s);

// Largest witness residual |f_M(F(f_C(u), f_D(v))) - canonical(u,v)| over
// pole-free sample pairs from the integer grid; exact witnesses compare
// exactly and report 0. Returns the number of pairs checked through `used`.
double witness_residual(const BilinFracQ& F, const CanonicalClass& cls, int pairs,
                        int* used = nullptr);

}  // namespace isurf
