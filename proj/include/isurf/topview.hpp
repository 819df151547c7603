#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "isurf/bilinfrac.hpp"
#include "isurf/errors.hpp"
#include "isurf/gaussian.hpp"
#include "isurf/rational.hpp"

namespace isurf {

// Scalar helpers shared by the exact kit (Rat, GaussRat) and the float kit
// (double, std::complex<double>).  The `eps` argument is ignored by the exact
// overloads.

inline Rat re_of(const GaussRat& z) { return z.re; }
inline Rat im_of(const GaussRat& z) { return z.im; }
inline GaussRat conj_of(const GaussRat& z) { return z.conj(); }
inline bool scalar_zero(const Rat& x, double) { return sgn(x) == 0; }
inline bool scalar_zero(const GaussRat& z, double) { return is_zero(z); }

inline double re_of(const std::complex<double>& z) { return z.real(); }
inline double im_of(const std::complex<double>& z) { return z.imag(); }
inline std::complex<double> conj_of(const std::complex<double>& z) { return std::conj(z); }
inline bool scalar_zero(double x, double eps) { return std::abs(x) <= eps; }
inline bool scalar_zero(const std::complex<double>& z, double eps) { return std::abs(z) <= eps; }

// Generalized circle: the real locus of alpha*z*zbar + beta*z + conj(beta)*zbar + gamma = 0
// with alpha, gamma real.  alpha == 0 gives a line, alpha != 0 a circle
// (possibly a point or empty when beta*conj(beta) - alpha*gamma <= 0).
template <class R, class C>
struct GenCircleT {
  R alpha{};
  C beta{};
  R gamma{};
};

using GenCircle = GenCircleT<Rat, GaussRat>;
using GenCircleF = GenCircleT<double, std::complex<double>>;

// Hermitian binary form p*z*zbar + q*z + conj(q)*zbar + r; same data as a
// generalized circle but used as a polynomial value, not a locus.
template <class R, class C>
struct HermFormT {
  R p{};
  C q{};
  R r{};
};

using HermForm = HermFormT<Rat, GaussRat>;
using HermFormF = HermFormT<double, std::complex<double>>;

// Quadratic family of circles: member at parameter v is A*v^2 + B*v + C = 0.
template <class R, class C>
struct CircleFamilyT {
  HermFormT<R, C> A, B, C2;
};

using CircleFamily = CircleFamilyT<Rat, GaussRat>;
using CircleFamilyF = CircleFamilyT<double, std::complex<double>>;

// Real bidegree-(2,2) polynomial in (z, zbar):
//   c22 (z zbar)^2 + c21 z^2 zbar + conj(c21) z zbar^2 + c20 z^2 + conj(c20) zbar^2
//   + c11 z zbar + c10 z + conj(c10) zbar + c00
// Equivalently a cyclic curve a(x^2+y^2)^2 + (x^2+y^2)(bx+cy) + Q(x,y).
template <class R, class C>
struct CyclicT {
  R c22{};
  C c21{};
  C c20{};
  R c11{};
  C c10{};
  R c00{};
};

using Cyclic = CyclicT<Rat, GaussRat>;
using CyclicF = CyclicT<double, std::complex<double>>;

// Dense degree-4 real-coefficient vector in the fixed monomial order
// [x^4, x^3 y, x^2 y^2, x y^3, y^4, x^3, x^2 y, x y^2, y^3,
//  x^2, x y, y^2, x, y, 1].
using Dense15 = std::array<Rat, 15>;
using Dense15F = std::array<double, 15>;

template <class R, class C>
R herm_eval(const HermFormT<R, C>& h, const C& z) {
  return h.p * re_of(z * conj_of(z)) + R(2) * re_of(h.q * z) + h.r;
}

template <class R, class C>
R gc_eval(const GenCircleT<R, C>& w, const C& z) {
  return w.alpha * re_of(z * conj_of(z)) + R(2) * re_of(w.beta * z) + w.gamma;
}

template <class R, class C>
bool herm_is_zero(const HermFormT<R, C>& h, double eps = 0.0) {
  return scalar_zero(h.p, eps) && scalar_zero(h.q, eps) && scalar_zero(h.r, eps);
}

template <class R, class C>
GenCircleT<R, C> herm_to_gc(const HermFormT<R, C>& h) {
  return {h.p, h.q, h.r};
}

template <class R, class C>
HermFormT<R, C> gc_to_herm(const GenCircleT<R, C>& w) {
  return {w.alpha, w.beta, w.gamma};
}

// Line ax + by + c = 0 as a generalized circle.  With beta = (a - b i)/2 the
// equation value beta*z + conj(beta)*zbar + gamma equals ax + by + c exactly.
GenCircle gc_line(const Rat& a, const Rat& b, const Rat& c);
GenCircle gc_real_line();

// Circle with rational center and squared radius.
GenCircle gc_circle(const GaussRat& center, const Rat& radius_sq);

bool gc_is_line(const GenCircle& w);
// beta*conj(beta) - alpha*gamma: positive for a genuine circle/line locus,
// zero for a point circle, negative for an empty locus (alpha != 0).
Rat gc_locus_discriminant(const GenCircle& w);

bool circle_contains(const GenCircle& w, const GaussRat& z);
bool circle_contains(const GenCircleF& w, const std::complex<double>& z, double tol);

GenCircleF gc_to_float(const GenCircle& w);
HermFormF herm_to_float(const HermForm& h);
CircleFamilyF family_to_float(const CircleFamily& fam);
CyclicF cyclic_to_float(const Cyclic& k);

// Image of a generalized circle under the Moebius map f(z) = (az+b)/(cz+d).
template <class R, class C>
GenCircleT<R, C> moebius_image_circle(const Moebius<C>& f, const GenCircleT<R, C>& w);

// Family { w(v) * omega1 : v real }, w(v) = (av+b)/(cv+d) tracing omega2.
template <class R, class C>
CircleFamilyT<R, C> family_product(const GenCircleT<R, C>& omega1, const Moebius<C>& omega2);

// Family { w(v) + omega1 : v real }.
template <class R, class C>
CircleFamilyT<R, C> family_sum(const GenCircleT<R, C>& omega1, const Moebius<C>& omega2);

template <class R, class C>
HermFormT<R, C> family_member(const CircleFamilyT<R, C>& fam, const R& v);

// Product of two Hermitian forms, a cyclic.
template <class R, class C>
CyclicT<R, C> herm_mul(const HermFormT<R, C>& g, const HermFormT<R, C>& h);

template <class R, class C>
CyclicT<R, C> cyclic_sub(const CyclicT<R, C>& a, const CyclicT<R, C>& b);

template <class R, class C>
CyclicT<R, C> cyclic_scale(const CyclicT<R, C>& k, const R& s);

template <class R, class C>
bool cyclic_is_zero(const CyclicT<R, C>& k, double eps = 0.0);

template <class R, class C>
R cyclic_eval(const CyclicT<R, C>& k, const C& z);

// B^2 - 4*A*C of the family, the envelope candidate.
template <class R, class C>
CyclicT<R, C> family_discriminant(const CircleFamilyT<R, C>& fam);

// Divide by the first nonzero coefficient in the fixed dense order above.
Cyclic cyclic_normalize(const Cyclic& k);
CyclicF cyclic_normalize(const CyclicF& k, double eps = 1e-12);

Dense15 cyclic_to_dense(const Cyclic& k);
Dense15F cyclic_to_dense(const CyclicF& k);
// Validates the cyclic shape constraints (x^4 = y^4 = a, x^2y^2 = 2a,
// x^3y = xy^3 = 0, x^3 = xy^2, x^2y = y^3); throws parse-error otherwise.
Cyclic cyclic_from_dense(const Dense15& d);

// Substitutes the inverse of f into the cyclic: result(w) = k(f^{-1}(w)) up to
// the denominator power, so zero loci correspond under f.
template <class R, class C>
CyclicT<R, C> cyclic_transform(const CyclicT<R, C>& k, const Moebius<C>& f);

enum class EnvelopeKind {
  cyclic,        // genuine quadratic family, envelope = discriminant cyclic
  linear_family, // A == 0: members B v + C sweep a pencil; the stationary
                 // locus is the base point set {B = 0} & {C = 0}
};

template <class R, class C>
struct EnvelopeT {
  EnvelopeKind kind{EnvelopeKind::cyclic};
  CyclicT<R, C> cyclic{};
  HermFormT<R, C> base_b{}, base_c{}; // linear_family only
};

using Envelope = EnvelopeT<Rat, GaussRat>;
using EnvelopeF = EnvelopeT<double, std::complex<double>>;

// Throws pencil-has-no-envelope exactly when the discriminant vanishes
// identically (constant families included).
Envelope envelope_cyclic(const CircleFamily& fam);
EnvelopeF envelope_cyclic(const CircleFamilyF& fam, double eps = 1e-12);

enum class SumShape { concentric_circles, single_circle, parallel_lines };
std::string to_string(SumShape s);

// Classifies the envelope of a sum family from the two circle types; throws
// pencil-has-no-envelope for line + line.
SumShape sum_envelope_shape(const GenCircle& omega1, const GenCircle& omega2);

// Float sampling of the locus (circles: angular sweep; lines: parameter sweep).
std::vector<std::complex<double>> gc_sample(const GenCircleF& w, int count);

// Tangency points of the member at v with the envelope: common zeros of
// member(v) and the v-derivative 2Av + B.  Float; may be empty.
std::vector<std::complex<double>> family_tangency_points(const CircleFamilyF& fam, double v);

// ---- Dual conic of the line families of a doubly ruled parametrization ----

// Top-view line of the isocurve v = v0 under (u,v) -> (P:Q:R): cross product
// of the u-linear and constant coefficient 3-vectors at v0.
std::array<Rat, 3> topview_line_v(const BiPolyQ& P, const BiPolyQ& Q, const BiPolyQ& R, const Rat& v0);
std::array<Rat, 3> topview_line_u(const BiPolyQ& P, const BiPolyQ& Q, const BiPolyQ& R, const Rat& u0);

enum class DualConicKind { smooth_conic, two_pencils, single_pencil, single_line_set };
std::string to_string(DualConicKind k);

struct DualConicResult {
  DualConicKind kind{};
  // Symmetric 3x3 matrix of the fitted dual form (smooth_conic, two_pencils),
  // normalized so its first nonzero entry in row-major order is 1.
  std::array<std::array<Rat, 3>, 3> cstar{};
  // two_pencils: the vertices, exact when the splitting field is rational.
  bool vertices_exact{false};
  std::array<Rat, 3> vertex1{}, vertex2{};
  std::array<std::complex<double>, 3> vertex1f{}, vertex2f{};
  // single_pencil: common point of all sampled lines.
  std::array<Rat, 3> pencil_vertex{};
  // single_line_set: the one line every sample equals.
  std::array<Rat, 3> line{};
};

// Fits the dual conic containing the top-view lines of both isocurve families
// and verifies every sampled line lies on it exactly.
DualConicResult dual_conic_param1(const BiPolyQ& P, const BiPolyQ& Q, const BiPolyQ& R);

// ---- Full top-view pipeline for a second-kind parametrization ----

struct TopviewReport {
  CanonicalClass cls;
  // Exact data present when the classification witnesses are exact.
  bool exact{false};
  std::optional<GenCircle> omega1, omega2;
  std::optional<GenCircleF> omega1f, omega2f;
  // Envelopes of the two isocurve families, transported back through the
  // classifying Moebius map.  Absent when the family is a pencil.
  std::optional<Cyclic> envelope1, envelope2;
  std::optional<CyclicF> envelope1f, envelope2f;
  std::optional<bool> same_cyclic;
  std::vector<std::string> notes;
};

// Classifies the bilinear-fractional top view, builds the two circle families
// (product form for class uv, sum form for u_plus_v), computes envelopes, and
// cross-checks tangency samples of each envelope against the other family's
// cyclic within tol.  Classes u, v, zero throw top-view-degenerate.
TopviewReport top2_pipeline(const BilinFracQ& F, double tol = 1e-9);

// Deterministic Moebius data whose image of the real line is the given locus:
// picks the three smallest-height rational points and maps (0, 1, infinity)
// to them.  Throws degenerate-input when no three small rational points exist.
Moebius<GaussRat> gc_to_moebius(const GenCircle& w);

}  // namespace isurf
