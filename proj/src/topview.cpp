#include "isurf/topview.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "isurf/bipoly.hpp"
#include "isurf/linalg.hpp"

namespace isurf {

namespace {

long grid_value(int idx) {
  long k = (idx + 1) / 2;
  return idx % 2 ? k : -k;
}

}  // namespace

// ---- Generalized circle constructors and basics ----

GenCircle gc_line(const Rat& a, const Rat& b, const Rat& c) {
  if (is_zero(a) && is_zero(b))
    throw DomainError(errtag::degenerate_input, "line with zero normal vector");
  // beta*z + conj(beta)*zbar = 2*Re(beta*z) = ax + by for beta = (a - b i)/2,
  // so the equation value is exactly ax + by + c.
  return {Rat(0), GaussRat(Rat(a / 2), Rat(-b / 2)), c};
}

GenCircle gc_real_line() { return gc_line(Rat(0), Rat(1), Rat(0)); }

GenCircle gc_circle(const GaussRat& center, const Rat& radius_sq) {
  // |z - m|^2 - r^2 = z zbar - conj(m) z - m zbar + |m|^2 - r^2
  return {Rat(1), -center.conj(), Rat(center.norm() - radius_sq)};
}

bool gc_is_line(const GenCircle& w) { return is_zero(w.alpha); }

Rat gc_locus_discriminant(const GenCircle& w) { return w.beta.norm() - w.alpha * w.gamma; }

bool circle_contains(const GenCircle& w, const GaussRat& z) {
  return is_zero(gc_eval(w, z));
}

bool circle_contains(const GenCircleF& w, const std::complex<double>& z, double tol) {
  return std::abs(gc_eval(w, z)) <= tol;
}

GenCircleF gc_to_float(const GenCircle& w) {
  return {to_double(w.alpha), to_complex(w.beta), to_double(w.gamma)};
}

HermFormF herm_to_float(const HermForm& h) {
  return {to_double(h.p), to_complex(h.q), to_double(h.r)};
}

CircleFamilyF family_to_float(const CircleFamily& fam) {
  return {herm_to_float(fam.A), herm_to_float(fam.B), herm_to_float(fam.C2)};
}

CyclicF cyclic_to_float(const Cyclic& k) {
  return {to_double(k.c22), to_complex(k.c21), to_complex(k.c20),
          to_double(k.c11), to_complex(k.c10), to_double(k.c00)};
}

// ---- Templated circle/family/cyclic algebra ----

template <class R, class C>
GenCircleT<R, C> moebius_image_circle(const Moebius<C>& f, const GenCircleT<R, C>& w) {
  const C &a = f.m.a, &b = f.m.b, &c = f.m.c, &d = f.m.d;
  const C be(w.beta);
  const C al(w.alpha), ga(w.gamma);
  // Substitute z = f^{-1}(w0) = (d w0 - b)/(a - c w0) and clear denominators.
  R alpha2 = w.alpha * re_of(d * conj_of(d)) - R(2) * re_of(be * d * conj_of(c)) +
             w.gamma * re_of(c * conj_of(c));
  C beta2 = be * conj_of(a) * d + conj_of(be) * conj_of(b) * c - al * d * conj_of(b) -
            ga * conj_of(a) * c;
  R gamma2 = w.alpha * re_of(b * conj_of(b)) - R(2) * re_of(be * conj_of(a) * b) +
             w.gamma * re_of(a * conj_of(a));
  return {alpha2, beta2, gamma2};
}

template <class R, class C>
CircleFamilyT<R, C> family_product(const GenCircleT<R, C>& omega1, const Moebius<C>& omega2) {
  const C &a = omega2.m.a, &b = omega2.m.b, &c = omega2.m.c, &d = omega2.m.d;
  const C be(omega1.beta);
  // Member at v is w * omega1 with w = (av+b)/(cv+d); clearing |cv+d|^2 and
  // collecting v^2, v, 1 gives three Hermitian forms.
  HermFormT<R, C> A{omega1.alpha * re_of(c * conj_of(c)), be * conj_of(a) * c,
                    omega1.gamma * re_of(a * conj_of(a))};
  HermFormT<R, C> B{omega1.alpha * R(2) * re_of(c * conj_of(d)),
                    be * (conj_of(a) * d + conj_of(b) * c),
                    omega1.gamma * R(2) * re_of(a * conj_of(b))};
  HermFormT<R, C> C2{omega1.alpha * re_of(d * conj_of(d)), be * conj_of(b) * d,
                     omega1.gamma * re_of(b * conj_of(b))};
  return {A, B, C2};
}

template <class R, class C>
CircleFamilyT<R, C> family_sum(const GenCircleT<R, C>& omega1, const Moebius<C>& omega2) {
  const C &a = omega2.m.a, &b = omega2.m.b, &c = omega2.m.c, &d = omega2.m.d;
  const C be(omega1.beta), al(omega1.alpha);
  // omega1(z - w) with w = (av+b)/(cv+d), cleared by (cv+d)(conj): the member
  // is s(v)*omega1(z) - t(v)*(alpha z + conj(beta)) - conj(t)(v)*(alpha zbar + beta)
  // + r(v)*alpha with s = (cv+d)(conj), t = (conj(a)v+conj(b))(cv+d),
  // r = (av+b)(conj).
  R s2 = re_of(c * conj_of(c)), s1 = R(2) * re_of(c * conj_of(d)), s0 = re_of(d * conj_of(d));
  C t2 = conj_of(a) * c, t1 = conj_of(a) * d + conj_of(b) * c, t0 = conj_of(b) * d;
  R r2 = re_of(a * conj_of(a)), r1 = R(2) * re_of(a * conj_of(b)), r0 = re_of(b * conj_of(b));
  auto herm_k = [&](const R& sk, const C& tk, const R& rk) {
    return HermFormT<R, C>{R(omega1.alpha * sk), be * C(sk) - al * tk,
                           R(omega1.gamma * sk - R(2) * re_of(tk * conj_of(be)) +
                             omega1.alpha * rk)};
  };
  return {herm_k(s2, t2, r2), herm_k(s1, t1, r1), herm_k(s0, t0, r0)};
}

template <class R, class C>
HermFormT<R, C> family_member(const CircleFamilyT<R, C>& fam, const R& v) {
  R v2 = v * v;
  return {R(fam.A.p * v2 + fam.B.p * v + fam.C2.p),
          fam.A.q * C(v2) + fam.B.q * C(v) + fam.C2.q,
          R(fam.A.r * v2 + fam.B.r * v + fam.C2.r)};
}

template <class R, class C>
CyclicT<R, C> herm_mul(const HermFormT<R, C>& g, const HermFormT<R, C>& h) {
  CyclicT<R, C> k;
  k.c22 = g.p * h.p;
  k.c21 = g.q * C(h.p) + h.q * C(g.p);
  k.c20 = g.q * h.q;
  k.c11 = g.p * h.r + h.p * g.r + R(2) * re_of(g.q * conj_of(h.q));
  k.c10 = g.q * C(h.r) + h.q * C(g.r);
  k.c00 = g.r * h.r;
  return k;
}

template <class R, class C>
CyclicT<R, C> cyclic_sub(const CyclicT<R, C>& a, const CyclicT<R, C>& b) {
  return {R(a.c22 - b.c22), a.c21 - b.c21, a.c20 - b.c20,
          R(a.c11 - b.c11), a.c10 - b.c10, R(a.c00 - b.c00)};
}

template <class R, class C>
CyclicT<R, C> cyclic_scale(const CyclicT<R, C>& k, const R& s) {
  return {R(k.c22 * s), k.c21 * C(s), k.c20 * C(s), R(k.c11 * s), k.c10 * C(s), R(k.c00 * s)};
}

template <class R, class C>
bool cyclic_is_zero(const CyclicT<R, C>& k, double eps) {
  return scalar_zero(k.c22, eps) && scalar_zero(k.c21, eps) && scalar_zero(k.c20, eps) &&
         scalar_zero(k.c11, eps) && scalar_zero(k.c10, eps) && scalar_zero(k.c00, eps);
}

template <class R, class C>
R cyclic_eval(const CyclicT<R, C>& k, const C& z) {
  R zz = re_of(z * conj_of(z));
  return k.c22 * zz * zz + R(2) * re_of(k.c21 * z) * zz + R(2) * re_of(k.c20 * z * z) +
         k.c11 * zz + R(2) * re_of(k.c10 * z) + k.c00;
}

template <class R, class C>
CyclicT<R, C> family_discriminant(const CircleFamilyT<R, C>& fam) {
  return cyclic_sub(herm_mul(fam.B, fam.B), cyclic_scale(herm_mul(fam.A, fam.C2), R(4)));
}

namespace {

inline double struct_eps(const Cyclic&) { return 0.0; }

inline double struct_eps(const CyclicF& k) {
  double m = std::abs(k.c22);
  m = std::max(m, std::abs(k.c21));
  m = std::max(m, std::abs(k.c20));
  m = std::max(m, std::abs(k.c11));
  m = std::max(m, std::abs(k.c10));
  m = std::max(m, std::abs(k.c00));
  return 1e-12 * m;
}

}  // namespace

template <class R, class C>
CyclicT<R, C> cyclic_transform(const CyclicT<R, C>& k, const Moebius<C>& f) {
  const C &a = f.m.a, &b = f.m.b, &c = f.m.c, &d = f.m.d;
  const double eps = struct_eps(k);
  // Substituting z = f^{-1}(w) = (dw-b)/(a-cw) and clearing |a-cw|^{2*jmax},
  // where jmax is the (z,zbar)-degree actually present in k.  Clearing by the
  // minimal power keeps degrees honest: a circle (jmax = 1) maps to a circle,
  // without a spurious |a-cw|^2 factor.
  int jmax = 0;
  if (!scalar_zero(k.c22, eps) || !scalar_zero(k.c21, eps) || !scalar_zero(k.c20, eps))
    jmax = 2;
  else if (!scalar_zero(k.c11, eps) || !scalar_zero(k.c10, eps))
    jmax = 1;
  // alpha[j] holds the w-coefficients of (dw-b)^j (a-cw)^{jmax-j}.
  std::array<std::array<C, 3>, 3> alpha{};
  auto mul_linear = [](std::array<C, 3>& poly, const C& c0, const C& c1) {
    std::array<C, 3> next{};
    for (int r = 0; r < 3; ++r) {
      next[r] += c0 * poly[r];
      if (r + 1 < 3) next[r + 1] += c1 * poly[r];
    }
    poly = next;
  };
  for (int j = 0; j <= jmax; ++j) {
    std::array<C, 3> poly{};
    poly[0] = C(1);
    for (int t = 0; t < j; ++t) mul_linear(poly, -b, d);
    for (int t = 0; t < jmax - j; ++t) mul_linear(poly, a, -c);
    alpha[j] = poly;
  }
  C cm[3][3];
  cm[2][2] = C(k.c22);
  cm[2][1] = k.c21;
  cm[1][2] = conj_of(k.c21);
  cm[2][0] = k.c20;
  cm[0][2] = conj_of(k.c20);
  cm[1][1] = C(k.c11);
  cm[1][0] = k.c10;
  cm[0][1] = conj_of(k.c10);
  cm[0][0] = C(k.c00);
  C out[3][3] = {};
  for (int r = 0; r <= jmax; ++r)
    for (int s = 0; s <= jmax; ++s) {
      C acc(0);
      for (int j = 0; j <= jmax; ++j)
        for (int l = 0; l <= jmax; ++l) acc += cm[j][l] * alpha[j][r] * conj_of(alpha[l][s]);
      out[r][s] = acc;
    }
  // The diagonal-in-conjugation entries are real by construction.
  return {re_of(out[2][2]), out[2][1], out[2][0], re_of(out[1][1]), out[1][0], re_of(out[0][0])};
}

template GenCircle moebius_image_circle(const MoebiusQ&, const GenCircle&);
template GenCircleF moebius_image_circle(const MoebiusF&, const GenCircleF&);
template CircleFamily family_product(const GenCircle&, const MoebiusQ&);
template CircleFamilyF family_product(const GenCircleF&, const MoebiusF&);
template CircleFamily family_sum(const GenCircle&, const MoebiusQ&);
template CircleFamilyF family_sum(const GenCircleF&, const MoebiusF&);
template HermForm family_member(const CircleFamily&, const Rat&);
template HermFormF family_member(const CircleFamilyF&, const double&);
template Cyclic herm_mul(const HermForm&, const HermForm&);
template CyclicF herm_mul(const HermFormF&, const HermFormF&);
template Cyclic cyclic_sub(const Cyclic&, const Cyclic&);
template CyclicF cyclic_sub(const CyclicF&, const CyclicF&);
template Cyclic cyclic_scale(const Cyclic&, const Rat&);
template CyclicF cyclic_scale(const CyclicF&, const double&);
template bool cyclic_is_zero(const Cyclic&, double);
template bool cyclic_is_zero(const CyclicF&, double);
template Rat cyclic_eval(const Cyclic&, const GaussRat&);
template double cyclic_eval(const CyclicF&, const std::complex<double>&);
template Cyclic family_discriminant(const CircleFamily&);
template CyclicF family_discriminant(const CircleFamilyF&);
template Cyclic cyclic_transform(const Cyclic&, const MoebiusQ&);
template CyclicF cyclic_transform(const CyclicF&, const MoebiusF&);

// ---- Dense coefficient vector and normalization ----

Dense15 cyclic_to_dense(const Cyclic& k) {
  Rat a = k.c22;
  Rat b = 2 * k.c21.re;
  Rat c = -2 * k.c21.im;
  Rat q20 = 2 * k.c20.re + k.c11;
  Rat q11 = -4 * k.c20.im;
  Rat q02 = k.c11 - 2 * k.c20.re;
  Rat q10 = 2 * k.c10.re;
  Rat q01 = -2 * k.c10.im;
  return {a, Rat(0), Rat(2 * a), Rat(0), a, b, c, b, c, q20, q11, q02, q10, q01, k.c00};
}

Dense15F cyclic_to_dense(const CyclicF& k) {
  double a = k.c22;
  double b = 2 * k.c21.real();
  double c = -2 * k.c21.imag();
  double q20 = 2 * k.c20.real() + k.c11;
  double q11 = -4 * k.c20.imag();
  double q02 = k.c11 - 2 * k.c20.real();
  double q10 = 2 * k.c10.real();
  double q01 = -2 * k.c10.imag();
  return {a, 0.0, 2 * a, 0.0, a, b, c, b, c, q20, q11, q02, q10, q01, k.c00};
}

Cyclic cyclic_from_dense(const Dense15& d) {
  if (!is_zero(d[1]) || !is_zero(d[3]) || d[0] != d[4] || d[2] != 2 * d[0] || d[5] != d[7] ||
      d[6] != d[8])
    throw ParseError("coefficients do not satisfy the cyclic shape constraints");
  Cyclic k;
  k.c22 = d[0];
  k.c21 = {Rat(d[5] / 2), Rat(-d[6] / 2)};
  k.c20 = {Rat((d[9] - d[11]) / 4), Rat(-d[10] / 4)};
  k.c11 = (d[9] + d[11]) / 2;
  k.c10 = {Rat(d[12] / 2), Rat(-d[13] / 2)};
  k.c00 = d[14];
  return k;
}

Cyclic cyclic_normalize(const Cyclic& k) {
  Dense15 d = cyclic_to_dense(k);
  for (const Rat& x : d) {
    if (!is_zero(x)) {
      GaussRat s(x);
      return {Rat(k.c22 / x), k.c21 / s, k.c20 / s, Rat(k.c11 / x), k.c10 / s, Rat(k.c00 / x)};
    }
  }
  return k;
}

CyclicF cyclic_normalize(const CyclicF& k, double eps) {
  Dense15F d = cyclic_to_dense(k);
  for (double x : d) {
    if (std::abs(x) > eps)
      return {k.c22 / x, k.c21 / x, k.c20 / x, k.c11 / x, k.c10 / x, k.c00 / x};
  }
  return k;
}

// ---- Envelopes ----

// The only no-envelope condition is an identically vanishing discriminant
// (which also covers the constant family A = B = 0). A family with A = 0 but
// B != 0 is linear in v; its stationary locus is the base point set, flagged
// as a distinct kind instead of a cyclic.
Envelope envelope_cyclic(const CircleFamily& fam) {
  if (herm_is_zero(fam.A)) {
    if (herm_is_zero(fam.B))
      throw DomainError(errtag::pencil_has_no_envelope, "constant circle family has no envelope");
    Envelope e;
    e.kind = EnvelopeKind::linear_family;
    e.base_b = fam.B;
    e.base_c = fam.C2;
    return e;
  }
  Cyclic disc = family_discriminant(fam);
  if (cyclic_is_zero(disc))
    throw DomainError(errtag::pencil_has_no_envelope,
                      "identically vanishing discriminant: the family is a pencil");
  Envelope e;
  e.kind = EnvelopeKind::cyclic;
  e.cyclic = cyclic_normalize(disc);
  return e;
}

EnvelopeF envelope_cyclic(const CircleFamilyF& fam, double eps) {
  if (herm_is_zero(fam.A, eps)) {
    if (herm_is_zero(fam.B, eps))
      throw DomainError(errtag::pencil_has_no_envelope, "constant circle family has no envelope");
    EnvelopeF e;
    e.kind = EnvelopeKind::linear_family;
    e.base_b = fam.B;
    e.base_c = fam.C2;
    return e;
  }
  CyclicF disc = family_discriminant(fam);
  double scale = 0;
  for (double x : cyclic_to_dense(disc)) scale = std::max(scale, std::abs(x));
  double ref = 0;
  for (const HermFormF* h : {&fam.A, &fam.B, &fam.C2})
    ref = std::max({ref, std::abs(h->p), std::abs(h->q), std::abs(h->r)});
  if (scale <= eps * ref * ref)
    throw DomainError(errtag::pencil_has_no_envelope,
                      "identically vanishing discriminant: the family is a pencil");
  EnvelopeF e;
  e.kind = EnvelopeKind::cyclic;
  e.cyclic = cyclic_normalize(disc, eps);
  return e;
}

std::string to_string(SumShape s) {
  switch (s) {
    case SumShape::concentric_circles: return "concentric-circles";
    case SumShape::single_circle: return "circle";
    case SumShape::parallel_lines: return "parallel-lines";
  }
  return "?";
}

SumShape sum_envelope_shape(const GenCircle& omega1, const GenCircle& omega2) {
  bool l1 = gc_is_line(omega1), l2 = gc_is_line(omega2);
  if (l1 && l2)
    throw DomainError(errtag::pencil_has_no_envelope,
                      "sums of two lines form a pencil of lines without envelope");
  if (l1 || l2) return SumShape::parallel_lines;
  Rat r1 = gc_locus_discriminant(omega1) / (omega1.alpha * omega1.alpha);
  Rat r2 = gc_locus_discriminant(omega2) / (omega2.alpha * omega2.alpha);
  return r1 == r2 ? SumShape::single_circle : SumShape::concentric_circles;
}

// ---- Float sampling and tangency ----

std::vector<std::complex<double>> gc_sample(const GenCircleF& w, int count) {
  std::vector<std::complex<double>> pts;
  if (count < 1) return pts;
  double scale = std::abs(w.alpha) + std::abs(w.beta) + std::abs(w.gamma);
  if (scale == 0) return pts;
  if (std::abs(w.alpha) <= 1e-12 * scale) {
    double a = 2 * w.beta.real(), b = -2 * w.beta.imag(), c = w.gamma;
    double n = std::hypot(a, b);
    if (n == 0) return pts;
    std::complex<double> p0(-c * a / (n * n), -c * b / (n * n));
    std::complex<double> dir(-b / n, a / n);
    for (int k = 0; k < count; ++k)
      pts.push_back(p0 + dir * static_cast<double>(grid_value(k)));
    return pts;
  }
  std::complex<double> m = -std::conj(w.beta) / w.alpha;
  double r2 = (std::norm(w.beta) - w.alpha * w.gamma) / (w.alpha * w.alpha);
  if (r2 < 0) return pts;
  double r = std::sqrt(r2);
  const double pi = 3.14159265358979323846;
  for (int k = 0; k < count; ++k) {
    double th = 2 * pi * k / count;
    pts.push_back(m + std::complex<double>(r * std::cos(th), r * std::sin(th)));
  }
  return pts;
}

namespace {

constexpr double kGeomEps = 1e-10;

struct FloatLine {
  std::complex<double> p0, dir;  // unit direction
};

double herm_scale(const HermFormF& h) {
  return std::abs(h.p) + std::abs(h.q) + std::abs(h.r);
}

std::optional<FloatLine> herm_as_line(const HermFormF& h) {
  double scale = herm_scale(h);
  if (scale == 0 || std::abs(h.p) > kGeomEps * scale) return std::nullopt;
  double a = 2 * h.q.real(), b = -2 * h.q.imag(), c = h.r;
  double n = std::hypot(a, b);
  if (n <= kGeomEps * scale) return std::nullopt;
  return FloatLine{{-c * a / (n * n), -c * b / (n * n)}, {-b / n, a / n}};
}

std::vector<std::complex<double>> line_circle_points(const FloatLine& L, const HermFormF& S) {
  std::complex<double> m = -std::conj(S.q) / S.p;
  double r2 = (std::norm(S.q) - S.p * S.r) / (S.p * S.p);
  std::complex<double> w = L.p0 - m;
  double bq = 2 * (w.real() * L.dir.real() + w.imag() * L.dir.imag());
  double cq = std::norm(w) - r2;
  double disc = bq * bq - 4 * cq;
  if (disc < 0) return {};
  double sd = std::sqrt(disc);
  return {L.p0 + L.dir * ((-bq + sd) / 2), L.p0 + L.dir * ((-bq - sd) / 2)};
}

std::vector<std::complex<double>> herm_common_zeros(const HermFormF& f, const HermFormF& g) {
  auto lf = herm_as_line(f), lg = herm_as_line(g);
  std::vector<std::complex<double>> pts;
  if (lf && lg) {
    double a1 = 2 * f.q.real(), b1 = -2 * f.q.imag(), c1 = f.r;
    double a2 = 2 * g.q.real(), b2 = -2 * g.q.imag(), c2 = g.r;
    double det = a1 * b2 - a2 * b1;
    if (std::abs(det) > kGeomEps * (std::abs(a1 * b2) + std::abs(a2 * b1) + kGeomEps))
      pts.push_back({(-c1 * b2 + c2 * b1) / det, (-a1 * c2 + a2 * c1) / det});
  } else if (lf) {
    pts = line_circle_points(*lf, g);
  } else if (lg) {
    pts = line_circle_points(*lg, f);
  } else {
    // radical line of the two circles
    HermFormF rad{0.0, f.q / f.p - g.q / g.p, f.r / f.p - g.r / g.p};
    auto lr = herm_as_line(rad);
    if (!lr) return {};
    pts = line_circle_points(*lr, f);
  }
  std::vector<std::complex<double>> ok;
  double sf = 1 + herm_scale(f), sg = 1 + herm_scale(g);
  for (const auto& z : pts) {
    double zz = 1 + std::norm(z);
    if (std::abs(herm_eval(f, z)) <= 1e-6 * sf * zz && std::abs(herm_eval(g, z)) <= 1e-6 * sg * zz)
      ok.push_back(z);
  }
  return ok;
}

}  // namespace

std::vector<std::complex<double>> family_tangency_points(const CircleFamilyF& fam, double v) {
  HermFormF member = family_member(fam, v);
  HermFormF deriv{2 * fam.A.p * v + fam.B.p, fam.A.q * (2 * v) + fam.B.q,
                  2 * fam.A.r * v + fam.B.r};
  return herm_common_zeros(member, deriv);
}

// ---- Dual conic of the two top-view line families ----

namespace {

std::array<Rat, 3> cross3(const std::array<Rat, 3>& m, const std::array<Rat, 3>& n) {
  return {Rat(m[1] * n[2] - m[2] * n[1]), Rat(m[2] * n[0] - m[0] * n[2]),
          Rat(m[0] * n[1] - m[1] * n[0])};
}

std::optional<std::array<Rat, 3>> canon_triplet(std::array<Rat, 3> l) {
  for (int i = 0; i < 3; ++i) {
    if (!is_zero(l[i])) {
      Rat s = l[i];
      for (auto& x : l) x /= s;
      return l;
    }
  }
  return std::nullopt;
}

QVec conic_condition_row(const std::array<Rat, 3>& l) {
  return {Rat(l[0] * l[0]), Rat(l[1] * l[1]), Rat(l[2] * l[2]),
          Rat(2 * l[0] * l[1]), Rat(2 * l[0] * l[2]), Rat(2 * l[1] * l[2])};
}

Rat conic_value(const std::array<std::array<Rat, 3>, 3>& m, const std::array<Rat, 3>& l) {
  Rat acc(0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) acc += m[i][j] * l[i] * l[j];
  return acc;
}

}  // namespace

std::array<Rat, 3> topview_line_v(const BiPolyQ& P, const BiPolyQ& Q, const BiPolyQ& R,
                                  const Rat& v0) {
  auto lin = [&](const BiPolyQ& f) -> Rat { return f.coeff(1, 1) * v0 + f.coeff(1, 0); };
  auto cst = [&](const BiPolyQ& f) -> Rat { return f.coeff(0, 1) * v0 + f.coeff(0, 0); };
  return cross3({lin(P), lin(Q), lin(R)}, {cst(P), cst(Q), cst(R)});
}

std::array<Rat, 3> topview_line_u(const BiPolyQ& P, const BiPolyQ& Q, const BiPolyQ& R,
                                  const Rat& u0) {
  auto lin = [&](const BiPolyQ& f) -> Rat { return f.coeff(1, 1) * u0 + f.coeff(0, 1); };
  auto cst = [&](const BiPolyQ& f) -> Rat { return f.coeff(1, 0) * u0 + f.coeff(0, 0); };
  return cross3({lin(P), lin(Q), lin(R)}, {cst(P), cst(Q), cst(R)});
}

std::string to_string(DualConicKind k) {
  switch (k) {
    case DualConicKind::smooth_conic: return "smooth_conic";
    case DualConicKind::two_pencils: return "two_pencils";
    case DualConicKind::single_pencil: return "point";
    case DualConicKind::single_line_set: return "line";
  }
  return "?";
}

DualConicResult dual_conic_param1(const BiPolyQ& P, const BiPolyQ& Q, const BiPolyQ& R) {
  for (const BiPolyQ* f : {&P, &Q, &R}) {
    Bidegree bd = f->bidegree();
    if (bd.du > 1 || bd.dv > 1)
      throw DomainError(errtag::degenerate_input,
                        "line families require top-view data of bidegree at most (1,1)");
  }
  if (R.zero()) throw DomainError(errtag::degenerate_input, "zero top-view denominator");

  std::vector<std::array<Rat, 3>> fam_v, fam_u;
  for (int idx = 0; idx < 40 && fam_v.size() < 8; ++idx) {
    auto l = canon_triplet(topview_line_v(P, Q, R, rat(grid_value(idx))));
    if (l && std::find(fam_v.begin(), fam_v.end(), *l) == fam_v.end()) fam_v.push_back(*l);
  }
  for (int idx = 0; idx < 40 && fam_u.size() < 8; ++idx) {
    auto l = canon_triplet(topview_line_u(P, Q, R, rat(grid_value(idx))));
    if (l && std::find(fam_u.begin(), fam_u.end(), *l) == fam_u.end()) fam_u.push_back(*l);
  }
  std::vector<std::array<Rat, 3>> all = fam_v;
  for (const auto& l : fam_u)
    if (std::find(all.begin(), all.end(), l) == all.end()) all.push_back(l);
  if (all.empty())
    throw DomainError(errtag::degenerate_input, "every sampled isocurve projects to a point");

  DualConicResult res;
  if (all.size() == 1) {
    res.kind = DualConicKind::single_line_set;
    res.line = all[0];
    return res;
  }

  // Fit the dual form from one family; widen to both when underdetermined.
  QMat rows;
  for (const auto& l : fam_v) rows.push_back(conic_condition_row(l));
  std::vector<QVec> ns = rows.empty() ? std::vector<QVec>{} : qmat_nullspace(rows);
  if (ns.size() != 1) {
    for (const auto& l : fam_u) rows.push_back(conic_condition_row(l));
    ns = qmat_nullspace(rows);
  }
  if (ns.empty())
    throw DomainError(errtag::internal_inconsistency,
                      "sampled top-view lines admit no common dual conic");
  if (ns.size() > 1)
    throw DomainError(errtag::degenerate_input,
                      "fewer than 5 independent lines; dual conic underdetermined");

  const QVec& cv = ns[0];
  auto& M = res.cstar;
  M[0][0] = cv[0];
  M[1][1] = cv[1];
  M[2][2] = cv[2];
  M[0][1] = M[1][0] = cv[3];
  M[0][2] = M[2][0] = cv[4];
  M[1][2] = M[2][1] = cv[5];
  Rat lead(0);
  for (int i = 0; i < 3 && is_zero(lead); ++i)
    for (int j = 0; j < 3 && is_zero(lead); ++j)
      if (!is_zero(M[i][j])) lead = M[i][j];
  for (auto& row : M)
    for (auto& x : row) x /= lead;

  for (const auto& l : all)
    if (!is_zero(conic_value(M, l)))
      throw DomainError(errtag::internal_inconsistency,
                        "a sampled top-view line misses the fitted dual conic");

  QMat mm;
  for (int i = 0; i < 3; ++i) mm.push_back({M[i][0], M[i][1], M[i][2]});
  int rank = qmat_rank(mm);
  if (rank == 3) {
    res.kind = DualConicKind::smooth_conic;
    return res;
  }
  if (rank == 1) {
    // C* = p p^T up to scale: every line passes through the point p.
    res.kind = DualConicKind::single_pencil;
    for (int i = 0; i < 3; ++i) {
      if (!is_zero(M[i][0]) || !is_zero(M[i][1]) || !is_zero(M[i][2])) {
        res.pencil_vertex = *canon_triplet({M[i][0], M[i][1], M[i][2]});
        return res;
      }
    }
    throw DomainError(errtag::internal_inconsistency, "rank-1 dual form with no nonzero row");
  }

  // rank 2: the dual form splits into two line pencils; their vertices span
  // the null directions of the form restricted to a complement of the kernel.
  res.kind = DualConicKind::two_pencils;
  std::vector<QVec> kerns = qmat_nullspace(mm);
  if (kerns.size() != 1)
    throw DomainError(errtag::internal_inconsistency, "rank-2 dual form with wrong kernel");
  std::array<Rat, 3> k{kerns[0][0], kerns[0][1], kerns[0][2]};
  int ik = 0;
  while (ik < 3 && is_zero(k[ik])) ++ik;
  int ia = (ik + 1) % 3, ib = (ik + 2) % 3;
  Rat qa = M[ia][ia], qb = Rat(2 * M[ia][ib]), qc = M[ib][ib];
  auto basis_dir = [&](const Rat& s, const Rat& t) {
    std::array<Rat, 3> n{Rat(0), Rat(0), Rat(0)};
    n[ia] = s;
    n[ib] = t;
    return n;
  };
  auto set_exact = [&](const std::array<Rat, 3>& n1, const std::array<Rat, 3>& n2) {
    res.vertices_exact = true;
    res.vertex1 = *canon_triplet(cross3(k, n1));
    res.vertex2 = *canon_triplet(cross3(k, n2));
    for (int i = 0; i < 3; ++i) {
      res.vertex1f[i] = to_double(res.vertex1[i]);
      res.vertex2f[i] = to_double(res.vertex2[i]);
    }
  };
  if (is_zero(qa) && is_zero(qc)) {
    set_exact(basis_dir(Rat(1), Rat(0)), basis_dir(Rat(0), Rat(1)));
    return res;
  }
  if (is_zero(qa)) {
    // q(s,t) = t (qb s + qc t)
    set_exact(basis_dir(Rat(1), Rat(0)), basis_dir(qc, Rat(-qb)));
    return res;
  }
  Rat delta = qb * qb - 4 * qa * qc;
  if (sgn(delta) <= 0)
    throw DomainError(errtag::internal_inconsistency,
                      "dual form of real line families without real splitting");
  if (auto sd = rat_sqrt(delta)) {
    Rat r1 = (-qb + *sd) / (2 * qa), r2 = (-qb - *sd) / (2 * qa);
    set_exact(basis_dir(r1, Rat(1)), basis_dir(r2, Rat(1)));
    return res;
  }
  res.vertices_exact = false;
  double qaf = to_double(qa), qbf = to_double(qb);
  double sdf = std::sqrt(to_double(delta));
  double kf[3] = {to_double(k[0]), to_double(k[1]), to_double(k[2])};
  double roots[2] = {(-qbf + sdf) / (2 * qaf), (-qbf - sdf) / (2 * qaf)};
  for (int which = 0; which < 2; ++which) {
    double n[3] = {0, 0, 0};
    n[ia] = roots[which];
    n[ib] = 1;
    std::array<std::complex<double>, 3> vert{
        std::complex<double>(kf[1] * n[2] - kf[2] * n[1]),
        std::complex<double>(kf[2] * n[0] - kf[0] * n[2]),
        std::complex<double>(kf[0] * n[1] - kf[1] * n[0])};
    (which == 0 ? res.vertex1f : res.vertex2f) = vert;
  }
  return res;
}

// ---- Moebius data for a generalized circle ----

namespace {

mpz_class point_height(const GaussRat& z) {
  return std::max(std::max(rat_height(z.re), rat_height(z.im)), mpz_class(1));
}

// Canonical rationals p/q with |p| <= 8, 1 <= q <= 8, ordered deterministically.
std::vector<Rat> small_rationals() {
  std::vector<Rat> out;
  for (int q = 1; q <= 8; ++q)
    for (int p = -8; p <= 8; ++p) {
      if (std::gcd(std::abs(p), q) != 1) continue;
      out.push_back(rat(p, q));
    }
  return out;
}

}  // namespace

Moebius<GaussRat> gc_to_moebius(const GenCircle& w) {
  std::vector<GaussRat> pts;
  std::vector<Rat> cand = small_rationals();
  if (gc_is_line(w)) {
    Rat a = 2 * w.beta.re, b = -2 * w.beta.im, c = w.gamma;
    if (!is_zero(b)) {
      for (const Rat& x : cand) pts.push_back({x, Rat(-(a * x + c) / b)});
    } else {
      for (const Rat& y : cand) pts.push_back({Rat(-c / a), y});
    }
  } else {
    GaussRat center = -w.beta.conj() / GaussRat(w.alpha);
    Rat r2 = gc_locus_discriminant(w) / (w.alpha * w.alpha);
    if (sgn(r2) < 0)
      throw DomainError(errtag::degenerate_input, "empty circle has no rational points");
    for (const Rat& t : cand) {
      Rat s2 = r2 - t * t;
      if (sgn(s2) < 0) continue;
      if (auto s = rat_sqrt(s2)) {
        pts.push_back({Rat(center.re + t), Rat(center.im + *s)});
        if (!is_zero(*s)) pts.push_back({Rat(center.re + t), Rat(center.im - *s)});
      }
    }
  }
  std::sort(pts.begin(), pts.end(), [](const GaussRat& x, const GaussRat& y) {
    mpz_class hx = point_height(x), hy = point_height(y);
    if (hx != hy) return hx < hy;
    if (x.re != y.re) return x.re < y.re;
    return x.im < y.im;
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3)
    throw DomainError(errtag::degenerate_input,
                      "fewer than three small rational points on the circle");
  const GaussRat &z1 = pts[0], &z2 = pts[1], &z3 = pts[2];
  Mat2Q g{z2 - z3, -z1 * (z2 - z3), z2 - z1, -z3 * (z2 - z1)};
  return Moebius<GaussRat>(g).inverse();
}

// ---- Full pipeline ----

namespace {

template <class Fam, class Env>
void envelope_or_note(const Fam& fam, std::optional<Env>& env, const char* label,
                      std::vector<std::string>& notes) {
  try {
    Env e = envelope_cyclic(fam);
    if (e.kind == EnvelopeKind::cyclic) {
      env = e;
    } else {
      notes.push_back(std::string(label) +
                      ": linear pencil of circles; stationary locus is its base point set");
    }
  } catch (const DomainError& err) {
    if (err.tag() != errtag::pencil_has_no_envelope) throw;
    notes.push_back(std::string(label) + ": " + err.what());
  }
}

// Cross-membership of tangency samples: points where family a touches its
// envelope must satisfy family b's cyclic, and vice versa.
std::optional<bool> cross_check(const CircleFamilyF& fa, const CyclicF& ka,
                                const CircleFamilyF& fb, const CyclicF& kb, double tol,
                                std::vector<std::string>& notes) {
  int checked = 0;
  bool ok = true;
  auto run = [&](const CircleFamilyF& fam, const CyclicF& other) {
    int hits = 0;
    for (int idx = 0; idx < 25 && hits < 6; ++idx) {
      auto pts = family_tangency_points(fam, static_cast<double>(grid_value(idx)));
      if (pts.empty()) continue;
      ++hits;
      for (const auto& z : pts) {
        ++checked;
        if (std::abs(cyclic_eval(other, z)) > tol) ok = false;
      }
    }
  };
  run(fa, kb);
  run(fb, ka);
  if (checked == 0) {
    notes.push_back("no real tangency samples found; envelope coincidence is vacuous");
    return true;
  }
  return ok;
}

}  // namespace

TopviewReport top2_pipeline(const BilinFracQ& F, double tol) {
  TopviewReport rep;
  rep.cls = classify(F);
  MapClass tag = rep.cls.tag;
  if (tag == MapClass::u || tag == MapClass::v || tag == MapClass::zero)
    throw DomainError(errtag::top_view_degenerate,
                      "top view depends on at most one parameter; no two circle families");
  rep.exact = rep.cls.exact;

  if (rep.exact) {
    MoebiusQ Minv = MoebiusQ(rep.cls.M).inverse();
    MoebiusQ Cinv = MoebiusQ(rep.cls.C).inverse();
    MoebiusQ Dinv = MoebiusQ(rep.cls.D).inverse();
    GenCircle om1 = moebius_image_circle(Cinv, gc_real_line());
    GenCircle om2 = moebius_image_circle(Dinv, gc_real_line());
    rep.omega1 = om1;
    rep.omega2 = om2;
    rep.omega1f = gc_to_float(om1);
    rep.omega2f = gc_to_float(om2);
    bool prod = tag == MapClass::uv;
    CircleFamily f1 = prod ? family_product(om2, Cinv) : family_sum(om2, Cinv);
    CircleFamily f2 = prod ? family_product(om1, Dinv) : family_sum(om1, Dinv);
    std::optional<Envelope> e1, e2;
    envelope_or_note(f1, e1, "family 1 (u-isocurves)", rep.notes);
    envelope_or_note(f2, e2, "family 2 (v-isocurves)", rep.notes);
    if (e1) {
      rep.envelope1 = cyclic_normalize(cyclic_transform(e1->cyclic, Minv));
      rep.envelope1f = cyclic_to_float(*rep.envelope1);
    }
    if (e2) {
      rep.envelope2 = cyclic_normalize(cyclic_transform(e2->cyclic, Minv));
      rep.envelope2f = cyclic_to_float(*rep.envelope2);
    }
    if (e1 && e2) {
      if (cyclic_to_dense(e1->cyclic) == cyclic_to_dense(e2->cyclic))
        rep.notes.push_back("both families have identical normalized envelope cyclics");
      rep.same_cyclic = cross_check(family_to_float(f1), cyclic_to_float(e1->cyclic),
                                    family_to_float(f2), cyclic_to_float(e2->cyclic), tol,
                                    rep.notes);
    }
    return rep;
  }

  MoebiusF Minv = MoebiusF(rep.cls.Mf).inverse();
  MoebiusF Cinv = MoebiusF(rep.cls.Cf).inverse();
  MoebiusF Dinv = MoebiusF(rep.cls.Df).inverse();
  GenCircleF om1 = moebius_image_circle(Cinv, gc_to_float(gc_real_line()));
  GenCircleF om2 = moebius_image_circle(Dinv, gc_to_float(gc_real_line()));
  rep.omega1f = om1;
  rep.omega2f = om2;
  bool prod = tag == MapClass::uv;
  CircleFamilyF f1 = prod ? family_product(om2, Cinv) : family_sum(om2, Cinv);
  CircleFamilyF f2 = prod ? family_product(om1, Dinv) : family_sum(om1, Dinv);
  std::optional<EnvelopeF> e1, e2;
  envelope_or_note(f1, e1, "family 1 (u-isocurves)", rep.notes);
  envelope_or_note(f2, e2, "family 2 (v-isocurves)", rep.notes);
  if (e1) rep.envelope1f = cyclic_normalize(cyclic_transform(e1->cyclic, Minv));
  if (e2) rep.envelope2f = cyclic_normalize(cyclic_transform(e2->cyclic, Minv));
  if (e1 && e2)
    rep.same_cyclic = cross_check(f1, e1->cyclic, f2, e2->cyclic, tol, rep.notes);
  return rep;
}

}  // namespace isurf
