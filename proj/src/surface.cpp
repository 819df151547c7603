#include "isurf/surface.hpp"

#include "isurf/linalg.hpp"

namespace isurf {

namespace {

void require_bidegree(const BiPolyQ& p, int du, int dv, const char* what) {
  Bidegree d = p.bidegree();
  if (!d.zero && (d.du > du || d.dv > dv))
    throw DomainError(errtag::bidegree_overflow,
                      std::string(what) + " exceeds bidegree (" + std::to_string(du) + "," +
                          std::to_string(dv) + ")");
}

BiPolyQ sq(const BiPolyQ& p) { return p * p; }

}  // namespace

ParabolicSurface::ParabolicSurface(BiPolyQ p, BiPolyQ q, BiPolyQ r, BiPolyQ z)
    : P(std::move(p)), Q(std::move(q)), R(std::move(r)), Z(std::move(z)) {
  require_bidegree(P, 1, 1, "P");
  require_bidegree(Q, 1, 1, "Q");
  require_bidegree(R, 1, 1, "R");
  require_bidegree(Z, 2, 2, "Z");
  if (R.zero()) throw DomainError(errtag::degenerate_input, "denominator R is zero");
}

IsoCircleSurface::IsoCircleSurface(BiPolyQ p0, BiPolyQ p1, BiPolyQ p2, BiPolyQ p3, BiPolyQ z)
    : P0(std::move(p0)), P1(std::move(p1)), P2(std::move(p2)), P3(std::move(p3)),
      Z(std::move(z)) {
  require_bidegree(P0, 1, 1, "P0");
  require_bidegree(P1, 1, 1, "P1");
  require_bidegree(P2, 1, 1, "P2");
  require_bidegree(P3, 1, 1, "P3");
  require_bidegree(Z, 2, 2, "Z");
  // P0^2 + P3^2 = 0 over Q forces P0 = P3 = 0.
  if (P0.zero() && P3.zero())
    throw DomainError(errtag::degenerate_input, "denominator P0^2 + P3^2 is zero");
}

CylinderTuple::CylinderTuple(std::array<BiPolyQ, 5> x) : X(std::move(x)) {
  for (int i = 0; i < 5; ++i)
    require_bidegree(X[i], 2, 2, ("X" + std::to_string(i + 1)).c_str());
  if (X[4].zero()) throw DomainError(errtag::degenerate_input, "X5 is zero");
  BiPolyQ residual = sq(X[0]) + sq(X[1]) + sq(X[3]) - sq(X[4]);
  if (!residual.zero())
    throw DomainError(errtag::not_on_cylinder,
                      "tuple violates the cylinder identity X1^2+X2^2+X4^2=X5^2");
}

ProjPoint4 CylinderTuple::eval(const Rat& u0, const Rat& v0) const {
  std::array<Rat, 5> c;
  for (int i = 0; i < 5; ++i) c[i] = X[i].eval(u0, v0);
  bool all_zero = true;
  for (const Rat& k : c)
    if (!is_zero(k)) { all_zero = false; break; }
  if (all_zero)
    throw DomainError(errtag::degenerate_input, "tuple has a base point at the sample");
  return ProjPoint4(c);
}

CylinderTuple compose_tparam(const BiPolyQ& P, const BiPolyQ& Q, const BiPolyQ& R,
                             const BiPolyQ& T, const BiPolyQ& x3) {
  BiPolyQ two = BiPolyQ::constant(rat(2));
  BiPolyQ pq = sq(P) + sq(Q);
  return CylinderTuple({two * P * R * T, two * Q * R * T, x3, (pq - sq(R)) * T,
                        (pq + sq(R)) * T});
}

CylinderTuple compose_pythagorean(const BiPolyQ& P0, const BiPolyQ& P1, const BiPolyQ& P2,
                                  const BiPolyQ& P3, const BiPolyQ& T, const BiPolyQ& x3) {
  BiPolyQ two = BiPolyQ::constant(rat(2));
  return CylinderTuple({two * (P0 * P1 - P2 * P3) * T, two * (P1 * P3 + P0 * P2) * T, x3,
                        (sq(P1) + sq(P2) - sq(P0) - sq(P3)) * T,
                        (sq(P0) + sq(P1) + sq(P2) + sq(P3)) * T});
}

TParamWitness decompose_tparam(const CylinderTuple& t) {
  const BiPolyQ& X1 = t.X[0];
  const BiPolyQ& X2 = t.X[1];
  const BiPolyQ& X4 = t.X[3];
  const BiPolyQ& X5 = t.X[4];

  if (X1.zero() && X2.zero()) {
    // Identity forces X4 = X5 or X4 = -X5; each branch has a fixed witness.
    if ((X4 + X5).zero())
      return {BiPolyQ{}, BiPolyQ{}, BiPolyQ::constant(rat(1)), X5};
    if (X4 == X5)
      return {BiPolyQ::constant(rat(1)), BiPolyQ{}, BiPolyQ{}, X4};
    throw DomainError(errtag::internal_inconsistency,
                      "X1 = X2 = 0 but X4 is not +-X5 despite the cylinder identity");
  }

  BiPolyQ W = X5 - X4;  // equals 2*R^2*T for genuine members
  BiPolyQ D = gcd3(X1, X2, W);
  Bidegree dd = D.bidegree();
  if (dd.zero || dd.du < 1 || dd.dv < 1)
    throw DomainError(errtag::theorem_hypothesis_violated,
                      "gcd3(X1, X2, X5-X4) has no u*v term to absorb; tuple is not in the "
                      "tangent-parametrization family");

  BiPolyQ P = divide_exact(X1, D);
  BiPolyQ Q = divide_exact(X2, D);
  BiPolyQ R = divide_exact(W, D);

  BiPolyQ ratio;  // D / R, guaranteed polynomial by the decomposition theorem
  try {
    ratio = divide_exact(D, R);
  } catch (const DomainError&) {
    throw DomainError(errtag::internal_inconsistency,
                      "R does not divide gcd3(X1, X2, X5-X4); input not from the family");
  }
  BiPolyQ T = ratio.scaled(rat(1, 2));

  // Gauge freedom (P,Q,R,T) -> (cP, cQ, cR, T/c^2); pick c = 1/lc(R).
  Rat lc = R.lead_coeff();
  Rat c = Rat(Rat(1) / lc);
  TParamWitness w{P.scaled(c), Q.scaled(c), R.scaled(c), T.scaled(Rat(lc * lc))};

  CylinderTuple re = compose_tparam(w.P, w.Q, w.R, w.T, t.X[2]);
  for (int i = 0; i < 5; ++i)
    if (re.X[i] != t.X[i])
      throw DomainError(errtag::internal_inconsistency, "recomposition mismatch");
  return w;
}

namespace {

CylinderTuple apply_flip(const CylinderTuple& t, bool fu, bool fv) {
  std::array<BiPolyQ, 5> out;
  for (int i = 0; i < 5; ++i) {
    BiPolyQ p = t.X[i];
    if (fu) p = flip(p, Axis::U, 2);
    if (fv) p = flip(p, Axis::V, 2);
    out[i] = p;
  }
  return CylinderTuple(out);
}

bool decomposition_hypothesis(const CylinderTuple& t) {
  if (t.X[0].zero() && t.X[1].zero()) return true;  // fixed-witness branches
  BiPolyQ W = t.X[4] - t.X[3];
  BiPolyQ D = gcd3(t.X[0], t.X[1], W);
  Bidegree d = D.bidegree();
  return !d.zero && d.du >= 1 && d.dv >= 1;
}

}  // namespace

NormalizeResult normalize_for_parabolas(const CylinderTuple& t) {
  const std::pair<FlipKind, std::pair<bool, bool>> candidates[] = {
      {FlipKind::none, {false, false}},
      {FlipKind::flip_u, {true, false}},
      {FlipKind::flip_v, {false, true}},
      {FlipKind::flip_uv, {true, true}},
  };
  for (const auto& [kind, fuv] : candidates) {
    CylinderTuple cand = apply_flip(t, fuv.first, fuv.second);
    if (decomposition_hypothesis(cand)) return {cand, kind};
  }
  throw DomainError(errtag::not_parabolic_family,
                    "no parameter flip exposes the tangent-parametrization form");
}

AffinePoint3 eval_param1(const ParabolicSurface& s, const Rat& u0, const Rat& v0) {
  Rat r = s.R.eval(u0, v0);
  if (is_zero(r)) throw DomainError(errtag::pole, "R vanishes at the sample point");
  return {Rat(s.P.eval(u0, v0) / r), Rat(s.Q.eval(u0, v0) / r), Rat(s.Z.eval(u0, v0) / (r * r))};
}

AffinePoint3 eval_param2(const IsoCircleSurface& s, const Rat& u0, const Rat& v0) {
  Rat p0 = s.P0.eval(u0, v0), p1 = s.P1.eval(u0, v0);
  Rat p2 = s.P2.eval(u0, v0), p3 = s.P3.eval(u0, v0);
  Rat den = p0 * p0 + p3 * p3;
  if (is_zero(den)) throw DomainError(errtag::pole, "P0^2 + P3^2 vanishes at the sample point");
  return {Rat((p0 * p1 - p2 * p3) / den), Rat((p1 * p3 + p0 * p2) / den),
          Rat(s.Z.eval(u0, v0) / den)};
}

CylinderTuple lift_param1(const ParabolicSurface& s) {
  BiPolyQ two = BiPolyQ::constant(rat(2));
  BiPolyQ pq = sq(s.P) + sq(s.Q);
  return CylinderTuple({two * s.P * s.R, two * s.Q * s.R, two * s.Z, pq - sq(s.R),
                        pq + sq(s.R)});
}

CylinderTuple lift_param2(const IsoCircleSurface& s) {
  BiPolyQ two = BiPolyQ::constant(rat(2));
  BiPolyQ s03 = sq(s.P0) + sq(s.P3);
  BiPolyQ s12 = sq(s.P1) + sq(s.P2);
  return CylinderTuple({two * (s.P0 * s.P1 - s.P2 * s.P3), two * (s.P1 * s.P3 + s.P0 * s.P2),
                        two * s.Z, s12 - s03, s12 + s03});
}

namespace {

// Grid value number idx in the order 0, 1, -1, 2, -2, ...
long grid_value(int idx) {
  long k = (idx + 1) / 2;
  return idx % 2 ? k : -k;
}

template <class Eval>
std::vector<AffinePoint3> sample_grid(int n, Eval eval) {
  if (n < 1) throw DomainError(errtag::degenerate_input, "sample count must be positive");
  std::vector<AffinePoint3> pts;
  for (int idx = 0; idx < 10 * n && static_cast<int>(pts.size()) < n; ++idx) {
    try {
      pts.push_back(eval(rat(grid_value(idx))));
    } catch (const DomainError&) {
      // pole: skip this grid value
    }
  }
  if (static_cast<int>(pts.size()) < n)
    throw DomainError(errtag::too_few_samples,
                      "fewer than n pole-free grid parameters within bound 10n");
  return pts;
}

}  // namespace

std::vector<AffinePoint3> isocurve_sample(const ParabolicSurface& s, Axis fixed_axis,
                                          const Rat& value, int n) {
  return sample_grid(n, [&](const Rat& t) {
    return fixed_axis == Axis::U ? eval_param1(s, value, t) : eval_param1(s, t, value);
  });
}

std::vector<AffinePoint3> isocurve_sample(const IsoCircleSurface& s, Axis fixed_axis,
                                          const Rat& value, int n) {
  return sample_grid(n, [&](const Rat& t) {
    return fixed_axis == Axis::U ? eval_param2(s, value, t) : eval_param2(s, t, value);
  });
}

const char* to_string(IsocurveClass c) {
  switch (c) {
    case IsocurveClass::point: return "point";
    case IsocurveClass::line: return "line";
    case IsocurveClass::vertical_parabola: return "vertical_parabola";
    case IsocurveClass::isotropic_ellipse: return "isotropic_ellipse";
    case IsocurveClass::other: return "other";
  }
  return "other";
}

IsocurveClass classify_isocurve(const std::vector<AffinePoint3>& pts) {
  if (pts.size() < 7)
    throw DomainError(errtag::degenerate_input, "isocurve classification needs >= 7 points");

  bool all_equal = true;
  for (const auto& p : pts)
    if (!(p == pts[0])) { all_equal = false; break; }
  if (all_equal) return IsocurveClass::point;

  bool tops_equal = true;
  for (const auto& p : pts)
    if (p.x != pts[0].x || p.y != pts[0].y) { tops_equal = false; break; }
  if (tops_equal) return IsocurveClass::line;  // vertical line

  // Collinearity of the top view.
  QMat diffs;
  for (size_t i = 1; i < pts.size(); ++i)
    diffs.push_back({Rat(pts[i].x - pts[0].x), Rat(pts[i].y - pts[0].y)});
  if (qmat_rank(diffs) <= 1) {
    Rat dx, dy;
    for (const auto& row : diffs)
      if (!is_zero(row[0]) || !is_zero(row[1])) { dx = row[0]; dy = row[1]; break; }
    Rat dd = dx * dx + dy * dy;
    std::vector<std::pair<Rat, Rat>> sz;  // (position along line, z)
    for (const auto& p : pts)
      sz.push_back({Rat(((p.x - pts[0].x) * dx + (p.y - pts[0].y) * dy) / dd), p.z});

    // Fit z = a s^2 + b s + c from three distinct positions, then check all.
    std::vector<size_t> idx;
    for (size_t i = 0; i < sz.size() && idx.size() < 3; ++i) {
      bool dup = false;
      for (size_t j : idx)
        if (sz[j].first == sz[i].first) { dup = true; break; }
      if (!dup) idx.push_back(i);
    }
    if (idx.size() < 3) return IsocurveClass::other;
    QMat vand;
    QVec rhs;
    for (size_t j : idx) {
      const Rat& s = sz[j].first;
      vand.push_back({Rat(s * s), s, Rat(1)});
      rhs.push_back(sz[j].second);
    }
    auto sol = qmat_solve(vand, rhs);
    if (!sol) return IsocurveClass::other;
    const Rat &a = (*sol)[0], &b = (*sol)[1], &c = (*sol)[2];
    for (const auto& [s, z] : sz)
      if (a * s * s + b * s + c != z) return IsocurveClass::other;
    return is_zero(a) ? IsocurveClass::line : IsocurveClass::vertical_parabola;
  }

  // Concyclic top view: rank of rows (x^2+y^2, x, y, 1) at most 3.
  QMat circ;
  for (const auto& p : pts)
    circ.push_back({Rat(p.x * p.x + p.y * p.y), p.x, p.y, Rat(1)});
  if (qmat_rank(circ) <= 3) {
    auto ns = qmat_nullspace(circ);
    if (ns.size() == 1 && !is_zero(ns[0][0])) {
      QMat plane;
      for (const auto& p : pts) plane.push_back({p.x, p.y, p.z, Rat(1)});
      if (qmat_rank(plane) <= 3) return IsocurveClass::isotropic_ellipse;
    }
  }
  return IsocurveClass::other;
}

}  // namespace isurf
