#pragma once

#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "isurf/unipoly.hpp"

namespace isurf {

// Graded-lexicographic order with u before v, descending, so the leading
// term of a polynomial is the first entry of its term map.
struct GrlexDesc {
  bool operator()(const std::pair<int, int>& a, const std::pair<int, int>& b) const {
    int ta = a.first + a.second, tb = b.first + b.second;
    if (ta != tb) return ta > tb;
    return a.first > b.first;
  }
};

struct Bidegree {
  int du = -1, dv = -1;
  bool zero = true;
};

// Sparse bivariate polynomial in u, v over the field K (Rat or GaussRat).
// Terms with zero coefficient are never stored.
template <class K>
class BiPoly {
 public:
  using TermMap = std::map<std::pair<int, int>, K, GrlexDesc>;

  BiPoly() = default;
  static BiPoly constant(const K& k) { return term(k, 0, 0); }
  static BiPoly term(const K& k, int du, int dv) {
    BiPoly p;
    if (!is_zero(k)) p.terms_[{du, dv}] = k;
    return p;
  }
  static BiPoly var_u() { return term(K(Rat(1)), 1, 0); }
  static BiPoly var_v() { return term(K(Rat(1)), 0, 1); }

  const TermMap& terms() const { return terms_; }
  bool zero() const { return terms_.empty(); }

  K coeff(int du, int dv) const {
    auto it = terms_.find({du, dv});
    return it == terms_.end() ? K(Rat(0)) : it->second;
  }

  Bidegree bidegree() const {
    Bidegree d;
    if (terms_.empty()) return d;
    d.zero = false;
    d.du = d.dv = 0;
    for (const auto& [deg, k] : terms_) {
      (void)k;
      d.du = std::max(d.du, deg.first);
      d.dv = std::max(d.dv, deg.second);
    }
    return d;
  }
  int deg_u() const { return bidegree().du; }
  int deg_v() const { return bidegree().dv; }

  // Leading coefficient under graded-lex (u before v).
  const K& lead_coeff() const {
    if (terms_.empty())
      throw DomainError(errtag::degenerate_input, "leading coefficient of zero polynomial");
    return terms_.begin()->second;
  }

  void set(int du, int dv, const K& k) {
    if (is_zero(k)) terms_.erase({du, dv});
    else terms_[{du, dv}] = k;
  }
  void add_term(int du, int dv, const K& k) {
    auto it = terms_.find({du, dv});
    if (it == terms_.end()) {
      if (!is_zero(k)) terms_[{du, dv}] = k;
      return;
    }
    it->second += k;
    if (is_zero(it->second)) terms_.erase(it);
  }

  bool operator==(const BiPoly& o) const { return terms_ == o.terms_; }
  bool operator!=(const BiPoly& o) const { return !(*this == o); }

  BiPoly operator-() const {
    BiPoly r = *this;
    for (auto& [deg, k] : r.terms_) {
      (void)deg;
      k = -k;
    }
    return r;
  }
  BiPoly operator+(const BiPoly& o) const {
    BiPoly r = *this;
    for (const auto& [deg, k] : o.terms_) r.add_term(deg.first, deg.second, k);
    return r;
  }
  BiPoly operator-(const BiPoly& o) const { return *this + (-o); }
  BiPoly operator*(const BiPoly& o) const {
    BiPoly r;
    for (const auto& [da, ka] : terms_)
      for (const auto& [db, kb] : o.terms_)
        r.add_term(da.first + db.first, da.second + db.second, ka * kb);
    return r;
  }
  BiPoly& operator+=(const BiPoly& o) { *this = *this + o; return *this; }
  BiPoly& operator-=(const BiPoly& o) { *this = *this - o; return *this; }
  BiPoly& operator*=(const BiPoly& o) { *this = *this * o; return *this; }
  BiPoly scaled(const K& k) const { return *this * constant(k); }

  K eval(const K& u0, const K& v0) const {
    K acc = K(Rat(0));
    for (const auto& [deg, k] : terms_) {
      K t = k;
      for (int i = 0; i < deg.first; ++i) t *= u0;
      for (int i = 0; i < deg.second; ++i) t *= v0;
      acc += t;
    }
    return acc;
  }

  // Substitute u = u0, leaving a polynomial in v alone.
  BiPoly eval_u(const K& u0) const {
    BiPoly r;
    for (const auto& [deg, k] : terms_) {
      K t = k;
      for (int i = 0; i < deg.first; ++i) t *= u0;
      r.add_term(0, deg.second, t);
    }
    return r;
  }
  BiPoly eval_v(const K& v0) const {
    BiPoly r;
    for (const auto& [deg, k] : terms_) {
      K t = k;
      for (int i = 0; i < deg.second; ++i) t *= v0;
      r.add_term(deg.first, 0, t);
    }
    return r;
  }

  // u-major view: entry i is the coefficient of u^i as a polynomial in v.
  std::vector<UniPoly<K>> u_major() const {
    std::vector<UniPoly<K>> out;
    out.resize(static_cast<size_t>(std::max(deg_u(), 0)) + 1);
    if (zero()) return out;
    for (const auto& [deg, k] : terms_) {
      auto& p = out[deg.first];
      if (static_cast<int>(p.c.size()) <= deg.second) p.c.resize(deg.second + 1, K(Rat(0)));
      p.c[deg.second] = k;
    }
    for (auto& p : out) p.trim();
    return out;
  }
  static BiPoly from_u_major(const std::vector<UniPoly<K>>& coeffs) {
    BiPoly r;
    for (size_t i = 0; i < coeffs.size(); ++i)
      for (size_t j = 0; j < coeffs[i].c.size(); ++j)
        if (!is_zero(coeffs[i].c[j])) r.terms_[{static_cast<int>(i), static_cast<int>(j)}] = coeffs[i].c[j];
    return r;
  }

 private:
  TermMap terms_;
};

using BiPolyQ = BiPoly<Rat>;
using BiPolyC = BiPoly<GaussRat>;

namespace detail {

template <class K>
int umaj_deg(const std::vector<UniPoly<K>>& a) {
  for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
    if (!a[i].zero()) return i;
  return -1;
}

// Content in K[v] of a u-major coefficient list, normalized monic.
template <class K>
UniPoly<K> umaj_content(const std::vector<UniPoly<K>>& a) {
  UniPoly<K> g;
  for (const auto& p : a)
    if (!p.zero()) g = uni_gcd(g, p);
  return g;
}

template <class K>
std::vector<UniPoly<K>> umaj_divide(const std::vector<UniPoly<K>>& a, const UniPoly<K>& d) {
  std::vector<UniPoly<K>> out(a.size());
  for (size_t i = 0; i < a.size(); ++i)
    if (!a[i].zero()) out[i] = uni_divide_exact(a[i], d);
  return out;
}

// Pseudo-remainder of a by b in (K[v])[u]; multiplies a by powers of lc(b)
// so the subtraction stays inside K[v]. Degree in u strictly drops below
// deg_u(b).
template <class K>
std::vector<UniPoly<K>> umaj_prem(std::vector<UniPoly<K>> r, const std::vector<UniPoly<K>>& b) {
  int db = umaj_deg(b);
  const UniPoly<K>& blc = b[db];
  for (;;) {
    int dr = umaj_deg(r);
    if (dr < db) break;
    UniPoly<K> rlc = r[dr];
    for (auto& p : r) p = p * blc;
    for (int i = 0; i <= db; ++i) r[dr - db + i] = r[dr - db + i] - rlc * b[i];
    if (umaj_deg(r) >= dr)
      throw DomainError(errtag::internal_inconsistency, "pseudo-division failed to reduce degree");
  }
  return r;
}

template <class K>
std::vector<UniPoly<K>> umaj_primitive(const std::vector<UniPoly<K>>& a) {
  UniPoly<K> c = umaj_content(a);
  if (c.zero()) return a;
  return umaj_divide(a, c);
}

}  // namespace detail

// Normalize so the graded-lex (u before v) leading coefficient is 1.
template <class K>
BiPoly<K> normalize_leading(const BiPoly<K>& p) {
  if (p.zero()) return p;
  return p.scaled(field_inverse<K>(p.lead_coeff()));
}

// Gcd via a primitive polynomial remainder sequence, treating the inputs as
// univariate in u over K[v] and extracting contents first. Result is
// normalized to graded-lex leading coefficient 1.
template <class K>
BiPoly<K> gcd(const BiPoly<K>& p, const BiPoly<K>& q) {
  if (p.zero() && q.zero())
    throw DomainError(errtag::degenerate_input, "gcd of two zero polynomials");
  if (p.zero()) return normalize_leading(q);
  if (q.zero()) return normalize_leading(p);

  auto a = p.u_major();
  auto b = q.u_major();
  UniPoly<K> ca = detail::umaj_content(a);
  UniPoly<K> cb = detail::umaj_content(b);
  UniPoly<K> cont = uni_gcd(ca, cb);
  a = detail::umaj_divide(a, ca);
  b = detail::umaj_divide(b, cb);
  if (detail::umaj_deg(a) < detail::umaj_deg(b)) std::swap(a, b);

  while (detail::umaj_deg(b) >= 0) {
    auto r = detail::umaj_prem(a, b);
    a = std::move(b);
    if (detail::umaj_deg(r) < 0) {
      b.clear();
    } else {
      b = detail::umaj_primitive(r);
    }
  }

  BiPoly<K> g = BiPoly<K>::from_u_major(a);
  BiPoly<K> cpoly = BiPoly<K>::from_u_major(std::vector<UniPoly<K>>{cont});
  return normalize_leading(g * cpoly);
}

// Gcd of up to three polynomials, ignoring zero entries; all-zero input is
// rejected. Used for the common-factor extraction of cylinder tuples.
template <class K>
BiPoly<K> gcd3(const BiPoly<K>& f1, const BiPoly<K>& f2, const BiPoly<K>& f3) {
  std::vector<const BiPoly<K>*> nz;
  for (const BiPoly<K>* f : {&f1, &f2, &f3})
    if (!f->zero()) nz.push_back(f);
  if (nz.empty())
    throw DomainError(errtag::degenerate_input, "gcd3 of three zero polynomials");
  BiPoly<K> g = normalize_leading(*nz[0]);
  for (size_t i = 1; i < nz.size(); ++i) g = gcd(g, *nz[i]);
  return g;
}

// Exact division: returns q with p = q*d, or raises divisibility-failure.
// Runs as long division in (K[v])[u]; every leading-coefficient division
// must be exact in K[v], which characterizes divisibility.
template <class K>
BiPoly<K> divide_exact(const BiPoly<K>& p, const BiPoly<K>& d) {
  if (d.zero())
    throw DomainError(errtag::degenerate_input, "division by zero polynomial");
  if (p.zero()) return {};
  auto r = p.u_major();
  auto b = d.u_major();
  int db = detail::umaj_deg(b);
  int dr = detail::umaj_deg(r);
  if (dr < db) throw DomainError(errtag::divisibility_failure, "u-degree of divisor too large");
  std::vector<UniPoly<K>> q(dr - db + 1);
  try {
    while (detail::umaj_deg(r) >= db) {
      int cur = detail::umaj_deg(r);
      UniPoly<K> qc = uni_divide_exact(r[cur], b[db]);
      q[cur - db] = qc;
      for (int i = 0; i <= db; ++i) r[cur - db + i] = r[cur - db + i] - qc * b[i];
      if (detail::umaj_deg(r) >= cur)
        throw DomainError(errtag::divisibility_failure, "long division failed to reduce degree");
    }
  } catch (const DomainError& e) {
    throw DomainError(errtag::divisibility_failure,
                      std::string("inexact polynomial division: ") + e.what());
  }
  if (detail::umaj_deg(r) >= 0)
    throw DomainError(errtag::divisibility_failure, "nonzero remainder in polynomial division");
  return BiPoly<K>::from_u_major(q);
}

enum class Axis { U, V };

// Coefficient reversal along one axis up to exponent cap:
// flip(p, U, c) = u^c * p(1/u, v). Requires deg along the axis <= cap.
template <class K>
BiPoly<K> flip(const BiPoly<K>& p, Axis axis, int cap) {
  Bidegree d = p.bidegree();
  int have = (axis == Axis::U) ? d.du : d.dv;
  if (!d.zero && have > cap)
    throw DomainError(errtag::bidegree_overflow, "flip cap below actual degree");
  BiPoly<K> r;
  for (const auto& [deg, k] : p.terms()) {
    int du = deg.first, dv = deg.second;
    if (axis == Axis::U) du = cap - du;
    else dv = cap - dv;
    r.set(du, dv, k);
  }
  return r;
}

inline std::string coeff_str(const Rat& k) { return rat_str(k); }
inline std::string coeff_str(const GaussRat& k) {
  if (is_zero(k.im)) return rat_str(k.re);
  return "(" + gauss_str(k) + ")";
}

// Human-readable rendering in graded-lex term order, for diagnostics only.
template <class K>
std::string to_string(const BiPoly<K>& p) {
  if (p.zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [deg, k] : p.terms()) {
    std::string cs = coeff_str(k);
    bool neg = !cs.empty() && cs[0] == '-';
    if (first) {
      if (neg) out << "-", cs = cs.substr(1);
      first = false;
    } else {
      out << (neg ? " - " : " + ");
      if (neg) cs = cs.substr(1);
    }
    std::string mono;
    if (deg.first > 0) mono += "u" + (deg.first > 1 ? "^" + std::to_string(deg.first) : "");
    if (deg.second > 0) {
      if (!mono.empty()) mono += "*";
      mono += "v" + (deg.second > 1 ? "^" + std::to_string(deg.second) : "");
    }
    if (mono.empty()) out << cs;
    else if (cs == "1") out << mono;
    else out << cs << "*" << mono;
  }
  return out.str();
}

// Map a rational polynomial into Q(i)[u,v].
inline BiPolyC complexify(const BiPolyQ& p) {
  BiPolyC r;
  for (const auto& [deg, k] : p.terms()) r.set(deg.first, deg.second, GaussRat(k));
  return r;
}

}  // namespace isurf
