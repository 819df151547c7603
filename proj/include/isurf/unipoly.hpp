#pragma once

#include <utility>
#include <vector>

#include "isurf/errors.hpp"
#include "isurf/gaussian.hpp"
#include "isurf/rational.hpp"

namespace isurf {

// Dense univariate polynomial over a field K (K is Rat or GaussRat).
// Coefficient i is the coefficient of x^i; no trailing zeros are stored, so
// the zero polynomial is the empty vector and degree() is -1 for it.
// This is support machinery for the bivariate ring: contents, primitive
// parts and the remainder sequence reduce to univariate arithmetic here.
template <class K>
struct UniPoly {
  std::vector<K> c;

  UniPoly() = default;
  explicit UniPoly(std::vector<K> coeffs) : c(std::move(coeffs)) { trim(); }
  static UniPoly constant(const K& k) {
    UniPoly p;
    if (!is_zero(k)) p.c.push_back(k);
    return p;
  }

  void trim() {
    while (!c.empty() && is_zero(c.back())) c.pop_back();
  }
  bool zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }
  const K& lc() const { return c.back(); }

  bool operator==(const UniPoly& o) const { return c == o.c; }

  UniPoly operator-() const {
    UniPoly r = *this;
    for (auto& k : r.c) k = -k;
    return r;
  }
  UniPoly operator+(const UniPoly& o) const {
    UniPoly r;
    r.c.resize(std::max(c.size(), o.c.size()), K(Rat(0)));
    for (size_t i = 0; i < c.size(); ++i) r.c[i] = c[i];
    for (size_t i = 0; i < o.c.size(); ++i) r.c[i] += o.c[i];
    r.trim();
    return r;
  }
  UniPoly operator-(const UniPoly& o) const { return *this + (-o); }
  UniPoly operator*(const UniPoly& o) const {
    if (zero() || o.zero()) return {};
    UniPoly r;
    r.c.assign(c.size() + o.c.size() - 1, K(Rat(0)));
    for (size_t i = 0; i < c.size(); ++i)
      for (size_t j = 0; j < o.c.size(); ++j) r.c[i + j] += c[i] * o.c[j];
    r.trim();
    return r;
  }
  UniPoly scaled(const K& k) const {
    UniPoly r;
    if (is_zero(k)) return r;
    r.c = c;
    for (auto& x : r.c) x *= k;
    return r;
  }
};

template <class K>
inline K field_inverse(const K& k);
template <>
inline Rat field_inverse<Rat>(const Rat& k) {
  if (is_zero(k)) throw DomainError(errtag::degenerate_input, "division by zero");
  return Rat(1 / k);
}
template <>
inline GaussRat field_inverse<GaussRat>(const GaussRat& k) { return k.inverse(); }

// Division with remainder in K[x]; always defined since K is a field.
template <class K>
std::pair<UniPoly<K>, UniPoly<K>> uni_divmod(const UniPoly<K>& a, const UniPoly<K>& b) {
  if (b.zero()) throw DomainError(errtag::degenerate_input, "univariate division by zero");
  UniPoly<K> q, r = a;
  if (a.degree() >= b.degree()) q.c.assign(a.degree() - b.degree() + 1, K(Rat(0)));
  K binv = field_inverse<K>(b.lc());
  while (!r.zero() && r.degree() >= b.degree()) {
    int shift = r.degree() - b.degree();
    K coef = r.lc() * binv;
    q.c[shift] = coef;
    for (size_t i = 0; i < b.c.size(); ++i) r.c[shift + i] -= coef * b.c[i];
    r.trim();
  }
  q.trim();
  return {q, r};
}

template <class K>
UniPoly<K> uni_divide_exact(const UniPoly<K>& a, const UniPoly<K>& b) {
  auto [q, r] = uni_divmod(a, b);
  if (!r.zero())
    throw DomainError(errtag::divisibility_failure, "inexact univariate division");
  return q;
}

// Monic gcd via the Euclidean algorithm; gcd(0,0) is 0 here, callers that
// must reject that case do so themselves.
template <class K>
UniPoly<K> uni_gcd(UniPoly<K> a, UniPoly<K> b) {
  while (!b.zero()) {
    auto [q, r] = uni_divmod(a, b);
    (void)q;
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.zero()) a = a.scaled(field_inverse<K>(a.lc()));
  return a;
}

}  // namespace isurf
