#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

#include "isurf/errors.hpp"

namespace isurf {

// Arbitrary-precision rational. mpq_class keeps values reduced to lowest
// terms with positive denominator once canonicalized; every constructor path
// below canonicalizes, so equality is plain mpq equality.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
  if (den == 0) throw DomainError(errtag::degenerate_input, "rational with zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

inline Rat rat_parse(const std::string& s) {
  Rat q;
  if (s.empty() || q.set_str(s, 10) != 0)
    throw ParseError("invalid rational literal: '" + s + "'");
  if (q.get_den() == 0) throw ParseError("zero denominator in rational literal: '" + s + "'");
  q.canonicalize();
  return q;
}

inline std::string rat_str(const Rat& q) { return q.get_str(); }

inline int sign(const Rat& q) { return sgn(q); }
inline bool is_zero(const Rat& q) { return sgn(q) == 0; }
inline bool is_one(const Rat& q) { return q == 1; }

inline double to_double(const Rat& q) { return q.get_d(); }

inline Rat abs_rat(const Rat& q) { return sgn(q) < 0 ? Rat(-q) : q; }

// max(|num|, den), the usual naive height.
inline mpz_class rat_height(const Rat& q) {
  mpz_class n = abs(q.get_num());
  mpz_class d = q.get_den();
  return n > d ? n : d;
}

// Exact square root when q is a square in Q, nullopt otherwise.
inline std::optional<Rat> rat_sqrt(const Rat& q) {
  if (sgn(q) < 0) return std::nullopt;
  const mpz_class& n = q.get_num();
  const mpz_class& d = q.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t()))
    return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  Rat r(rn, rd);
  r.canonicalize();
  return r;
}

}  // namespace isurf
