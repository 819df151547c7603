#pragma once

#include <array>
#include <initializer_list>
#include <string>

#include "isurf/bipoly.hpp"
#include "isurf/errors.hpp"

namespace tst {

using isurf::BiPolyQ;
using isurf::rat;

// Build a rational polynomial from integer-coefficient terms {du, dv, num}.
inline BiPolyQ pq(std::initializer_list<std::array<long, 3>> terms) {
  BiPolyQ p;
  for (const auto& t : terms) p.add_term(static_cast<int>(t[0]), static_cast<int>(t[1]), rat(t[2]));
  return p;
}

inline BiPolyQ U() { return BiPolyQ::var_u(); }
inline BiPolyQ V() { return BiPolyQ::var_v(); }
inline BiPolyQ C(long num, long den = 1) { return BiPolyQ::constant(rat(num, den)); }

// Tag of the DomainError raised by f, or "" when nothing was thrown.
template <class F>
std::string domain_tag(F&& f) {
  try {
    f();
  } catch (const isurf::DomainError& e) {
    return e.tag();
  }
  return "";
}

template <class F>
bool throws_parse_error(F&& f) {
  try {
    f();
  } catch (const isurf::ParseError&) {
    return true;
  } catch (...) {
    return false;
  }
  return false;
}

}  // namespace tst
