#pragma once

#include <complex>
#include <optional>
#include <string>

#include "isurf/rational.hpp"

namespace isurf {

// Gaussian rational, an element of Q(i). Field operations are exact.
struct GaussRat {
  Rat re, im;

  GaussRat() : re(0), im(0) {}
  GaussRat(Rat r) : re(std::move(r)), im(0) {}  // NOLINT: implicit Q -> Q(i)
  GaussRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

  bool operator==(const GaussRat& o) const { return re == o.re && im == o.im; }
  bool operator!=(const GaussRat& o) const { return !(*this == o); }

  GaussRat operator-() const { return {Rat(-re), Rat(-im)}; }
  GaussRat operator+(const GaussRat& o) const { return {Rat(re + o.re), Rat(im + o.im)}; }
  GaussRat operator-(const GaussRat& o) const { return {Rat(re - o.re), Rat(im - o.im)}; }
  GaussRat operator*(const GaussRat& o) const {
    return {Rat(re * o.re - im * o.im), Rat(re * o.im + im * o.re)};
  }
  GaussRat& operator+=(const GaussRat& o) { re += o.re; im += o.im; return *this; }
  GaussRat& operator-=(const GaussRat& o) { re -= o.re; im -= o.im; return *this; }
  GaussRat& operator*=(const GaussRat& o) { *this = *this * o; return *this; }

  GaussRat conj() const { return {re, Rat(-im)}; }
  Rat norm() const { return re * re + im * im; }  // |z|^2

  GaussRat inverse() const {
    Rat n = norm();
    if (is_zero(n)) throw DomainError(errtag::degenerate_input, "division by zero in Q(i)");
    return {Rat(re / n), Rat(-im / n)};
  }
  GaussRat operator/(const GaussRat& o) const { return *this * o.inverse(); }
  GaussRat& operator/=(const GaussRat& o) { *this = *this / o; return *this; }
};

inline bool is_zero(const GaussRat& z) { return is_zero(z.re) && is_zero(z.im); }
inline GaussRat gauss_i() { return {Rat(0), Rat(1)}; }
inline std::complex<double> to_complex(const GaussRat& z) {
  return {to_double(z.re), to_double(z.im)};
}

// Exact square root in Q(i) when it exists. For x+yi with y != 0 a root
// exists iff x^2+y^2, (x+m)/2 and (m-x)/2 are all rational squares, where
// m = sqrt(x^2+y^2).
inline std::optional<GaussRat> gauss_sqrt(const GaussRat& z) {
  if (is_zero(z.im)) {
    if (sgn(z.re) >= 0) {
      auto s = rat_sqrt(z.re);
      if (s) return GaussRat(*s, Rat(0));
      return std::nullopt;
    }
    auto s = rat_sqrt(Rat(-z.re));
    if (s) return GaussRat(Rat(0), *s);
    return std::nullopt;
  }
  auto m = rat_sqrt(z.norm());
  if (!m) return std::nullopt;
  auto p = rat_sqrt(Rat((z.re + *m) / 2));
  auto q = rat_sqrt(Rat((*m - z.re) / 2));
  if (!p || !q) return std::nullopt;
  if (sgn(z.im) < 0) *q = -*q;
  return GaussRat(*p, *q);
}

// Canonical complex literal: "re", "imi", or "re+imi" / "re-imi" with both
// parts reduced rationals. Round-trips through gauss_parse.
inline std::string gauss_str(const GaussRat& z) {
  if (is_zero(z.im)) return rat_str(z.re);
  std::string imag = rat_str(abs_rat(z.im)) + "i";
  if (is_zero(z.re)) return (sgn(z.im) < 0 ? "-" : "") + imag;
  return rat_str(z.re) + (sgn(z.im) < 0 ? "-" : "+") + imag;
}

// Accepts "3/2", "-i", "1+i", "2i", "1/2-3/4i". Rational literals contain no
// signs past index 0, so the last interior '+'/'-' splits real from imaginary.
inline GaussRat gauss_parse(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (!isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw ParseError("empty complex literal");
  if (s.back() != 'i') return GaussRat(rat_parse(s));
  s.pop_back();
  size_t split = std::string::npos;
  for (size_t k = s.size(); k-- > 1;) {
    if (s[k] == '+' || s[k] == '-') { split = k; break; }
  }
  std::string re_part, im_part;
  if (split == std::string::npos) {
    re_part = "0";
    im_part = s;
  } else {
    re_part = s.substr(0, split);
    im_part = s.substr(split);
  }
  if (im_part.empty() || im_part == "+") im_part = "1";
  else if (im_part == "-") im_part = "-1";
  else if (im_part[0] == '+') im_part.erase(0, 1);  // rat_parse takes no leading '+'
  return {rat_parse(re_part), rat_parse(im_part)};
}

}  // namespace isurf
