#include "isurf/svg.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <sstream>
#include <vector>

namespace isurf {

namespace {

double grid_value_d(int i) {
  int k = (i + 1) / 2;
  return i == 0 ? 0.0 : (i % 2 == 1 ? k : -k);
}

std::string fmt(double x) {
  if (x == 0) x = 0;  // normalize -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

struct Box {
  double x0 = 0, x1 = 0, y0 = 0, y1 = 0;
  bool some = false;
  void add(double x, double y) {
    if (!some) {
      x0 = x1 = x;
      y0 = y1 = y;
      some = true;
      return;
    }
    x0 = std::min(x0, x);
    x1 = std::max(x1, x);
    y0 = std::min(y0, y);
    y1 = std::max(y1, y);
  }
};

struct MemberGeom {
  bool is_line = false;
  double cx = 0, cy = 0, r = 0;  // circle
  double a = 0, b = 0, c = 0;    // line ax + by + c = 0
};

// Clip the line to the box; false when it misses.
bool clip_line(const MemberGeom& l, const Box& box, double seg[4]) {
  double n = std::hypot(l.a, l.b);
  if (n == 0) return false;
  double fx = -l.a * l.c / (n * n), fy = -l.b * l.c / (n * n);
  double dx = -l.b / n, dy = l.a / n;
  double t0 = -1e300, t1 = 1e300;
  auto slab = [&](double p, double d, double lo, double hi) {
    if (std::abs(d) < 1e-300) return p >= lo && p <= hi;
    double u = (lo - p) / d, w = (hi - p) / d;
    if (u > w) std::swap(u, w);
    t0 = std::max(t0, u);
    t1 = std::min(t1, w);
    return true;
  };
  if (!slab(fx, dx, box.x0, box.x1)) return false;
  if (!slab(fy, dy, box.y0, box.y1)) return false;
  if (t0 > t1) return false;
  seg[0] = fx + t0 * dx;
  seg[1] = fy + t0 * dy;
  seg[2] = fx + t1 * dx;
  seg[3] = fy + t1 * dy;
  return true;
}

struct Seg {
  double x0, y0, x1, y1;
};

// Marching squares for the zero contour of the cyclic over the box.
std::vector<Seg> contour(const CyclicF& k, const Box& box, int n) {
  std::vector<double> val((n + 1) * (n + 1));
  auto X = [&](int i) { return box.x0 + (box.x1 - box.x0) * i / n; };
  auto Y = [&](int j) { return box.y0 + (box.y1 - box.y0) * j / n; };
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i)
      val[j * (n + 1) + i] = cyclic_eval(k, std::complex<double>(X(i), Y(j)));
  std::vector<Seg> segs;
  struct Pt {
    double x, y;
  };
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      double v00 = val[j * (n + 1) + i], v10 = val[j * (n + 1) + i + 1];
      double v01 = val[(j + 1) * (n + 1) + i], v11 = val[(j + 1) * (n + 1) + i + 1];
      bool s00 = v00 > 0, s10 = v10 > 0, s01 = v01 > 0, s11 = v11 > 0;
      if (s00 == s10 && s10 == s01 && s01 == s11) continue;
      auto zero = [](double xa, double ya, double va, double xb, double yb, double vb) -> Pt {
        double t = va / (va - vb);
        return {xa + t * (xb - xa), ya + t * (yb - ya)};
      };
      std::vector<std::pair<int, Pt>> cr;  // 0 bottom, 1 right, 2 top, 3 left
      if (s00 != s10) cr.push_back({0, zero(X(i), Y(j), v00, X(i + 1), Y(j), v10)});
      if (s10 != s11) cr.push_back({1, zero(X(i + 1), Y(j), v10, X(i + 1), Y(j + 1), v11)});
      if (s01 != s11) cr.push_back({2, zero(X(i), Y(j + 1), v01, X(i + 1), Y(j + 1), v11)});
      if (s00 != s01) cr.push_back({3, zero(X(i), Y(j), v00, X(i), Y(j + 1), v01)});
      auto emit = [&](const Pt& a, const Pt& b) { segs.push_back({a.x, a.y, b.x, b.y}); };
      if (cr.size() == 2) {
        emit(cr[0].second, cr[1].second);
      } else if (cr.size() == 4) {
        double xc = (X(i) + X(i + 1)) / 2, yc = (Y(j) + Y(j + 1)) / 2;
        bool sc = cyclic_eval(k, std::complex<double>(xc, yc)) > 0;
        // cr order here is bottom, right, top, left
        if (sc == s00) {
          emit(cr[0].second, cr[1].second);  // bottom-right corner
          emit(cr[2].second, cr[3].second);  // top-left corner
        } else {
          emit(cr[0].second, cr[3].second);  // bottom-left corner
          emit(cr[1].second, cr[2].second);  // top-right corner
        }
      }
    }
  return segs;
}

}  // namespace

std::string svg_family(const CircleFamilyF& fam, const std::optional<CyclicF>& envelope,
                       int members) {
  std::vector<MemberGeom> geoms;
  for (int i = 0; i < members; ++i) {
    HermFormF h = family_member(fam, grid_value_d(i));
    double scale = std::max({std::abs(h.p), std::abs(h.q), std::abs(h.r)});
    if (scale < 1e-12) continue;
    MemberGeom g;
    if (std::abs(h.p) <= 1e-9 * scale) {
      g.is_line = true;
      g.a = 2 * h.q.real();
      g.b = -2 * h.q.imag();
      g.c = h.r;
      if (std::hypot(g.a, g.b) < 1e-12 * scale) continue;
    } else {
      g.cx = -h.q.real() / h.p;
      g.cy = h.q.imag() / h.p;
      double r2 = (std::norm(h.q) - h.p * h.r) / (h.p * h.p);
      if (r2 <= 0) continue;  // point or empty locus
      g.r = std::sqrt(r2);
    }
    geoms.push_back(g);
  }

  Box box;
  for (const MemberGeom& g : geoms)
    if (!g.is_line) {
      box.add(g.cx - g.r, g.cy - g.r);
      box.add(g.cx + g.r, g.cy + g.r);
    }
  if (!box.some) {
    box.add(-5, -5);
    box.add(5, 5);
  }
  double pad = 0.1 * std::max({box.x1 - box.x0, box.y1 - box.y0, 1.0});
  box.x0 -= pad;
  box.y0 -= pad;
  box.x1 += pad;
  box.y1 += pad;

  double w = box.x1 - box.x0, hgt = box.y1 - box.y0;
  double sw = 0.004 * std::max(w, hgt);

  std::ostringstream out;
  // math y-up: flip with a group transform; viewBox covers the flipped range
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << fmt(box.x0) << " "
      << fmt(-box.y1) << " " << fmt(w) << " " << fmt(hgt) << "\">\n";
  out << "<g transform=\"scale(1,-1)\" fill=\"none\">\n";
  for (const MemberGeom& g : geoms) {
    out << "<path stroke=\"#4a6fa5\" stroke-width=\"" << fmt(sw) << "\" d=\"";
    if (g.is_line) {
      double seg[4];
      if (!clip_line(g, box, seg)) {
        out << "\"/>\n";
        continue;
      }
      out << "M" << fmt(seg[0]) << " " << fmt(seg[1]) << " L" << fmt(seg[2]) << " " << fmt(seg[3]);
    } else {
      out << "M" << fmt(g.cx + g.r) << " " << fmt(g.cy) << " A" << fmt(g.r) << " " << fmt(g.r)
          << " 0 1 0 " << fmt(g.cx - g.r) << " " << fmt(g.cy) << " A" << fmt(g.r) << " "
          << fmt(g.r) << " 0 1 0 " << fmt(g.cx + g.r) << " " << fmt(g.cy) << " Z";
    }
    out << "\"/>\n";
  }
  if (envelope) {
    std::vector<Seg> segs = contour(*envelope, box, 160);
    out << "<path stroke=\"#c0392b\" stroke-width=\"" << fmt(1.8 * sw) << "\" d=\"";
    for (const Seg& s : segs)
      out << "M" << fmt(s.x0) << " " << fmt(s.y0) << " L" << fmt(s.x1) << " " << fmt(s.y1) << " ";
    out << "\"/>\n";
  }
  out << "</g>\n</svg>\n";
  return out.str();
}

}  // namespace isurf
