#include "isurf/linalg.hpp"

namespace isurf {

namespace {

// Reduce to row echelon form in place; returns the pivot column of each
// pivot row in order.
std::vector<int> echelon(QMat& m) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  size_t rows = m.size(), cols = m[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t p = r;
    while (p < rows && is_zero(m[p][c])) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    Rat inv = 1 / m[r][c];
    for (size_t j = c; j < cols; ++j) m[r][j] *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || is_zero(m[i][c])) continue;
      Rat f = m[i][c];
      for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(static_cast<int>(c));
    ++r;
  }
  return pivots;
}

}  // namespace

int qmat_rank(QMat m) { return static_cast<int>(echelon(m).size()); }

std::vector<QVec> qmat_nullspace(QMat m) {
  if (m.empty()) return {};
  size_t cols = m[0].size();
  std::vector<int> pivots = echelon(m);
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivots) is_pivot[c] = true;

  std::vector<QVec> basis;
  for (size_t free_c = 0; free_c < cols; ++free_c) {
    if (is_pivot[free_c]) continue;
    QVec v(cols, Rat(0));
    v[free_c] = 1;
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free_c];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<QVec> qmat_solve(QMat a, QVec b) {
  size_t rows = a.size();
  if (rows == 0) return QVec{};
  size_t cols = a[0].size();
  for (size_t i = 0; i < rows; ++i) a[i].push_back(b[i]);
  std::vector<int> pivots = echelon(a);
  // A pivot in the appended column means the system is inconsistent.
  if (!pivots.empty() && pivots.back() == static_cast<int>(cols)) return std::nullopt;
  QVec x(cols, Rat(0));
  for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = a[r][cols];
  return x;
}

}  // namespace isurf
