#include "polydraw/linalg.hpp"

namespace polydraw {

RowEchelon reduced_row_echelon(Matrix m, std::size_t columns) {
  RowEchelon out;
  std::size_t row = 0;
  for (std::size_t col = 0; col < columns && row < m.size(); ++col) {
    std::size_t pivot = row;
    while (pivot < m.size() && m[pivot][col] == 0) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[row], m[pivot]);
    Scalar inv = 1 / m[row][col];
    for (auto& x : m[row]) x *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col] == 0) continue;
      Scalar factor = m[r][col];
      for (std::size_t c = col; c < m[r].size(); ++c) m[r][c] -= factor * m[row][c];
    }
    out.pivots.push_back(col);
    ++row;
  }
  m.resize(row);
  out.rows = std::move(m);
  return out;
}

std::size_t rank(const Matrix& m, std::size_t columns) {
  return reduced_row_echelon(m, columns).pivots.size();
}

Matrix nullspace(const Matrix& m, std::size_t columns) {
  RowEchelon ref = reduced_row_echelon(m, columns);
  std::vector<bool> is_pivot(columns, false);
  for (auto p : ref.pivots) is_pivot[p] = true;
  Matrix basis;
  for (std::size_t free = 0; free < columns; ++free) {
    if (is_pivot[free]) continue;
    Vector v(columns, Scalar(0));
    v[free] = 1;
    for (std::size_t r = 0; r < ref.pivots.size(); ++r) v[ref.pivots[r]] = -ref.rows[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Vector> solve(const Matrix& a, const Vector& b) {
  const std::size_t n = a.size();
  Matrix aug(n);
  for (std::size_t i = 0; i < n; ++i) {
    aug[i] = a[i];
    aug[i].push_back(b[i]);
  }
  RowEchelon ref = reduced_row_echelon(std::move(aug), n);
  if (ref.pivots.size() < n) return std::nullopt;
  Vector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = ref.rows[i][n];
  return x;
}

int affine_dimension(const std::vector<Vector>& points) {
  if (points.empty()) return -1;
  Matrix diffs;
  for (std::size_t i = 1; i < points.size(); ++i) diffs.push_back(subtract(points[i], points[0]));
  return static_cast<int>(rank(diffs, points[0].size()));
}

std::vector<std::size_t> independent_rows(const Matrix& rows, std::size_t columns) {
  // Incremental elimination: keep a reduced basis and test each new row against it.
  std::vector<std::size_t> chosen;
  Matrix basis;
  std::vector<std::size_t> pivot_cols;
  for (std::size_t i = 0; i < rows.size() && chosen.size() < columns; ++i) {
    Vector v = rows[i];
    for (std::size_t k = 0; k < basis.size(); ++k) {
      const Scalar& coeff = v[pivot_cols[k]];
      if (coeff == 0) continue;
      Scalar f = coeff;
      for (std::size_t c = 0; c < columns; ++c) v[c] -= f * basis[k][c];
    }
    std::size_t pc = 0;
    while (pc < columns && v[pc] == 0) ++pc;
    if (pc == columns) continue;
    Scalar inv = 1 / v[pc];
    for (auto& x : v) x *= inv;
    basis.push_back(std::move(v));
    pivot_cols.push_back(pc);
    chosen.push_back(i);
  }
  return chosen;
}

}  // namespace polydraw
