#pragma once

#include "polydraw/rational.hpp"

#include <optional>
#include <vector>

namespace polydraw {

using Matrix = std::vector<Vector>;  // row-major

struct RowEchelon {
  Matrix rows;                      // reduced row echelon form, zero rows dropped
  std::vector<std::size_t> pivots;  // pivot column of each row
};

RowEchelon reduced_row_echelon(Matrix m, std::size_t columns);

std::size_t rank(const Matrix& m, std::size_t columns);

/// Basis of {x : m x = 0}.
Matrix nullspace(const Matrix& m, std::size_t columns);

/// Unique solution of a square nonsingular system, or nullopt when singular.
std::optional<Vector> solve(const Matrix& a, const Vector& b);

/// Dimension of the affine hull of `points` (-1 for the empty set).
int affine_dimension(const std::vector<Vector>& points);

/// Indices of a maximal linearly independent subset of `rows`, chosen greedily in order.
std::vector<std::size_t> independent_rows(const Matrix& rows, std::size_t columns);

}  // namespace polydraw
