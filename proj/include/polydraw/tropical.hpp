#pragma once

#include "polydraw/tightspan.hpp"

#include <vector>

namespace polydraw {

/// m x n matrix whose rows generate a tropical polytope.
struct TropicalMatrix {
  std::vector<Vector> rows;

  std::size_t m() const { return rows.size(); }
  std::size_t n() const { return rows.empty() ? 0 : rows.front().size(); }
  void validate() const;
};

/// CSV (one row per line) or a JSON 2D array; entries may be "p/q".
TropicalMatrix parse_tropical_matrix(const std::string& text);
Json tropical_matrix_to_json(const TropicalMatrix& c);

/// Which coordinate of W = R^{m+n} / R(1,..,1,-1,..,-1) is pinned to 0.
enum class TropicalChart { y1, z1 };

/// {(y, z) : y_i + z_j <= c_ij} in the chart, i.e. on the remaining m + n - 1
/// coordinates (y_2..y_m, z_1..z_n) or (y_1..y_m, z_2..z_n).
Polyhedron polyhedron_T_C(const TropicalMatrix& c, TropicalChart chart = TropicalChart::y1);

/// Lifts a chart point to (y, z) in R^{m+n}, normalized so that y_1 = 0.
Vector tropical_point(const TropicalMatrix& c, TropicalChart chart, const Vector& x);

struct TropicalComplex {
  TropicalMatrix matrix;
  TropicalChart chart = TropicalChart::y1;
  Polyhedron polyhedron;
  BoundedComplex complex;      // every vertex is a pseudo-vertex
  std::vector<Vector> points;  // per vertex, (y, z) with y_1 = 0
  /// Irredundant rows and, per row, its vertex in the complex.
  std::vector<std::size_t> generators;
  std::vector<std::size_t> row_vertex;

  std::size_t num_pseudo_vertices() const { return complex.vertices.size(); }
  bool is_tropical_vertex(std::size_t vertex) const;
};

TropicalComplex tropical_polytope(const TropicalMatrix& c, TropicalChart chart = TropicalChart::y1);

/// Min-plus projection of x onto the tropical span of `rows`:
/// min_i (lambda_i + row_i) with lambda_i = max_j (x_j - row_ij).
Vector tropical_projection(const std::vector<Vector>& rows, const Vector& x);

/// Indices of the unique minimal generating subset of rows. Rows are dropped
/// from last to first while the others reproduce them, so of several equal
/// rows the first is kept.
std::vector<std::size_t> tropical_vertices(const TropicalMatrix& c);

enum class ProjectionSide { first_m, last_n };

/// Per vertex, the y (first_m) or z (last_n) block shifted so its first
/// entry is 0, with that entry dropped. Throws ValidationError when more than
/// three coordinates remain.
std::vector<Vector> project_to_R3(const TropicalComplex& t, ProjectionSide side);

/// Entries i * j for i = 1..m, j = 0..n (an m x (n + 1) matrix).
TropicalMatrix tropical_cyclic(std::size_t m, std::size_t n);

/// The n! x n matrix of permutations of (1, ..., n) in lexicographic order.
TropicalMatrix permutation_matrix(std::size_t n);

/// Combinatorial spring drawing of the complex's graph; tropical vertices are
/// labelled by their rows.
Scene tropical_scene(const TropicalComplex& t, const SpringParams& params, SpringResult* result = nullptr);

}  // namespace polydraw
