#pragma once

#include "polydraw/face_lattice.hpp"
#include "polydraw/scene.hpp"
#include "polydraw/spring.hpp"

#include <optional>
#include <string>
#include <vector>

namespace polydraw {

/// Finite metric on labelled taxa, stored exactly.
struct Metric {
  std::vector<std::string> labels;
  std::vector<Vector> d;  // n x n

  std::size_t size() const { return labels.size(); }
  /// Throws ValidationError unless square, symmetric, nonnegative with zero diagonal.
  void validate() const;
  /// True if every triple satisfies the triangle inequality.
  bool satisfies_triangle_inequality() const;
};

/// Text format: n, then n labels, then either the upper triangle (with or
/// without the diagonal) row by row, or the full square matrix.
Metric parse_metric_text(const std::string& text);
/// {"labels": [...], "matrix": [[...]]}; rows may be square or upper triangular.
Metric metric_from_json(const Json& j);
Json metric_to_json(const Metric& m);

/// {x : x_i + x_j >= d(i, j) for all i <= j}, enumerated exactly.
Polyhedron polyhedron_of_metric(const Metric& m);

/// Bounded faces of a polyhedron together with their 1-skeleton.
struct BoundedComplex {
  std::vector<Vector> vertices;
  FaceLattice lattice;  // faces as vertex sets (bits beyond the vertices are unused)
  Graph skeleton;       // nodes are vertices, edges the bounded 1-faces
  int dim() const { return lattice.max_dim(); }
};

BoundedComplex bounded_subcomplex(const Polyhedron& p);

/// True iff the bounded subcomplex has no face of dimension 2 or more.
bool is_treelike(const Metric& m);

/// Vertex of the complex equal to the distance row of each taxon, if any.
std::vector<std::optional<std::size_t>> taxon_vertices(const Metric& m, const BoundedComplex& complex);

/// Per skeleton edge, the largest dimension of a bounded face containing it.
std::vector<int> edge_dim_colors(const BoundedComplex& complex);

enum class TightSpanMode { combinatorial, approximate_metric };

struct TightSpanDrawing {
  Scene scene;
  SpringResult spring;
  std::vector<double> lengths;  // desired length per skeleton edge as used
};

/// Spring drawing of the skeleton. Combinatorial mode uses the default
/// length everywhere and colors edges by face dimension; approximate metric
/// mode uses max-norm edge lengths, rescaled to mean params.length.
TightSpanDrawing visualize_tightspan(const Metric& m, TightSpanMode mode, const SpringParams& params);

}  // namespace polydraw
