#pragma once

#include "polydraw/linalg.hpp"
#include "polydraw/rational.hpp"

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <vector>

namespace polydraw {

using Bitset = boost::dynamic_bitset<>;

/// Half-space a·x <= b (or hyperplane a·x = b when used as an equation).
struct Inequality {
  Vector a;
  Scalar b;

  Scalar slack(const Vector& x) const { return b - dot(a, x); }
  bool operator==(const Inequality&) const = default;
};

/// Convex polytope in V- and H-representation.
///
/// `vertices` and `facets` live in ambient coordinates. A polytope that does
/// not span its ambient space carries the equations of its affine hull (in
/// reduced row echelon form) and a chart: the coordinates in `chart` determine
/// every point of the affine hull, and facet normals are supported on them.
struct Polytope {
  std::size_t ambient_dim = 0;
  int dim = -1;
  std::vector<Vector> vertices;
  std::vector<Inequality> facets;
  std::vector<Inequality> equations;
  std::vector<std::size_t> chart;
  std::vector<Bitset> incidence;  // facet x vertex

  std::size_t num_vertices() const { return vertices.size(); }
  std::size_t num_facets() const { return facets.size(); }

  std::vector<std::size_t> facet_vertices(std::size_t facet) const;
  std::vector<std::size_t> vertex_facets(std::size_t vertex) const;

  /// Chart coordinates of an ambient point on the affine hull.
  Vector to_chart(const Vector& x) const;
  /// Ambient point on the affine hull with the given chart coordinates.
  Vector from_chart(const Vector& y) const;
  /// Full-dimensional copy expressed in chart coordinates.
  Polytope in_chart() const;

  bool contains(const Vector& x) const;
};

/// Pointed polyhedron with enumerated vertices and extreme rays.
struct Polyhedron {
  std::size_t dim = 0;
  std::vector<Inequality> inequalities;
  std::vector<Vector> vertices;
  std::vector<Vector> rays;
  /// Per inequality, the tight generators: indices [0, #vertices) are
  /// vertices, [#vertices, #vertices + #rays) are rays.
  std::vector<Bitset> incidence;

  std::size_t num_generators() const { return vertices.size() + rays.size(); }
  bool is_ray(std::size_t generator) const { return generator >= vertices.size(); }
  bool contains(const Vector& x) const;
};

/// Extreme rays of the pointed cone {x : r·x <= 0 for all rows r} by the
/// double description method. Rays are primitive integer vectors.
/// Throws ValidationError("not pointed") when the rows do not span.
std::vector<IntVector> cone_extreme_rays(const std::vector<IntVector>& rows, std::size_t dim);

/// Convex hull of a nonempty finite point set.
Polytope convex_hull(const std::vector<Vector>& points);

/// Vertices and extreme rays of {x : a·x <= b}. Throws ValidationError
/// "empty" for infeasible systems and "not pointed" when a line is contained.
Polyhedron vertex_enumeration(std::size_t dim, const std::vector<Inequality>& inequalities);

/// Bounded polytope from an H-description (redundant inequalities are dropped).
Polytope polytope_from_inequalities(std::size_t dim, const std::vector<Inequality>& inequalities);

/// Polar dual of a full-dimensional polytope about an interior point
/// (the vertex barycenter when omitted). The result's vertex i is dual to facet i.
Polytope polar(const Polytope& p);
Polytope polar(const Polytope& p, const Vector& center);

/// Throws ValidationError when the stored data violates the polytope invariants.
void validate(const Polytope& p);

}  // namespace polydraw
