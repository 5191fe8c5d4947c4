#pragma once

#include "polydraw/graph.hpp"
#include "polydraw/polyhedron.hpp"

#include <vector>

namespace polydraw {

/// Faces identified by their generator sets, graded by dimension.
struct FaceLattice {
  std::vector<Bitset> faces;
  std::vector<int> dims;                          // -1 for the empty face
  std::vector<std::vector<std::size_t>> covers;   // faces covering faces[i]

  /// Number of faces of each dimension, index 0 holding dimension -1.
  std::vector<std::size_t> rank_counts() const;
  std::vector<std::size_t> faces_of_dim(int d) const;
  int max_dim() const;
};

/// Full face lattice (empty face through the polytope itself).
FaceLattice face_lattice(const Polytope& p);

/// Faces of a polyhedron containing no ray, built upward from the vertices.
/// The empty face is not included.
FaceLattice bounded_faces(const Polyhedron& p);

/// Generic upward enumeration: `incidence` rows are inequalities over
/// `num_generators` generators, of which the first `num_vertices` are points.
/// Faces containing a generator index >= num_vertices are discarded.
FaceLattice enumerate_faces(const std::vector<Bitset>& incidence, std::size_t num_generators,
                            std::size_t num_vertices, bool include_empty);

/// Vertex-edge graph: nodes are vertices, edges the 1-dimensional faces.
Graph graph_of(const Polytope& p);

/// Dual graph: nodes are facets, edges join facets meeting in a ridge.
Graph dual_graph_of(const Polytope& p);

/// Every vertex has degree dim(P).
bool is_simple(const Polytope& p);

/// Alternating sum of proper face counts; equals 1 - (-1)^d for a d-polytope.
long euler_characteristic(const FaceLattice& lattice);

}  // namespace polydraw
