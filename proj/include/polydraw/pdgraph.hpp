#pragma once

#include "polydraw/scene.hpp"
#include "polydraw/spring.hpp"

#include <string>
#include <vector>

namespace polydraw {

/// Abstract simplicial complex given by its facets (sorted vertex index lists).
struct SimplicialComplex {
  std::vector<std::string> labels;
  std::vector<std::vector<std::size_t>> facets;
  /// Optional coordinates per vertex (used only by tests and exports).
  std::vector<Vector> coordinates;

  std::size_t num_vertices() const { return labels.size(); }
  int dim() const;
  bool is_pure() const;
  /// Sorts facets; throws ValidationError for out-of-range vertices, repeated
  /// vertices in a facet, or a facet contained in another.
  void validate();
  /// Number of faces of each dimension 0..dim().
  std::vector<std::size_t> f_vector() const;
};

/// {"vertices": [labels] or a count, "facets": [[...]]}
SimplicialComplex complex_from_json(const Json& j);
Json complex_to_json(const SimplicialComplex& k);
/// OFF-style text: "OFF", counts line, vertex lines (coordinates kept), then
/// one line per facet "k v_1 ... v_k".
SimplicialComplex complex_from_off(const std::string& text);

enum class PdEdgeKind { primal, dual, artificial };
std::string to_string(PdEdgeKind kind);

/// Nodes 0..f_0-1 are the vertices, then one dual node per facet.
struct PdGraph {
  Graph graph;
  std::vector<PdEdgeKind> edge_kinds;
  std::size_t num_primal = 0;
  std::size_t num_dual = 0;
  /// Some ridge lies in three or more facets; its cofacets form a dual clique.
  bool non_manifold = false;

  std::size_t count(PdEdgeKind kind) const;
};

PdGraph build_pd_graph(const SimplicialComplex& k);

struct PdLengths {
  double primal = 1.0;
  double dual = 1.0;
  double artificial = 0.3;
};

/// Desired length per edge by kind. Throws for nonpositive lengths.
std::vector<double> pd_lengths(const PdGraph& pd, const PdLengths& lengths = {});

/// Spring drawing of the pd-graph; artificial edges are left out of the
/// scene when `hide_artificial` is set.
Scene pd_scene(const PdGraph& pd, const SpringParams& params, const PdLengths& lengths, bool hide_artificial,
               SpringResult* result = nullptr);

/// Fraction of facets whose dual node lies strictly inside the simplex of
/// its vertices' positions (3D positions, 3-dimensional facets only).
double dual_containment(const PdGraph& pd, const SimplicialComplex& k, const std::vector<Point3>& positions);

/// The facet-minimal triangulation of [0,1]^4 without new vertices:
/// eight corner simplices at the odd vertices and eight simplices of the
/// remaining cross polytope around the diagonal from 0000 to 1111.
SimplicialComplex minimal_cube4_triangulation();

/// Solid of genus two: a 5 x 3 x 1 block of unit cubes with the cubes at
/// (1, 1, 0) and (3, 1, 0) removed, each cube cut into six tetrahedra along
/// its main diagonal.
SimplicialComplex genus_two_solid();

}  // namespace polydraw
