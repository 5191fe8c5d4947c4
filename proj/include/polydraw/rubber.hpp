#pragma once

#include "polydraw/graph.hpp"
#include "polydraw/polyhedron.hpp"

#include <map>
#include <optional>
#include <vector>

namespace polydraw {

using Positions = std::vector<std::vector<double>>;

struct RubberProblem {
  Graph graph;
  std::map<std::size_t, std::vector<double>> fixed;
  std::vector<double> weights;  // per edge; empty means all 1
};

/// Minimizer of sum_e w_e |e|^2 with the fixed nodes pinned: every free node
/// is the weighted barycenter of its neighbors. Returns positions for all
/// nodes. Throws for disconnected graphs or an empty fixed set.
Positions tutte_embed(const RubberProblem& problem);

double tutte_energy(const RubberProblem& problem, const Positions& positions);

/// Max-norm residual of the barycenter equations at the free nodes.
double tutte_residual(const RubberProblem& problem, const Positions& positions);

/// Exact rational version of tutte_embed.
std::vector<Vector> tutte_embed_exact(const Graph& g, const std::map<std::size_t, Vector>& fixed,
                                      const std::vector<Scalar>& weights = {});

/// Faces of a combinatorial planar embedding as node cycles, or nullopt if
/// the graph is not planar. For 3-connected graphs the faces are unique.
std::optional<std::vector<std::vector<std::size_t>>> planar_faces(const Graph& g);

/// Straight-line plane drawing of a planar 3-connected graph with the given
/// face pinned to a strictly convex polygon.
Positions planar_tutte(const Graph& g, const std::vector<std::size_t>& outer_face,
                       const Positions& outer_positions);

/// Stress on the edges of the outer cycle that puts its nodes in equilibrium,
/// given the stress on all other edges (entries for outer edges are
/// overwritten). Throws "stress not in equilibrium" if none exists.
std::vector<Scalar> complete_boundary_stress(const Graph& g, const std::vector<Vector>& positions,
                                             const std::vector<std::size_t>& outer_face,
                                             std::vector<Scalar> stress);

/// Heights of the Maxwell lift with the outer face at height 0. Faces are node
/// cycles of the drawing. Throws "stress not in equilibrium" unless every
/// node is balanced.
Vector maxwell_lift(const Graph& g, const std::vector<Vector>& positions,
                    const std::vector<std::vector<std::size_t>>& faces, std::size_t outer_face,
                    const std::vector<Scalar>& stress);

struct LiftedRealization {
  /// Data of the lifted graph: the input graph, or its dual when the input
  /// has no triangular face.
  bool via_dual = false;
  Graph lifted_graph;
  std::vector<std::vector<std::size_t>> faces;
  std::size_t outer_face = 0;
  std::vector<Vector> planar;
  std::vector<Scalar> stress;
  Vector heights;
  /// The realization of the input graph and the vertex of each input node.
  Polytope polytope;
  std::vector<std::size_t> vertex_of_node;
};

/// Realizes a planar 3-connected graph as a 3-polytope through Tutte
/// embedding and Maxwell lifting (of the dual if the graph has no triangle).
LiftedRealization steinitz_realize(const Graph& g);

}  // namespace polydraw
