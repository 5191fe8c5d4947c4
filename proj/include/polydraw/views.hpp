#pragma once

#include "polydraw/rubber.hpp"
#include "polydraw/scene.hpp"
#include "polydraw/schlegel.hpp"
#include "polydraw/spring.hpp"

#include <optional>
#include <string>

namespace polydraw {

/// A family expression such as "cube(3)" or a polytope JSON document.
Polytope load_polytope(const std::string& source);

/// "icosahedron", "dodecahedron", "cube", "wheel(n)", "cycle(n)",
/// "complete(n)", a graph JSON document, or else the graph of a polytope
/// source.
Graph load_graph(const std::string& source);

/// Overrides the fields present in `j` (delta_rep, delta_visc, delta_lin,
/// length, threshold, step_size, max_iters, seed).
SpringParams spring_params_from_json(const Json& j, SpringParams base = {});
Json spring_params_to_json(const SpringParams& p);

/// lambda(v) = x_k(v) of the vertex coordinates, k counted from 1.
SpringInputs coordinate_objective(const Polytope& p, std::size_t k);

/// lambda(v) = <c, v> with one coefficient per ambient coordinate.
SpringInputs linear_objective(const Polytope& p, const std::vector<Scalar>& c);

/// Euclidean edge lengths of the polytope's own coordinates, per edge of g
/// (g must be the polytope graph with nodes in vertex order).
std::vector<double> original_edge_lengths(const Polytope& p, const Graph& g);

/// Projected vertices in isometric facet coordinates (2D for 3-polytopes,
/// 3D for 4-polytopes) with the edges of the diagram.
Scene schlegel_scene(const Polytope& p, const SchlegelState& state);

/// Scene of an embedding state of g, with run statistics when given.
Scene spring_scene(const Graph& g, const EmbeddingState& state, const SpringParams& params,
                   const std::optional<SpringResult>& result = std::nullopt);

/// `count` plain update steps from `start`.
EmbeddingState spring_steps(const Graph& g, EmbeddingState start, const SpringParams& params,
                            const SpringInputs& inputs, std::size_t count);

/// Largest face of a planar 3-connected graph (first one on ties).
std::vector<std::size_t> default_outer_face(const Graph& g);

/// Planar Tutte drawing with the outer face on the unit circle.
Scene tutte_scene(const Graph& g, const std::optional<std::vector<std::size_t>>& outer = std::nullopt);

/// The realized 3-polytope: nodes of the input graph at their vertices, its
/// edges, and every facet as a face ordered counterclockwise from outside.
Scene realization_scene(const Graph& g, const LiftedRealization& r);

}  // namespace polydraw
