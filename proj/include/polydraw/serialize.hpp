#pragma once

#include "polydraw/graph.hpp"
#include "polydraw/polyhedron.hpp"

#include <json.hpp>

namespace polydraw {

using Json = nlohmann::ordered_json;

Json scalar_to_json(const Scalar& x);
/// Accepts "p/q" strings, decimal strings, integers and (exactly converted) floats.
Scalar scalar_from_json(const Json& j);
Json vector_to_json(const Vector& v);
Vector vector_from_json(const Json& j);

/// {"dim", "vertices", "inequalities": [{"a", "b"}], "equations"}; rationals as "p/q".
Json polytope_to_json(const Polytope& p);
/// Rebuilds from "vertices" when present, otherwise from "inequalities".
Polytope polytope_from_json(const Json& j);

/// {"dim", "inequalities", "vertices", "rays"}
Json polyhedron_to_json(const Polyhedron& p);
/// Re-enumerates from "inequalities".
Polyhedron polyhedron_from_json(const Json& j);

/// {"nodes": [{"label", "kind"}], "edges": [{"u", "v", "length"?}]}
Json graph_to_json(const Graph& g);
Graph graph_from_json(const Json& j);

}  // namespace polydraw
