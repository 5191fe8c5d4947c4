#pragma once

#include "polydraw/graph.hpp"
#include "polydraw/serialize.hpp"
#include "polydraw/spring.hpp"

#include <optional>
#include <string>
#include <vector>

namespace polydraw {

struct SceneNode {
  std::string label;
  NodeKind kind = NodeKind::generic;
  std::vector<double> position;
  std::string color;  // "#rrggbb" or empty
};

struct SceneEdge {
  std::size_t u = 0;
  std::size_t v = 0;
  std::string kind = "primal";  // primal, dual or artificial
  std::optional<int> color_class;
  std::string color;
};

/// Drawing of a graph: what the engine hands to exporters and the viewer.
struct Scene {
  std::vector<SceneNode> nodes;
  std::vector<SceneEdge> edges;
  /// Optional 2-faces as cyclically ordered node lists (used by OBJ export).
  std::vector<std::vector<std::size_t>> faces;
  Json metadata = Json::object();

  /// Common dimension of all positions (0 for an empty scene).
  std::size_t dimension() const;
  /// Throws ValidationError for dangling edges or faces, or mixed dimensions.
  void validate() const;
};

Json scene_to_json(const Scene& scene);
Scene scene_from_json(const Json& j);

/// Scene with one node per graph node and one primal edge per graph edge.
Scene scene_from_graph(const Graph& g, const std::vector<std::vector<double>>& positions);
Scene scene_from_graph(const Graph& g, const std::vector<Point3>& positions);

/// Face-dimension color: red for dimension 1, blue for max_dim, two purples
/// in between, interpolated linearly along the four stops.
std::string dimension_color(int dim, int max_dim);

}  // namespace polydraw
