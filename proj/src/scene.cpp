#include "polydraw/scene.hpp"

#include <array>
#include <cmath>
#include <cstdio>

namespace polydraw {

std::size_t Scene::dimension() const { return nodes.empty() ? 0 : nodes.front().position.size(); }

void Scene::validate() const {
  const std::size_t dim = dimension();
  for (const auto& n : nodes) {
    if (n.position.size() != dim) throw ValidationError("scene positions of mixed dimension");
    for (double x : n.position) {
      if (!std::isfinite(x)) throw ValidationError("non-finite scene position");
    }
  }
  if (!nodes.empty() && dim != 2 && dim != 3) throw ValidationError("scene positions must be 2D or 3D");
  for (const auto& e : edges) {
    if (e.u >= nodes.size() || e.v >= nodes.size()) throw ValidationError("scene edge endpoint out of range");
    if (e.kind != "primal" && e.kind != "dual" && e.kind != "artificial") {
      throw ValidationError("unknown edge kind '" + e.kind + "'");
    }
  }
  for (const auto& f : faces) {
    if (f.size() < 3) throw ValidationError("scene face with fewer than three nodes");
    for (auto v : f) {
      if (v >= nodes.size()) throw ValidationError("scene face node out of range");
    }
  }
}

Json scene_to_json(const Scene& scene) {
  scene.validate();
  Json out;
  out["nodes"] = Json::array();
  for (std::size_t i = 0; i < scene.nodes.size(); ++i) {
    const auto& n = scene.nodes[i];
    Json node{{"id", i}, {"label", n.label}, {"kind", to_string(n.kind)}, {"position", n.position}};
    if (!n.color.empty()) node["color"] = n.color;
    out["nodes"].push_back(std::move(node));
  }
  out["edges"] = Json::array();
  for (const auto& e : scene.edges) {
    Json edge{{"u", e.u}, {"v", e.v}, {"kind", e.kind}};
    if (e.color_class) edge["color_class"] = *e.color_class;
    if (!e.color.empty()) edge["color"] = e.color;
    out["edges"].push_back(std::move(edge));
  }
  if (!scene.faces.empty()) out["faces"] = scene.faces;
  out["metadata"] = scene.metadata;
  return out;
}

Scene scene_from_json(const Json& j) {
  Scene s;
  try {
    for (const auto& n : j.at("nodes")) {
      if (n.contains("id") && n["id"].get<std::size_t>() != s.nodes.size()) {
        throw ValidationError("scene node ids must be 0, 1, 2, ...");
      }
      SceneNode node;
      node.label = n.value("label", std::to_string(s.nodes.size()));
      node.kind = node_kind_from_string(n.value("kind", "generic"));
      node.position = n.at("position").get<std::vector<double>>();
      node.color = n.value("color", "");
      s.nodes.push_back(std::move(node));
    }
    for (const auto& e : j.at("edges")) {
      SceneEdge edge;
      edge.u = e.at("u").get<std::size_t>();
      edge.v = e.at("v").get<std::size_t>();
      edge.kind = e.value("kind", "primal");
      if (e.contains("color_class")) edge.color_class = e["color_class"].get<int>();
      edge.color = e.value("color", "");
      s.edges.push_back(std::move(edge));
    }
    if (j.contains("faces")) s.faces = j["faces"].get<std::vector<std::vector<std::size_t>>>();
    if (j.contains("metadata")) s.metadata = j["metadata"];
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("malformed scene: ") + e.what());
  }
  s.validate();
  return s;
}

Scene scene_from_graph(const Graph& g, const std::vector<std::vector<double>>& positions) {
  if (positions.size() != g.num_nodes()) throw ValidationError("one position per node required");
  Scene s;
  for (std::size_t v = 0; v < g.num_nodes(); ++v) {
    s.nodes.push_back({g.nodes()[v].label, g.nodes()[v].kind, positions[v], ""});
  }
  for (const auto& e : g.edges()) s.edges.push_back({e.u, e.v, "primal", std::nullopt, ""});
  return s;
}

Scene scene_from_graph(const Graph& g, const std::vector<Point3>& positions) {
  std::vector<std::vector<double>> pos;
  for (const auto& p : positions) pos.emplace_back(p.begin(), p.end());
  return scene_from_graph(g, pos);
}

std::string dimension_color(int dim, int max_dim) {
  static constexpr std::array<std::array<double, 3>, 4> stops{{
      {230, 30, 30},   // red
      {170, 40, 150},  // purple
      {110, 50, 190},  // blue-purple
      {30, 60, 230},   // blue
  }};
  double t = max_dim <= 1 ? 0.0 : static_cast<double>(dim - 1) / static_cast<double>(max_dim - 1);
  t = std::clamp(t, 0.0, 1.0) * 3;
  std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(t), 2);
  double f = t - static_cast<double>(k);
  char buf[8];
  int rgb[3];
  for (int c = 0; c < 3; ++c) rgb[c] = static_cast<int>(std::lround(stops[k][c] + f * (stops[k + 1][c] - stops[k][c])));
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", rgb[0], rgb[1], rgb[2]);
  return buf;
}

}  // namespace polydraw
