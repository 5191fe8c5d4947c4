#include "polydraw/serialize.hpp"

namespace polydraw {

Json scalar_to_json(const Scalar& x) { return format_scalar(x); }

Scalar scalar_from_json(const Json& j) {
  if (j.is_string()) return parse_scalar(j.get<std::string>());
  if (j.is_number_integer()) return Scalar(j.get<long long>());
  if (j.is_number_float()) return scalar_from_double(j.get<double>());
  throw ValidationError("expected a number, got " + j.dump());
}

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(scalar_to_json(x));
  return out;
}

Vector vector_from_json(const Json& j) {
  if (!j.is_array()) throw ValidationError("expected an array of numbers");
  Vector v;
  for (const auto& x : j) v.push_back(scalar_from_json(x));
  return v;
}

namespace {

Json inequalities_to_json(const std::vector<Inequality>& list) {
  Json out = Json::array();
  for (const auto& f : list) out.push_back({{"a", vector_to_json(f.a)}, {"b", scalar_to_json(f.b)}});
  return out;
}

std::vector<Inequality> inequalities_from_json(const Json& j, std::size_t dim) {
  if (!j.is_array()) throw ValidationError("\"inequalities\" must be an array");
  std::vector<Inequality> out;
  for (const auto& f : j) {
    Inequality h{vector_from_json(f.at("a")), scalar_from_json(f.at("b"))};
    if (h.a.size() != dim) throw ValidationError("inequality of wrong dimension");
    out.push_back(std::move(h));
  }
  return out;
}

std::vector<Vector> points_from_json(const Json& j, std::size_t dim) {
  if (!j.is_array()) throw ValidationError("expected an array of points");
  std::vector<Vector> out;
  for (const auto& p : j) {
    out.push_back(vector_from_json(p));
    if (out.back().size() != dim) throw ValidationError("point of wrong dimension");
  }
  return out;
}

std::size_t read_dim(const Json& j) {
  if (!j.contains("dim") || !j["dim"].is_number_unsigned()) {
    throw ValidationError("missing nonnegative integer \"dim\"");
  }
  return j["dim"].get<std::size_t>();
}

}  // namespace

Json polytope_to_json(const Polytope& p) {
  Json out;
  out["dim"] = p.ambient_dim;
  out["vertices"] = Json::array();
  for (const auto& v : p.vertices) out["vertices"].push_back(vector_to_json(v));
  out["inequalities"] = inequalities_to_json(p.facets);
  out["equations"] = inequalities_to_json(p.equations);
  return out;
}

Polytope polytope_from_json(const Json& j) {
  try {
    std::size_t dim = read_dim(j);
    if (j.contains("vertices") && !j["vertices"].empty()) {
      return convex_hull(points_from_json(j["vertices"], dim));
    }
    if (j.contains("inequalities")) {
      auto ineqs = inequalities_from_json(j["inequalities"], dim);
      if (j.contains("equations")) {
        for (const auto& eq : inequalities_from_json(j["equations"], dim)) {
          ineqs.push_back(eq);
          ineqs.push_back({scale(eq.a, Scalar(-1)), -eq.b});
        }
      }
      return polytope_from_inequalities(dim, ineqs);
    }
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("malformed polytope: ") + e.what());
  }
  throw ValidationError("polytope needs \"vertices\" or \"inequalities\"");
}

Json polyhedron_to_json(const Polyhedron& p) {
  Json out;
  out["dim"] = p.dim;
  out["inequalities"] = inequalities_to_json(p.inequalities);
  out["vertices"] = Json::array();
  for (const auto& v : p.vertices) out["vertices"].push_back(vector_to_json(v));
  out["rays"] = Json::array();
  for (const auto& r : p.rays) out["rays"].push_back(vector_to_json(r));
  return out;
}

Polyhedron polyhedron_from_json(const Json& j) {
  try {
    std::size_t dim = read_dim(j);
    return vertex_enumeration(dim, inequalities_from_json(j.at("inequalities"), dim));
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("malformed polyhedron: ") + e.what());
  }
}

Json graph_to_json(const Graph& g) {
  Json out;
  out["nodes"] = Json::array();
  for (const auto& n : g.nodes()) out["nodes"].push_back({{"label", n.label}, {"kind", to_string(n.kind)}});
  out["edges"] = Json::array();
  for (const auto& e : g.edges()) {
    Json edge = {{"u", e.u}, {"v", e.v}};
    if (e.length) edge["length"] = *e.length;
    out["edges"].push_back(std::move(edge));
  }
  return out;
}

Graph graph_from_json(const Json& j) {
  try {
    Graph g;
    if (j.contains("nodes")) {
      for (const auto& n : j.at("nodes")) {
        Node node;
        if (n.is_string()) {
          node.label = n.get<std::string>();
        } else {
          node.label = n.value("label", "");
          node.kind = node_kind_from_string(n.value("kind", "generic"));
        }
        g.add_node(std::move(node));
      }
    } else {
      std::size_t n = j.at("num_nodes").get<std::size_t>();
      for (std::size_t i = 0; i < n; ++i) g.add_node({std::to_string(i), NodeKind::generic});
    }
    for (const auto& e : j.at("edges")) {
      std::size_t u, v;
      std::optional<double> length;
      if (e.is_array()) {
        u = e.at(0).get<std::size_t>();
        v = e.at(1).get<std::size_t>();
      } else {
        u = e.at("u").get<std::size_t>();
        v = e.at("v").get<std::size_t>();
        if (e.contains("length")) length = e["length"].get<double>();
      }
      if (u >= g.num_nodes() || v >= g.num_nodes()) throw ValidationError("edge endpoint out of range");
      if (!g.add_edge(u, v, length)) throw ValidationError("duplicate edge");
    }
    return g;
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("malformed graph: ") + e.what());
  }
}

}  // namespace polydraw
