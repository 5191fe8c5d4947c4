#include "polydraw/views.hpp"

#include "polydraw/constructions.hpp"
#include "polydraw/face_lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <regex>

namespace polydraw {

namespace {

Json parse_document(const std::string& source, const char* what) {
  try {
    return Json::parse(source);
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("malformed ") + what + ": " + e.what());
  }
}

bool looks_like_json(const std::string& s) {
  auto first = s.find_first_not_of(" \t\r\n");
  return first != std::string::npos && s[first] == '{';
}

std::vector<double> doubles(const Vector& v) {
  std::vector<double> out;
  for (const auto& x : v) out.push_back(to_double(x));
  return out;
}

}  // namespace

Polytope load_polytope(const std::string& source) {
  if (looks_like_json(source)) return polytope_from_json(parse_document(source, "polytope"));
  return construct_standard(source);
}

Graph load_graph(const std::string& source) {
  if (looks_like_json(source)) {
    Json j = parse_document(source, "graph");
    if (j.contains("edges")) return graph_from_json(j);
    return graph_of(polytope_from_json(j));
  }
  if (source == "icosahedron") return graphs::icosahedron();
  if (source == "dodecahedron") return graphs::dodecahedron();
  if (source == "cube") return graphs::cube();
  static const std::regex family(R"(\s*(wheel|cycle|complete|path)\s*\(\s*(\d+)\s*\)\s*)");
  std::smatch m;
  if (std::regex_match(source, m, family)) {
    const std::size_t n = std::stoul(m[2]);
    if (n > 100000) throw ValidationError("graph too large");
    if (m[1] == "wheel") return graphs::wheel(n);
    if (m[1] == "cycle") return graphs::cycle(n);
    if (m[1] == "complete") return graphs::complete(n);
    return graphs::path(n);
  }
  return graph_of(construct_standard(source));
}

SpringParams spring_params_from_json(const Json& j, SpringParams p) {
  if (!j.is_object()) throw ValidationError("spring parameters must be an object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "delta_rep") p.delta_rep = value.get<double>();
      else if (key == "delta_visc") p.delta_visc = value.get<double>();
      else if (key == "delta_lin") p.delta_lin = value.get<double>();
      else if (key == "length") p.length = value.get<double>();
      else if (key == "threshold") p.threshold = value.get<double>();
      else if (key == "step_size") p.step_size = value.get<double>();
      else if (key == "max_iters") p.max_iters = value.get<std::size_t>();
      else if (key == "seed") p.seed = value.get<std::uint64_t>();
      else throw ValidationError("unknown spring parameter '" + key + "'");
    }
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("bad spring parameter: ") + e.what());
  }
  p.validate();
  return p;
}

Json spring_params_to_json(const SpringParams& p) {
  return {{"delta_rep", p.delta_rep}, {"delta_visc", p.delta_visc}, {"delta_lin", p.delta_lin},
          {"length", p.length},       {"threshold", p.threshold},   {"step_size", p.step_size},
          {"max_iters", p.max_iters}, {"seed", p.seed}};
}

SpringInputs coordinate_objective(const Polytope& p, std::size_t k) {
  if (k < 1 || k > p.ambient_dim) throw ValidationError("objective coordinate out of range");
  SpringInputs inputs;
  inputs.objective.emplace();
  for (const auto& v : p.vertices) inputs.objective->push_back(to_double(v[k - 1]));
  return inputs;
}

SpringInputs linear_objective(const Polytope& p, const std::vector<Scalar>& c) {
  if (c.size() != p.ambient_dim) throw ValidationError("objective needs one coefficient per coordinate");
  SpringInputs inputs;
  inputs.objective.emplace();
  for (const auto& v : p.vertices) inputs.objective->push_back(to_double(dot(c, v)));
  return inputs;
}

std::vector<double> original_edge_lengths(const Polytope& p, const Graph& g) {
  if (g.num_nodes() != p.num_vertices()) throw ValidationError("graph does not match the polytope");
  std::vector<std::vector<double>> coords;
  for (const auto& v : p.vertices) coords.push_back(doubles(v));
  return desired_lengths_from_coords(g, coords, LengthNorm::euclidean);
}

Scene schlegel_scene(const Polytope& p, const SchlegelState& state) {
  if (p.dim != 3 && p.dim != 4) throw ValidationError("Schlegel scenes need a 3- or 4-polytope");
  SchlegelDiagram d = project(p, state);
  Graph g(p.num_vertices(), NodeKind::primal);
  for (auto c : d.cells_of_dim(1)) {
    std::vector<std::size_t> ends;
    for (auto v = d.cells[c].vertices.find_first(); v != Bitset::npos; v = d.cells[c].vertices.find_next(v)) {
      ends.push_back(v);
    }
    g.add_edge(ends[0], ends[1]);
  }
  std::vector<std::vector<double>> positions;
  for (const auto& x : d.positions) positions.push_back(d.frame.isometric(x));
  Scene s = scene_from_graph(g, positions);
  for (std::size_t v = 0; v < p.num_vertices(); ++v) {
    if (p.incidence[state.facet].test(v)) s.nodes[v].color = "#e61e1e";
  }
  s.metadata = {{"source", "schlegel"},
                {"facet", state.facet},
                {"facet_vertices", p.facet_vertices(state.facet)},
                {"zeta", scalar_to_json(state.zeta)},
                {"bounded", state.bounded()},
                {"viewpoint", vector_to_json(state.viewpoint)}};
  return s;
}

Scene spring_scene(const Graph& g, const EmbeddingState& state, const SpringParams& params,
                   const std::optional<SpringResult>& result) {
  Scene s = scene_from_graph(g, state.current);
  s.metadata = {{"source", "spring"}, {"params", spring_params_to_json(params)}, {"iterations", state.iteration}};
  if (result) {
    s.metadata["converged"] = result->converged;
    s.metadata["fluctuation"] = result->fluctuation;
  } else if (!state.previous.empty()) {
    s.metadata["fluctuation"] = fluctuation(state.current, state.previous);
  }
  return s;
}

EmbeddingState spring_steps(const Graph& g, EmbeddingState start, const SpringParams& params,
                            const SpringInputs& inputs, std::size_t count) {
  params.validate();
  for (std::size_t i = 0; i < count; ++i) {
    start = step(g, start, params, inputs);
    for (const auto& p : start.current) {
      for (double x : p) {
        if (!std::isfinite(x)) throw ComputationError("embedding diverged at iteration " + std::to_string(start.iteration));
      }
    }
  }
  return start;
}

std::vector<std::size_t> default_outer_face(const Graph& g) {
  auto faces = planar_faces(g);
  if (!faces) throw ValidationError("not planar");
  std::size_t best = 0;
  for (std::size_t f = 1; f < faces->size(); ++f) {
    if ((*faces)[f].size() > (*faces)[best].size()) best = f;
  }
  return (*faces)[best];
}

Scene tutte_scene(const Graph& g, const std::optional<std::vector<std::size_t>>& outer) {
  std::vector<std::size_t> face = outer ? *outer : default_outer_face(g);
  Positions ring;
  for (std::size_t i = 0; i < face.size(); ++i) {
    double angle = 2 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(face.size());
    ring.push_back({std::cos(angle), std::sin(angle)});
  }
  Scene s = scene_from_graph(g, planar_tutte(g, face, ring));
  s.metadata = {{"source", "tutte"}, {"outer_face", face}};
  return s;
}

Scene realization_scene(const Graph& g, const LiftedRealization& r) {
  const Polytope& p = r.polytope;
  std::vector<std::vector<double>> positions;
  std::vector<std::size_t> node_of_vertex(p.num_vertices());
  for (std::size_t v = 0; v < g.num_nodes(); ++v) {
    positions.push_back(doubles(p.vertices[r.vertex_of_node[v]]));
    node_of_vertex[r.vertex_of_node[v]] = v;
  }
  Scene s = scene_from_graph(g, positions);
  for (std::size_t f = 0; f < p.num_facets(); ++f) {
    auto verts = p.facet_vertices(f);
    std::array<double, 3> c{0, 0, 0};
    for (auto v : verts) {
      for (int k = 0; k < 3; ++k) c[k] += to_double(p.vertices[v][k]) / static_cast<double>(verts.size());
    }
    auto rel = [&](std::size_t v) {
      return std::array<double, 3>{to_double(p.vertices[v][0]) - c[0], to_double(p.vertices[v][1]) - c[1],
                                   to_double(p.vertices[v][2]) - c[2]};
    };
    // Angles around the outward normal.
    auto n = doubles(p.facets[f].a);
    auto u = rel(verts[0]);
    std::array<double, 3> w{n[1] * u[2] - n[2] * u[1], n[2] * u[0] - n[0] * u[2], n[0] * u[1] - n[1] * u[0]};
    std::vector<std::pair<double, std::size_t>> order;
    for (auto v : verts) {
      auto x = rel(v);
      order.push_back({std::atan2(x[0] * w[0] + x[1] * w[1] + x[2] * w[2], x[0] * u[0] + x[1] * u[1] + x[2] * u[2]),
                       node_of_vertex[v]});
    }
    std::sort(order.begin(), order.end());
    std::vector<std::size_t> face;
    for (const auto& [angle, node] : order) face.push_back(node);
    s.faces.push_back(std::move(face));
  }
  s.metadata = {{"source", "realize"}, {"via_dual", r.via_dual}};
  return s;
}

}  // namespace polydraw
