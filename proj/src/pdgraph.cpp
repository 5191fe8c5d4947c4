#include "polydraw/pdgraph.hpp"

#include "polydraw/serialize.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace polydraw {

int SimplicialComplex::dim() const {
  std::size_t largest = 0;
  for (const auto& f : facets) largest = std::max(largest, f.size());
  return static_cast<int>(largest) - 1;
}

bool SimplicialComplex::is_pure() const {
  return std::all_of(facets.begin(), facets.end(),
                     [&](const auto& f) { return static_cast<int>(f.size()) - 1 == dim(); });
}

void SimplicialComplex::validate() {
  for (auto& f : facets) {
    if (f.empty()) throw ValidationError("empty facet");
    std::sort(f.begin(), f.end());
    if (std::adjacent_find(f.begin(), f.end()) != f.end()) throw ValidationError("facet repeats a vertex");
    if (f.back() >= labels.size()) throw ValidationError("facet vertex out of range");
  }
  for (std::size_t a = 0; a < facets.size(); ++a) {
    for (std::size_t b = 0; b < facets.size(); ++b) {
      if (a != b && std::includes(facets[b].begin(), facets[b].end(), facets[a].begin(), facets[a].end())) {
        throw ValidationError("facet " + std::to_string(a) + " is contained in facet " + std::to_string(b));
      }
    }
  }
  if (!coordinates.empty() && coordinates.size() != labels.size()) {
    throw ValidationError("one coordinate row per vertex required");
  }
}

std::vector<std::size_t> SimplicialComplex::f_vector() const {
  std::vector<std::set<std::vector<std::size_t>>> faces(static_cast<std::size_t>(std::max(dim(), 0)) + 1);
  for (const auto& f : facets) {
    const std::size_t k = f.size();
    for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
      std::vector<std::size_t> face;
      for (std::size_t i = 0; i < k; ++i) {
        if (mask >> i & 1) face.push_back(f[i]);
      }
      faces[face.size() - 1].insert(std::move(face));
    }
  }
  std::vector<std::size_t> out;
  for (const auto& s : faces) out.push_back(s.size());
  return out;
}

SimplicialComplex complex_from_json(const Json& j) {
  SimplicialComplex k;
  try {
    const Json& v = j.at("vertices");
    if (v.is_number_unsigned()) {
      for (std::size_t i = 0; i < v.get<std::size_t>(); ++i) k.labels.push_back(std::to_string(i));
    } else {
      k.labels = v.get<std::vector<std::string>>();
    }
    k.facets = j.at("facets").get<std::vector<std::vector<std::size_t>>>();
    if (j.contains("coordinates")) {
      for (const auto& row : j["coordinates"]) k.coordinates.push_back(vector_from_json(row));
    }
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("malformed complex: ") + e.what());
  }
  k.validate();
  return k;
}

Json complex_to_json(const SimplicialComplex& k) {
  Json out{{"vertices", k.labels}, {"facets", k.facets}};
  if (!k.coordinates.empty()) {
    out["coordinates"] = Json::array();
    for (const auto& c : k.coordinates) out["coordinates"].push_back(vector_to_json(c));
  }
  return out;
}

SimplicialComplex complex_from_off(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") != std::string::npos) lines.push_back(line);
  }
  std::size_t at = 0;
  if (!lines.empty() && lines[0].find("OFF") != std::string::npos) ++at;
  if (at >= lines.size()) throw ValidationError("OFF input without a counts line");
  std::size_t nv = 0, nf = 0;
  {
    std::istringstream counts(lines[at++]);
    if (!(counts >> nv >> nf)) throw ValidationError("OFF counts line must start with #vertices #facets");
  }
  if (lines.size() < at + nv + nf) throw ValidationError("OFF input is truncated");
  SimplicialComplex k;
  for (std::size_t i = 0; i < nv; ++i) {
    std::istringstream row(lines[at++]);
    Vector coords;
    std::string w;
    while (row >> w) coords.push_back(parse_scalar(w));
    k.labels.push_back(std::to_string(i));
    k.coordinates.push_back(std::move(coords));
  }
  for (std::size_t i = 0; i < nf; ++i) {
    std::istringstream row(lines[at++]);
    std::size_t count = 0;
    if (!(row >> count)) throw ValidationError("bad OFF facet line");
    std::vector<std::size_t> facet(count);
    for (auto& v : facet) {
      if (!(row >> v)) throw ValidationError("bad OFF facet line");
    }
    k.facets.push_back(std::move(facet));
  }
  k.validate();
  return k;
}

std::string to_string(PdEdgeKind kind) {
  switch (kind) {
    case PdEdgeKind::primal: return "primal";
    case PdEdgeKind::dual: return "dual";
    case PdEdgeKind::artificial: return "artificial";
  }
  return "primal";
}

std::size_t PdGraph::count(PdEdgeKind kind) const {
  return static_cast<std::size_t>(std::count(edge_kinds.begin(), edge_kinds.end(), kind));
}

PdGraph build_pd_graph(const SimplicialComplex& k) {
  SimplicialComplex checked = k;
  checked.validate();
  PdGraph pd;
  pd.num_primal = checked.num_vertices();
  pd.num_dual = checked.facets.size();
  for (const auto& label : checked.labels) pd.graph.add_node({label, NodeKind::primal});
  for (std::size_t f = 0; f < pd.num_dual; ++f) pd.graph.add_node({"F" + std::to_string(f), NodeKind::dual});

  auto add = [&](std::size_t u, std::size_t v, PdEdgeKind kind) {
    if (pd.graph.add_edge(u, v)) pd.edge_kinds.push_back(kind);
  };
  for (const auto& f : checked.facets) {
    for (std::size_t a = 0; a < f.size(); ++a) {
      for (std::size_t b = a + 1; b < f.size(); ++b) add(f[a], f[b], PdEdgeKind::primal);
    }
  }
  std::map<std::vector<std::size_t>, std::vector<std::size_t>> cofacets;
  for (std::size_t i = 0; i < checked.facets.size(); ++i) {
    const auto& f = checked.facets[i];
    if (f.size() < 2) continue;
    for (std::size_t drop = 0; drop < f.size(); ++drop) {
      std::vector<std::size_t> ridge;
      for (std::size_t a = 0; a < f.size(); ++a) {
        if (a != drop) ridge.push_back(f[a]);
      }
      cofacets[ridge].push_back(i);
    }
  }
  for (const auto& [ridge, fs] : cofacets) {
    if (fs.size() >= 3) pd.non_manifold = true;
    for (std::size_t a = 0; a < fs.size(); ++a) {
      for (std::size_t b = a + 1; b < fs.size(); ++b) add(pd.num_primal + fs[a], pd.num_primal + fs[b], PdEdgeKind::dual);
    }
  }
  for (std::size_t i = 0; i < checked.facets.size(); ++i) {
    for (auto v : checked.facets[i]) add(v, pd.num_primal + i, PdEdgeKind::artificial);
  }
  return pd;
}

std::vector<double> pd_lengths(const PdGraph& pd, const PdLengths& lengths) {
  for (double l : {lengths.primal, lengths.dual, lengths.artificial}) {
    if (!(l > 0) || !std::isfinite(l)) throw ValidationError("pd-graph edge lengths must be positive");
  }
  std::vector<double> out;
  for (auto kind : pd.edge_kinds) {
    out.push_back(kind == PdEdgeKind::primal ? lengths.primal
                  : kind == PdEdgeKind::dual ? lengths.dual
                                             : lengths.artificial);
  }
  return out;
}

Scene pd_scene(const PdGraph& pd, const SpringParams& params, const PdLengths& lengths, bool hide_artificial,
               SpringResult* result) {
  SpringInputs inputs;
  inputs.lengths = pd_lengths(pd, lengths);
  SpringResult r = run(pd.graph, params, inputs);
  Scene scene = scene_from_graph(pd.graph, r.state.current);
  std::vector<SceneEdge> edges;
  for (std::size_t i = 0; i < scene.edges.size(); ++i) {
    if (hide_artificial && pd.edge_kinds[i] == PdEdgeKind::artificial) continue;
    SceneEdge e = scene.edges[i];
    e.kind = to_string(pd.edge_kinds[i]);
    edges.push_back(e);
  }
  scene.edges = std::move(edges);
  scene.metadata = {{"source", "pdgraph"},
                    {"lengths", {{"primal", lengths.primal}, {"dual", lengths.dual}, {"artificial", lengths.artificial}}},
                    {"artificial_hidden", hide_artificial},
                    {"non_manifold", pd.non_manifold},
                    {"converged", r.converged},
                    {"iterations", r.state.iteration}};
  if (result) *result = std::move(r);
  return scene;
}

double dual_containment(const PdGraph& pd, const SimplicialComplex& k, const std::vector<Point3>& positions) {
  std::size_t inside = 0, total = 0;
  for (std::size_t f = 0; f < k.facets.size(); ++f) {
    const auto& facet = k.facets[f];
    if (facet.size() != 4) continue;
    ++total;
    // Barycentric coordinates of the dual node: solve [b-a c-a d-a] t = p - a.
    const Point3& a = positions[facet[0]];
    std::array<Point3, 3> cols;
    for (int c = 0; c < 3; ++c) {
      for (int r = 0; r < 3; ++r) cols[c][r] = positions[facet[c + 1]][r] - a[r];
    }
    Point3 p;
    for (int r = 0; r < 3; ++r) p[r] = positions[pd.num_primal + f][r] - a[r];
    auto det = [](const Point3& x, const Point3& y, const Point3& z) {
      return x[0] * (y[1] * z[2] - y[2] * z[1]) - x[1] * (y[0] * z[2] - y[2] * z[0]) + x[2] * (y[0] * z[1] - y[1] * z[0]);
    };
    double d = det(cols[0], cols[1], cols[2]);
    if (d == 0) continue;
    double t1 = det(p, cols[1], cols[2]) / d;
    double t2 = det(cols[0], p, cols[2]) / d;
    double t3 = det(cols[0], cols[1], p) / d;
    if (t1 > 0 && t2 > 0 && t3 > 0 && t1 + t2 + t3 < 1) ++inside;
  }
  return total == 0 ? 0.0 : static_cast<double>(inside) / static_cast<double>(total);
}

SimplicialComplex minimal_cube4_triangulation() {
  SimplicialComplex k;
  auto bits = [](std::size_t v) { return static_cast<std::size_t>(__builtin_popcount(static_cast<unsigned>(v))); };
  for (std::size_t v = 0; v < 16; ++v) {
    std::string label;
    Vector coords;
    for (int i = 0; i < 4; ++i) {
      label += (v >> i & 1) ? '1' : '0';
      coords.push_back(Scalar(static_cast<long>(v >> i & 1)));
    }
    k.labels.push_back(label);
    k.coordinates.push_back(coords);
  }
  for (std::size_t v = 0; v < 16; ++v) {
    if (bits(v) % 2 == 0) continue;
    std::vector<std::size_t> corner{v};
    for (int i = 0; i < 4; ++i) corner.push_back(v ^ (std::size_t{1} << i));
    k.facets.push_back(corner);
  }
  // The even vertices form a cross polytope with antipodal pairs {v, 15 - v};
  // cone the pair {0, 15} with a choice from each of the other three pairs.
  const std::array<std::size_t, 3> pairs{3, 5, 6};
  for (std::size_t signs = 0; signs < 8; ++signs) {
    std::vector<std::size_t> s{0, 15};
    for (std::size_t i = 0; i < 3; ++i) s.push_back(signs >> i & 1 ? 15 - pairs[i] : pairs[i]);
    k.facets.push_back(s);
  }
  k.validate();
  return k;
}

SimplicialComplex genus_two_solid() {
  SimplicialComplex k;
  std::map<std::array<int, 3>, std::size_t> index;
  auto vertex = [&](std::array<int, 3> p) {
    auto [it, inserted] = index.emplace(p, k.labels.size());
    if (inserted) {
      k.labels.push_back(std::to_string(p[0]) + "," + std::to_string(p[1]) + "," + std::to_string(p[2]));
      k.coordinates.push_back({Scalar(p[0]), Scalar(p[1]), Scalar(p[2])});
    }
    return it->second;
  };
  for (int x = 0; x < 5; ++x) {
    for (int y = 0; y < 3; ++y) {
      if (y == 1 && (x == 1 || x == 3)) continue;
      std::array<int, 3> order{0, 1, 2};
      do {
        std::array<int, 3> p{x, y, 0};
        std::vector<std::size_t> simplex{vertex(p)};
        for (int axis : order) {
          ++p[axis];
          simplex.push_back(vertex(p));
        }
        k.facets.push_back(simplex);
      } while (std::next_permutation(order.begin(), order.end()));
    }
  }
  k.validate();
  return k;
}

}  // namespace polydraw
