#include "polydraw/tightspan.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace polydraw {

namespace {

std::vector<Vector> fill_matrix(std::size_t n, const std::vector<Scalar>& entries) {
  std::vector<Vector> d(n, Vector(n, Scalar(0)));
  const std::size_t k = entries.size();
  if (k == n * n) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) d[i][j] = entries[i * n + j];
    }
    return d;
  }
  bool with_diagonal = k == n * (n + 1) / 2;
  if (!with_diagonal && k != n * (n - 1) / 2) {
    throw ValidationError("expected " + std::to_string(n * (n - 1) / 2) + ", " + std::to_string(n * (n + 1) / 2) +
                          " or " + std::to_string(n * n) + " distances, got " + std::to_string(k));
  }
  std::size_t next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = with_diagonal ? i : i + 1; j < n; ++j) {
      d[i][j] = entries[next];
      d[j][i] = entries[next];
      ++next;
    }
  }
  if (with_diagonal) {
    for (std::size_t i = 0; i < n; ++i) d[i][i] = entries[i * n - i * (i - 1) / 2];
  }
  return d;
}

}  // namespace

void Metric::validate() const {
  const std::size_t n = labels.size();
  if (n == 0) throw ValidationError("metric on no taxa");
  if (d.size() != n) throw ValidationError("metric matrix must be n x n");
  for (std::size_t i = 0; i < n; ++i) {
    if (d[i].size() != n) throw ValidationError("metric matrix must be n x n");
    if (d[i][i] != 0) throw ValidationError("metric has nonzero diagonal entry at " + labels[i]);
    for (std::size_t j = 0; j < n; ++j) {
      if (d[i][j] < 0) throw ValidationError("metric has a negative entry");
      if (d[i][j] != d[j][i]) throw ValidationError("metric is not symmetric");
    }
  }
}

bool Metric::satisfies_triangle_inequality() const {
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (d[i][k] > d[i][j] + d[j][k]) return false;
      }
    }
  }
  return true;
}

Metric parse_metric_text(const std::string& text) {
  std::istringstream lines(text);
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(lines, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::string w;
    while (words >> w) tokens.push_back(w);
  }
  if (tokens.empty()) throw ValidationError("empty metric file");
  std::size_t n = 0;
  try {
    std::size_t used = 0;
    long long value = std::stoll(tokens[0], &used);
    if (used != tokens[0].size() || value <= 0) throw std::invalid_argument("n");
    n = static_cast<std::size_t>(value);
  } catch (const std::logic_error&) {
    throw ValidationError("metric file must start with the number of taxa");
  }
  if (tokens.size() < 1 + n) throw ValidationError("metric file has fewer than n labels");
  Metric m;
  m.labels.assign(tokens.begin() + 1, tokens.begin() + 1 + static_cast<std::ptrdiff_t>(n));
  std::vector<Scalar> entries;
  for (auto it = tokens.begin() + 1 + static_cast<std::ptrdiff_t>(n); it != tokens.end(); ++it) {
    entries.push_back(parse_scalar(*it));
  }
  m.d = fill_matrix(n, entries);
  m.validate();
  return m;
}

Metric metric_from_json(const Json& j) {
  Metric m;
  try {
    const Json& rows = j.at("matrix");
    if (!rows.is_array()) throw ValidationError("\"matrix\" must be an array of rows");
    const std::size_t n = rows.size();
    if (j.contains("labels")) {
      m.labels = j["labels"].get<std::vector<std::string>>();
    } else {
      for (std::size_t i = 0; i < n; ++i) m.labels.push_back("t" + std::to_string(i + 1));
    }
    if (m.labels.size() != n) throw ValidationError("one label per matrix row required");
    std::vector<Scalar> entries;
    bool square = std::all_of(rows.begin(), rows.end(), [&](const Json& r) { return r.size() == n; });
    for (std::size_t i = 0; i < n; ++i) {
      const Json& r = rows[i];
      if (!square && r.size() != n - i) throw ValidationError("matrix rows must be square or upper triangular");
      for (const auto& x : r) entries.push_back(scalar_from_json(x));
    }
    m.d = fill_matrix(n, entries);
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("malformed metric: ") + e.what());
  }
  m.validate();
  return m;
}

Json metric_to_json(const Metric& m) {
  Json rows = Json::array();
  for (const auto& r : m.d) rows.push_back(vector_to_json(r));
  return {{"labels", m.labels}, {"matrix", rows}};
}

Polyhedron polyhedron_of_metric(const Metric& m) {
  m.validate();
  const std::size_t n = m.size();
  std::vector<Inequality> rows;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      Vector a(n, Scalar(0));
      a[i] -= 1;
      a[j] -= 1;
      rows.push_back({std::move(a), -m.d[i][j]});
    }
  }
  return vertex_enumeration(n, rows);
}

BoundedComplex bounded_subcomplex(const Polyhedron& p) {
  BoundedComplex c;
  c.vertices = p.vertices;
  c.lattice = bounded_faces(p);
  for (std::size_t v = 0; v < c.vertices.size(); ++v) c.skeleton.add_node({"v" + std::to_string(v), NodeKind::primal});
  for (auto f : c.lattice.faces_of_dim(1)) {
    const Bitset& face = c.lattice.faces[f];
    std::size_t u = face.find_first();
    std::size_t v = face.find_next(u);
    c.skeleton.add_edge(u, v);
  }
  return c;
}

bool is_treelike(const Metric& m) { return bounded_subcomplex(polyhedron_of_metric(m)).dim() <= 1; }

std::vector<std::optional<std::size_t>> taxon_vertices(const Metric& m, const BoundedComplex& complex) {
  std::vector<std::optional<std::size_t>> out;
  for (const auto& row : m.d) {
    auto it = std::find(complex.vertices.begin(), complex.vertices.end(), row);
    if (it == complex.vertices.end()) {
      out.push_back(std::nullopt);
    } else {
      out.push_back(static_cast<std::size_t>(it - complex.vertices.begin()));
    }
  }
  return out;
}

std::vector<int> edge_dim_colors(const BoundedComplex& complex) {
  const auto& edges = complex.skeleton.edges();
  std::vector<int> out(edges.size(), 1);
  for (std::size_t f = 0; f < complex.lattice.faces.size(); ++f) {
    int dim = complex.lattice.dims[f];
    if (dim < 2) continue;
    const Bitset& face = complex.lattice.faces[f];
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (face.test(edges[i].u) && face.test(edges[i].v)) out[i] = std::max(out[i], dim);
    }
  }
  return out;
}

TightSpanDrawing visualize_tightspan(const Metric& m, TightSpanMode mode, const SpringParams& params) {
  BoundedComplex complex = bounded_subcomplex(polyhedron_of_metric(m));
  Graph g = complex.skeleton;
  auto taxa = taxon_vertices(m, complex);
  for (std::size_t t = 0; t < taxa.size(); ++t) {
    if (!taxa[t]) continue;
    Node& node = g.nodes()[*taxa[t]];
    node.label = node.kind == NodeKind::taxon ? node.label + "," + m.labels[t] : m.labels[t];
    node.kind = NodeKind::taxon;
  }

  TightSpanDrawing out;
  SpringInputs inputs;
  if (mode == TightSpanMode::approximate_metric && g.num_edges() > 0) {
    std::vector<std::vector<double>> coords;
    for (const auto& v : complex.vertices) {
      coords.emplace_back();
      for (const auto& x : v) coords.back().push_back(to_double(x));
    }
    out.lengths = desired_lengths_from_coords(g, coords, LengthNorm::maxnorm);
    double mean = std::accumulate(out.lengths.begin(), out.lengths.end(), 0.0) / static_cast<double>(out.lengths.size());
    for (auto& l : out.lengths) l *= params.length / mean;
    inputs.lengths = out.lengths;
  } else {
    out.lengths.assign(g.num_edges(), params.length);
  }
  out.spring = run(g, params, inputs);

  out.scene = scene_from_graph(g, out.spring.state.current);
  if (mode == TightSpanMode::combinatorial) {
    auto dims = edge_dim_colors(complex);
    int max_dim = std::max(1, complex.dim());
    for (std::size_t i = 0; i < dims.size(); ++i) {
      out.scene.edges[i].color_class = dims[i];
      out.scene.edges[i].color = dimension_color(dims[i], max_dim);
    }
  }
  out.scene.metadata = {{"source", "tightspan"},
                        {"mode", mode == TightSpanMode::combinatorial ? "combinatorial" : "approximate_metric"},
                        {"taxa", m.labels},
                        {"complex_dim", complex.dim()},
                        {"converged", out.spring.converged},
                        {"iterations", out.spring.state.iteration}};
  return out;
}

}  // namespace polydraw
