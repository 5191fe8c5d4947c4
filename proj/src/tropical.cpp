#include "polydraw/tropical.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace polydraw {

void TropicalMatrix::validate() const {
  if (rows.empty() || rows.front().empty()) throw ValidationError("tropical matrix must be at least 1 x 1");
  for (const auto& r : rows) {
    if (r.size() != rows.front().size()) throw ValidationError("tropical matrix rows of different length");
  }
}

TropicalMatrix parse_tropical_matrix(const std::string& text) {
  TropicalMatrix c;
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '[') {
    Json j;
    try {
      j = Json::parse(text);
    } catch (const Json::exception& e) {
      throw ValidationError(std::string("malformed matrix: ") + e.what());
    }
    if (!j.is_array()) throw ValidationError("matrix must be an array of rows");
    for (const auto& r : j) c.rows.push_back(vector_from_json(r));
  } else {
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      std::replace(line.begin(), line.end(), ',', ' ');
      std::istringstream words(line);
      Vector row;
      std::string w;
      while (words >> w) row.push_back(parse_scalar(w));
      if (!row.empty()) c.rows.push_back(std::move(row));
    }
  }
  c.validate();
  return c;
}

Json tropical_matrix_to_json(const TropicalMatrix& c) {
  Json out = Json::array();
  for (const auto& r : c.rows) out.push_back(vector_to_json(r));
  return out;
}

namespace {

// Position of y_i / z_j among the chart coordinates, or -1 if pinned.
std::ptrdiff_t y_index(TropicalChart chart, std::size_t i) {
  if (chart == TropicalChart::y1) return i == 0 ? -1 : static_cast<std::ptrdiff_t>(i - 1);
  return static_cast<std::ptrdiff_t>(i);
}

std::ptrdiff_t z_index(const TropicalMatrix& c, TropicalChart chart, std::size_t j) {
  if (chart == TropicalChart::y1) return static_cast<std::ptrdiff_t>(c.m() - 1 + j);
  return j == 0 ? -1 : static_cast<std::ptrdiff_t>(c.m() + j - 1);
}

}  // namespace

Polyhedron polyhedron_T_C(const TropicalMatrix& c, TropicalChart chart) {
  c.validate();
  const std::size_t dim = c.m() + c.n() - 1;
  std::vector<Inequality> rows;
  for (std::size_t i = 0; i < c.m(); ++i) {
    for (std::size_t j = 0; j < c.n(); ++j) {
      Vector a(dim, Scalar(0));
      if (auto k = y_index(chart, i); k >= 0) a[k] += 1;
      if (auto k = z_index(c, chart, j); k >= 0) a[k] += 1;
      rows.push_back({std::move(a), c.rows[i][j]});
    }
  }
  return vertex_enumeration(dim, rows);
}

Vector tropical_point(const TropicalMatrix& c, TropicalChart chart, const Vector& x) {
  Vector out(c.m() + c.n(), Scalar(0));
  for (std::size_t i = 0; i < c.m(); ++i) {
    if (auto k = y_index(chart, i); k >= 0) out[i] = x[k];
  }
  for (std::size_t j = 0; j < c.n(); ++j) {
    if (auto k = z_index(c, chart, j); k >= 0) out[c.m() + j] = x[k];
  }
  // (y, z) ~ (y + t, z - t): shift so that y_1 = 0.
  Scalar t = out[0];
  for (std::size_t i = 0; i < c.m(); ++i) out[i] -= t;
  for (std::size_t j = 0; j < c.n(); ++j) out[c.m() + j] += t;
  return out;
}

bool TropicalComplex::is_tropical_vertex(std::size_t vertex) const {
  for (auto g : generators) {
    if (row_vertex[g] == vertex) return true;
  }
  return false;
}

Vector tropical_projection(const std::vector<Vector>& rows, const Vector& x) {
  if (rows.empty()) throw ValidationError("projection onto an empty span");
  Vector out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Scalar lambda = x[0] - rows[i][0];
    for (std::size_t j = 1; j < x.size(); ++j) lambda = std::max(lambda, Scalar(x[j] - rows[i][j]));
    Vector candidate = rows[i];
    for (auto& v : candidate) v += lambda;
    if (out.empty()) {
      out = std::move(candidate);
    } else {
      for (std::size_t j = 0; j < x.size(); ++j) out[j] = std::min(out[j], candidate[j]);
    }
  }
  return out;
}

std::vector<std::size_t> tropical_vertices(const TropicalMatrix& c) {
  c.validate();
  std::vector<std::size_t> kept(c.m());
  std::iota(kept.begin(), kept.end(), 0);
  for (std::size_t r = c.m(); r-- > 0;) {
    std::vector<Vector> others;
    for (auto k : kept) {
      if (k != r) others.push_back(c.rows[k]);
    }
    if (!others.empty() && tropical_projection(others, c.rows[r]) == c.rows[r]) {
      kept.erase(std::find(kept.begin(), kept.end(), r));
    }
  }
  return kept;
}

namespace {

// z block shifted so that z_1 = 0.
Vector normalized_z(const Vector& point, std::size_t m) {
  Vector z(point.begin() + static_cast<std::ptrdiff_t>(m), point.end());
  Scalar t = z[0];
  for (auto& v : z) v -= t;
  return z;
}

}  // namespace

TropicalComplex tropical_polytope(const TropicalMatrix& c, TropicalChart chart) {
  TropicalComplex t;
  t.matrix = c;
  t.chart = chart;
  t.polyhedron = polyhedron_T_C(c, chart);
  t.complex = bounded_subcomplex(t.polyhedron);
  for (const auto& v : t.complex.vertices) t.points.push_back(tropical_point(c, chart, v));
  t.generators = tropical_vertices(c);
  // Row i is the pseudo-vertex with z = c_i (up to the diagonal shift).
  t.row_vertex.assign(c.m(), SIZE_MAX);
  for (std::size_t i = 0; i < c.m(); ++i) {
    Vector target = c.rows[i];
    Scalar shift = target[0];
    for (auto& v : target) v -= shift;
    for (std::size_t v = 0; v < t.points.size(); ++v) {
      if (normalized_z(t.points[v], c.m()) == target) {
        t.row_vertex[i] = v;
        break;
      }
    }
    if (t.row_vertex[i] == SIZE_MAX) throw ComputationError("generator row without a pseudo-vertex");
  }
  return t;
}

std::vector<Vector> project_to_R3(const TropicalComplex& t, ProjectionSide side) {
  const std::size_t m = t.matrix.m();
  const std::size_t n = t.matrix.n();
  const std::size_t begin = side == ProjectionSide::first_m ? 0 : m;
  const std::size_t count = side == ProjectionSide::first_m ? m : n;
  if (count - 1 > 3) {
    throw ValidationError("projection has " + std::to_string(count - 1) +
                          " coordinates; use the combinatorial visualization instead");
  }
  std::vector<Vector> out;
  for (const auto& p : t.points) {
    Vector q;
    for (std::size_t k = 1; k < count; ++k) q.push_back(p[begin + k] - p[begin]);
    out.push_back(std::move(q));
  }
  return out;
}

TropicalMatrix tropical_cyclic(std::size_t m, std::size_t n) {
  if (m == 0) throw ValidationError("tropical cyclic polytope needs m >= 1");
  TropicalMatrix c;
  for (std::size_t i = 1; i <= m; ++i) {
    c.rows.emplace_back();
    for (std::size_t j = 0; j <= n; ++j) c.rows.back().push_back(Scalar(static_cast<long>(i * j)));
  }
  return c;
}

TropicalMatrix permutation_matrix(std::size_t n) {
  if (n == 0) throw ValidationError("permutation matrix needs n >= 1");
  std::vector<long> perm(n);
  std::iota(perm.begin(), perm.end(), 1);
  TropicalMatrix c;
  do {
    c.rows.emplace_back();
    for (long x : perm) c.rows.back().push_back(Scalar(x));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return c;
}

Scene tropical_scene(const TropicalComplex& t, const SpringParams& params, SpringResult* result) {
  Graph g = t.complex.skeleton;
  for (std::size_t v = 0; v < g.num_nodes(); ++v) g.nodes()[v].label = "p" + std::to_string(v);
  for (auto r : t.generators) {
    Node& node = g.nodes()[t.row_vertex[r]];
    node.label = "row" + std::to_string(r + 1);
  }
  SpringResult run_result = run(g, params);
  Scene scene = scene_from_graph(g, run_result.state.current);
  scene.metadata = {{"source", "tropical"},
                    {"m", t.matrix.m()},
                    {"n", t.matrix.n()},
                    {"pseudo_vertices", t.num_pseudo_vertices()},
                    {"tropical_vertices", t.generators.size()},
                    {"converged", run_result.converged},
                    {"iterations", run_result.state.iteration}};
  if (result) *result = std::move(run_result);
  return scene;
}

}  // namespace polydraw
