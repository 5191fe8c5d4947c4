#include "polydraw/rubber.hpp"

#include "polydraw/face_lattice.hpp"
#include "polydraw/linalg.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>
#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>
#include <boost/graph/planar_face_traversal.hpp>

#include <algorithm>
#include <cmath>
#include <set>

namespace polydraw {

namespace {

std::vector<double> weights_or_unit(const RubberProblem& p) {
  if (p.weights.empty()) return std::vector<double>(p.graph.num_edges(), 1.0);
  if (p.weights.size() != p.graph.num_edges()) throw ValidationError("one weight per edge required");
  for (double w : p.weights) {
    if (!(w > 0) || !std::isfinite(w)) throw ValidationError("spring constants must be positive");
  }
  return p.weights;
}

std::size_t check_problem(const RubberProblem& p) {
  if (p.fixed.empty()) throw ValidationError("no fixed nodes");
  if (!p.graph.is_connected()) throw ValidationError("graph is not connected");
  std::size_t dim = p.fixed.begin()->second.size();
  for (const auto& [v, x] : p.fixed) {
    if (v >= p.graph.num_nodes()) throw ValidationError("fixed node out of range");
    if (x.size() != dim || dim == 0) throw ValidationError("fixed positions of inconsistent dimension");
  }
  return dim;
}

// Signed doubled area of a polygon.
Scalar doubled_area(const std::vector<Vector>& pos, const std::vector<std::size_t>& cycle) {
  Scalar a(0);
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    const auto& p = pos[cycle[i]];
    const auto& q = pos[cycle[(i + 1) % cycle.size()]];
    a += p[0] * q[1] - p[1] * q[0];
  }
  return a;
}

bool same_cycle(std::vector<std::size_t> a, const std::vector<std::size_t>& b) {
  if (a.size() != b.size()) return false;
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t s = 0; s < a.size(); ++s) {
      if (std::equal(a.begin(), a.end(), b.begin())) return true;
      std::rotate(a.begin(), a.begin() + 1, a.end());
    }
    std::reverse(a.begin(), a.end());
  }
  return false;
}

bool strictly_convex(const Positions& pts) {
  const std::size_t k = pts.size();
  if (k < 3) return false;
  int sign = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const auto& a = pts[i];
    const auto& b = pts[(i + 1) % k];
    const auto& c = pts[(i + 2) % k];
    double cr = (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0]);
    int s = cr > 0 ? 1 : (cr < 0 ? -1 : 0);
    if (s == 0 || (sign != 0 && s != sign)) return false;
    sign = s;
  }
  return true;
}

void require_planar_3connected(const Graph& g) {
  if (g.num_nodes() < 4) throw ValidationError("not 3-connected");
  if (!planar_faces(g)) throw ValidationError("not planar");
  if (!k_connected(g, 3)) throw ValidationError("not 3-connected");
}

}  // namespace

Positions tutte_embed(const RubberProblem& problem) {
  const std::size_t dim = check_problem(problem);
  const Graph& g = problem.graph;
  const auto w = weights_or_unit(problem);
  const std::size_t n = g.num_nodes();
  std::vector<std::ptrdiff_t> index(n, -1);
  std::size_t free_count = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (!problem.fixed.count(v)) index[v] = static_cast<std::ptrdiff_t>(free_count++);
  }
  Positions out(n, std::vector<double>(dim, 0.0));
  for (const auto& [v, x] : problem.fixed) out[v] = x;
  if (free_count == 0) return out;

  std::vector<Eigen::Triplet<double>> triplets;
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(free_count), static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < g.num_edges(); ++i) {
    const Edge& e = g.edges()[i];
    for (auto [a, b] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
      if (index[a] < 0) continue;
      triplets.emplace_back(index[a], index[a], w[i]);
      if (index[b] >= 0) {
        triplets.emplace_back(index[a], index[b], -w[i]);
      } else {
        for (std::size_t k = 0; k < dim; ++k) rhs(index[a], static_cast<Eigen::Index>(k)) += w[i] * out[b][k];
      }
    }
  }
  Eigen::SparseMatrix<double> laplacian(static_cast<Eigen::Index>(free_count), static_cast<Eigen::Index>(free_count));
  laplacian.setFromTriplets(triplets.begin(), triplets.end());
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(laplacian);
  if (solver.info() != Eigen::Success) throw ComputationError("rubber band system is singular");
  Eigen::MatrixXd x = solver.solve(rhs);
  if (solver.info() != Eigen::Success) throw ComputationError("rubber band solve failed");
  for (std::size_t v = 0; v < n; ++v) {
    if (index[v] < 0) continue;
    for (std::size_t k = 0; k < dim; ++k) out[v][k] = x(index[v], static_cast<Eigen::Index>(k));
  }
  return out;
}

double tutte_energy(const RubberProblem& problem, const Positions& positions) {
  const auto w = weights_or_unit(problem);
  double e = 0;
  for (std::size_t i = 0; i < problem.graph.num_edges(); ++i) {
    const Edge& edge = problem.graph.edges()[i];
    for (std::size_t k = 0; k < positions[edge.u].size(); ++k) {
      double d = positions[edge.u][k] - positions[edge.v][k];
      e += w[i] * d * d;
    }
  }
  return e;
}

double tutte_residual(const RubberProblem& problem, const Positions& positions) {
  const auto w = weights_or_unit(problem);
  const Graph& g = problem.graph;
  Positions balance(g.num_nodes(), std::vector<double>(positions.front().size(), 0.0));
  for (std::size_t i = 0; i < g.num_edges(); ++i) {
    const Edge& e = g.edges()[i];
    for (std::size_t k = 0; k < balance[e.u].size(); ++k) {
      double d = positions[e.v][k] - positions[e.u][k];
      balance[e.u][k] += w[i] * d;
      balance[e.v][k] -= w[i] * d;
    }
  }
  double worst = 0;
  for (std::size_t v = 0; v < g.num_nodes(); ++v) {
    if (problem.fixed.count(v)) continue;
    for (double b : balance[v]) worst = std::max(worst, std::abs(b));
  }
  return worst;
}

std::vector<Vector> tutte_embed_exact(const Graph& g, const std::map<std::size_t, Vector>& fixed,
                                      const std::vector<Scalar>& weights) {
  if (fixed.empty()) throw ValidationError("no fixed nodes");
  if (!g.is_connected()) throw ValidationError("graph is not connected");
  std::vector<Scalar> w = weights.empty() ? std::vector<Scalar>(g.num_edges(), Scalar(1)) : weights;
  if (w.size() != g.num_edges()) throw ValidationError("one weight per edge required");
  const std::size_t dim = fixed.begin()->second.size();
  const std::size_t n = g.num_nodes();
  std::vector<std::ptrdiff_t> index(n, -1);
  std::size_t m = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (!fixed.count(v)) index[v] = static_cast<std::ptrdiff_t>(m++);
  }
  std::vector<Vector> out(n, Vector(dim, Scalar(0)));
  for (const auto& [v, x] : fixed) {
    if (v >= n || x.size() != dim) throw ValidationError("bad fixed position");
    out[v] = x;
  }
  if (m == 0) return out;
  Matrix a(m, Vector(m, Scalar(0)));
  Matrix rhs(dim, Vector(m, Scalar(0)));
  for (std::size_t i = 0; i < g.num_edges(); ++i) {
    const Edge& e = g.edges()[i];
    for (auto [p, q] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
      if (index[p] < 0) continue;
      a[index[p]][index[p]] += w[i];
      if (index[q] >= 0) {
        a[index[p]][index[q]] -= w[i];
      } else {
        for (std::size_t k = 0; k < dim; ++k) rhs[k][index[p]] += w[i] * out[q][k];
      }
    }
  }
  for (std::size_t k = 0; k < dim; ++k) {
    auto x = solve(a, rhs[k]);
    if (!x) throw ComputationError("rubber band system is singular");
    for (std::size_t v = 0; v < n; ++v) {
      if (index[v] >= 0) out[v][k] = (*x)[index[v]];
    }
  }
  return out;
}

std::optional<std::vector<std::vector<std::size_t>>> planar_faces(const Graph& g) {
  using BGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
                                       boost::property<boost::vertex_index_t, int>,
                                       boost::property<boost::edge_index_t, int>>;
  using EdgeDesc = boost::graph_traits<BGraph>::edge_descriptor;
  BGraph bg(g.num_nodes());
  for (const auto& e : g.edges()) boost::add_edge(e.u, e.v, bg);
  auto edge_index = boost::get(boost::edge_index, bg);
  int counter = 0;
  for (auto [it, end] = boost::edges(bg); it != end; ++it) boost::put(edge_index, *it, counter++);

  using Embedding = std::vector<std::vector<EdgeDesc>>;
  Embedding embedding(g.num_nodes());
  if (!boost::boyer_myrvold_planarity_test(boost::boyer_myrvold_params::graph = bg,
                                           boost::boyer_myrvold_params::embedding = &embedding[0])) {
    return std::nullopt;
  }

  struct Collector : public boost::planar_face_traversal_visitor {
    std::vector<std::vector<std::size_t>>* faces;
    void begin_face() { faces->emplace_back(); }
    void next_vertex(boost::graph_traits<BGraph>::vertex_descriptor v) { faces->back().push_back(v); }
  };
  std::vector<std::vector<std::size_t>> faces;
  Collector visitor;
  visitor.faces = &faces;
  if (g.num_edges() > 0) boost::planar_face_traversal(bg, &embedding[0], visitor, edge_index);
  return faces;
}

Positions planar_tutte(const Graph& g, const std::vector<std::size_t>& outer_face,
                       const Positions& outer_positions) {
  require_planar_3connected(g);
  auto faces = *planar_faces(g);
  if (std::none_of(faces.begin(), faces.end(), [&](const auto& f) { return same_cycle(f, outer_face); })) {
    throw ValidationError("outer cycle is not a face");
  }
  if (outer_positions.size() != outer_face.size()) throw ValidationError("one position per outer node required");
  for (const auto& p : outer_positions) {
    if (p.size() != 2) throw ValidationError("outer positions must be 2D");
  }
  if (!strictly_convex(outer_positions)) throw ValidationError("outer positions not in strictly convex position");
  RubberProblem problem{g, {}, {}};
  for (std::size_t i = 0; i < outer_face.size(); ++i) problem.fixed[outer_face[i]] = outer_positions[i];
  return tutte_embed(problem);
}

std::vector<Scalar> complete_boundary_stress(const Graph& g, const std::vector<Vector>& positions,
                                             const std::vector<std::size_t>& outer_face,
                                             std::vector<Scalar> stress) {
  if (stress.size() != g.num_edges()) throw ValidationError("one stress value per edge required");
  const std::size_t k = outer_face.size();
  std::vector<std::size_t> unknown;
  for (std::size_t i = 0; i < k; ++i) {
    auto e = g.edge_index(outer_face[i], outer_face[(i + 1) % k]);
    if (!e) throw ValidationError("outer cycle uses a non-edge");
    unknown.push_back(*e);
    stress[*e] = 0;
  }
  // Rows: two coordinates per outer node. Columns: unknowns, then the constant.
  Matrix system;
  for (auto v : outer_face) {
    for (std::size_t c = 0; c < 2; ++c) {
      Vector row(unknown.size() + 1, Scalar(0));
      for (auto w : g.neighbors(v)) {
        std::size_t e = *g.edge_index(v, w);
        Scalar d = positions[w][c] - positions[v][c];
        auto pos = std::find(unknown.begin(), unknown.end(), e);
        if (pos != unknown.end()) {
          row[pos - unknown.begin()] += d;
        } else {
          row.back() -= stress[e] * d;
        }
      }
      system.push_back(std::move(row));
    }
  }
  RowEchelon ref = reduced_row_echelon(system, unknown.size() + 1);
  for (std::size_t r = 0; r < ref.rows.size(); ++r) {
    if (ref.pivots[r] == unknown.size()) throw ValidationError("stress not in equilibrium");
    stress[unknown[ref.pivots[r]]] = ref.rows[r].back();
  }
  return stress;
}

Vector maxwell_lift(const Graph& g, const std::vector<Vector>& positions,
                    const std::vector<std::vector<std::size_t>>& faces_in, std::size_t outer_face,
                    const std::vector<Scalar>& stress) {
  const std::size_t n = g.num_nodes();
  if (positions.size() != n || stress.size() != g.num_edges()) throw ValidationError("size mismatch");
  if (outer_face >= faces_in.size()) throw ValidationError("outer face out of range");
  for (std::size_t v = 0; v < n; ++v) {
    Scalar fx(0), fy(0);
    for (auto w : g.neighbors(v)) {
      const Scalar& s = stress[*g.edge_index(v, w)];
      fx += s * (positions[w][0] - positions[v][0]);
      fy += s * (positions[w][1] - positions[v][1]);
    }
    if (fx != 0 || fy != 0) throw ValidationError("stress not in equilibrium");
  }

  // Bounded faces run counterclockwise and the outer face clockwise, so each
  // directed edge has its face on the left.
  auto faces = faces_in;
  for (std::size_t f = 0; f < faces.size(); ++f) {
    Scalar area = doubled_area(positions, faces[f]);
    if ((f == outer_face) != (area < 0)) std::reverse(faces[f].begin(), faces[f].end());
  }
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> left_of;
  for (std::size_t f = 0; f < faces.size(); ++f) {
    for (std::size_t i = 0; i < faces[f].size(); ++i) {
      left_of[{faces[f][i], faces[f][(i + 1) % faces[f].size()]}] = f;
    }
  }

  // Affine function (a, b, c): a x + b y + c per face, propagated across edges:
  // phi_left - phi_right = stress * cross(p_j - p_i, p - p_i).
  std::vector<std::optional<std::array<Scalar, 3>>> phi(faces.size());
  phi[outer_face] = std::array<Scalar, 3>{Scalar(0), Scalar(0), Scalar(0)};
  std::vector<std::size_t> queue{outer_face};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    std::size_t f = queue[head];
    for (std::size_t i = 0; i < faces[f].size(); ++i) {
      std::size_t a = faces[f][i], b = faces[f][(i + 1) % faces[f].size()];
      auto other = left_of.find({b, a});
      if (other == left_of.end()) throw ValidationError("faces do not form an embedding");
      std::size_t r = other->second;
      if (phi[r]) continue;
      const Scalar& s = stress[*g.edge_index(a, b)];
      const auto& pi = positions[a];
      Scalar ux = positions[b][0] - pi[0], uy = positions[b][1] - pi[1];
      std::array<Scalar, 3> diff{-uy * s, ux * s, (uy * pi[0] - ux * pi[1]) * s};
      std::array<Scalar, 3> next;
      for (int k = 0; k < 3; ++k) next[k] = (*phi[f])[k] - diff[k];
      phi[r] = next;
      queue.push_back(r);
    }
  }

  Vector heights(n);
  std::vector<bool> seen(n, false);
  for (std::size_t f = 0; f < faces.size(); ++f) {
    if (!phi[f]) throw ValidationError("faces do not form a connected embedding");
    for (auto v : faces[f]) {
      const auto& c = *phi[f];
      Scalar h = c[0] * positions[v][0] + c[1] * positions[v][1] + c[2];
      if (seen[v] && heights[v] != h) throw ComputationError("inconsistent lift");
      heights[v] = h;
      seen[v] = true;
    }
  }
  return heights;
}

namespace {

LiftedRealization realize_with_triangle(const Graph& g, const std::vector<std::vector<std::size_t>>& faces,
                                        std::size_t outer) {
  LiftedRealization out;
  out.lifted_graph = g;
  out.faces = faces;
  out.outer_face = outer;
  const auto& tri = faces[outer];
  std::map<std::size_t, Vector> fixed;
  fixed[tri[0]] = {Scalar(0), Scalar(0)};
  fixed[tri[1]] = {Scalar(1), Scalar(0)};
  fixed[tri[2]] = {Scalar(0), Scalar(1)};
  out.planar = tutte_embed_exact(g, fixed);
  out.stress = complete_boundary_stress(g, out.planar, tri, std::vector<Scalar>(g.num_edges(), Scalar(1)));
  out.heights = maxwell_lift(g, out.planar, faces, outer, out.stress);
  std::vector<Vector> lifted;
  for (std::size_t v = 0; v < g.num_nodes(); ++v) lifted.push_back({out.planar[v][0], out.planar[v][1], out.heights[v]});
  out.polytope = convex_hull(lifted);
  if (out.polytope.num_vertices() != g.num_nodes()) throw ComputationError("lift is not strictly convex");
  out.vertex_of_node.resize(g.num_nodes());
  for (std::size_t v = 0; v < g.num_nodes(); ++v) {
    auto it = std::find(out.polytope.vertices.begin(), out.polytope.vertices.end(), lifted[v]);
    out.vertex_of_node[v] = static_cast<std::size_t>(it - out.polytope.vertices.begin());
  }
  return out;
}

std::optional<std::size_t> triangle_face(const std::vector<std::vector<std::size_t>>& faces) {
  for (std::size_t f = 0; f < faces.size(); ++f) {
    if (faces[f].size() == 3) return f;
  }
  return std::nullopt;
}

}  // namespace

LiftedRealization steinitz_realize(const Graph& g) {
  require_planar_3connected(g);
  auto faces = *planar_faces(g);
  if (auto tri = triangle_face(faces)) return realize_with_triangle(g, faces, *tri);

  // Dual graph: faces adjacent across an edge.
  Graph dual;
  for (std::size_t f = 0; f < faces.size(); ++f) dual.add_node({"F" + std::to_string(f), NodeKind::dual});
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> face_of;
  for (std::size_t f = 0; f < faces.size(); ++f) {
    for (std::size_t i = 0; i < faces[f].size(); ++i) {
      std::size_t a = faces[f][i], b = faces[f][(i + 1) % faces[f].size()];
      face_of[{a, b}] = f;
    }
  }
  for (const auto& [key, f] : face_of) {
    auto other = face_of.find({key.second, key.first});
    if (other != face_of.end() && other->second != f) dual.add_edge(f, other->second);
  }
  auto dual_faces = planar_faces(dual);
  auto tri = dual_faces ? triangle_face(*dual_faces) : std::nullopt;
  if (!tri) throw ComputationError("neither the graph nor its dual has a triangular face");
  LiftedRealization out = realize_with_triangle(dual, *dual_faces, *tri);
  out.via_dual = true;
  Polytope q = out.polytope;
  out.polytope = polar(q);

  // Facet i of q becomes vertex i of the polar; it consists of the faces of g
  // around one node.
  std::map<std::set<std::size_t>, std::size_t> node_of_faces;
  for (std::size_t v = 0; v < g.num_nodes(); ++v) {
    std::set<std::size_t> around;
    for (std::size_t f = 0; f < faces.size(); ++f) {
      if (std::find(faces[f].begin(), faces[f].end(), v) != faces[f].end()) around.insert(f);
    }
    node_of_faces[around] = v;
  }
  std::vector<std::size_t> face_of_vertex(q.num_vertices());
  for (std::size_t f = 0; f < faces.size(); ++f) face_of_vertex[out.vertex_of_node[f]] = f;
  out.vertex_of_node.assign(g.num_nodes(), 0);
  for (std::size_t i = 0; i < q.num_facets(); ++i) {
    std::set<std::size_t> around;
    for (auto v : q.facet_vertices(i)) around.insert(face_of_vertex[v]);
    auto it = node_of_faces.find(around);
    if (it == node_of_faces.end()) throw ComputationError("dual realization does not match the graph");
    out.vertex_of_node[it->second] = i;
  }
  return out;
}

}  // namespace polydraw
