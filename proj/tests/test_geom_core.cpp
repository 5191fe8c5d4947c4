#include "oracles.hpp"

#include "polydraw/constructions.hpp"
#include "polydraw/face_lattice.hpp"
#include "polydraw/polyhedron.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace polydraw;

namespace {

Vector vec(std::initializer_list<long> xs) {
  Vector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

std::vector<std::size_t> sizes_of_facets(const Polytope& p) {
  std::vector<std::size_t> out;
  for (const auto& row : p.incidence) out.push_back(row.count());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Polytope> families() {
  return {simplex(2), simplex(3), simplex(4), cube(2), cube(3), cube(4), cross_polytope(3),
          cross_polytope(4), permutohedron(3), permutohedron(4), permutohedron(5), cyclic(3, 6),
          cyclic(4, 7), klee_minty(3), klee_minty(4), product(simplex(2), cube(2))};
}

}  // namespace

TEST(Rational, ParsesFractionsAndDecimals) {
  EXPECT_EQ(parse_scalar("3/6"), Scalar(1, 2));
  EXPECT_EQ(parse_scalar("-0.125"), Scalar(-1, 8));
  EXPECT_EQ(parse_scalar("0.026"), Scalar(13, 500));
  EXPECT_EQ(format_scalar(Scalar(-6, 4)), "-3/2");
  EXPECT_EQ(format_scalar(Scalar(5)), "5");
  EXPECT_THROW(parse_scalar("1/0"), ValidationError);
  EXPECT_THROW(parse_scalar("abc"), ValidationError);
  EXPECT_EQ(scalar_from_double(0.5), Scalar(1, 2));
}

TEST(ConvexHull, SimplexHasComplementIncidence) {
  Polytope p = convex_hull({vec({0, 0, 0}), vec({1, 0, 0}), vec({0, 1, 0}), vec({0, 0, 1})});
  ASSERT_EQ(p.num_facets(), 4u);
  ASSERT_EQ(p.num_vertices(), 4u);
  std::set<std::size_t> missing;
  for (const auto& row : p.incidence) {
    EXPECT_EQ(row.count(), 3u);
    for (std::size_t v = 0; v < 4; ++v) {
      if (!row.test(v)) missing.insert(v);
    }
  }
  EXPECT_EQ(missing.size(), 4u);
  validate(p);
}

TEST(ConvexHull, CubeFVector) {
  FaceLattice l = face_lattice(cube(3));
  EXPECT_EQ(l.rank_counts(), (std::vector<std::size_t>{1, 8, 12, 6, 1}));
}

TEST(ConvexHull, PermutationVectorsGiveFourteenFacets) {
  Polytope p = permutohedron(4);
  EXPECT_EQ(p.num_vertices(), 24u);
  EXPECT_EQ(p.num_facets(), 14u);
  EXPECT_EQ(p.dim, 3);
  EXPECT_EQ(p.equations.size(), 1u);
  validate(p);
}

TEST(ConvexHull, DropsInteriorPointsAndRejectsEmpty) {
  Polytope p = convex_hull({vec({0, 0}), vec({2, 0}), vec({0, 2}), vec({2, 2}), vec({1, 1}), vec({1, 0})});
  EXPECT_EQ(p.num_vertices(), 4u);
  EXPECT_THROW(convex_hull({}), ValidationError);
}

TEST(ConvexHull, LowDimensionalInputUsesChart) {
  Polytope p = convex_hull({vec({1, 1, 1}), vec({2, 1, 1}), vec({1, 3, 1})});
  EXPECT_EQ(p.dim, 2);
  EXPECT_EQ(p.num_facets(), 3u);
  for (const auto& v : p.vertices) EXPECT_EQ(p.from_chart(p.to_chart(v)), v);
  Polytope point = convex_hull({vec({4, 5})});
  EXPECT_EQ(point.dim, 0);
  EXPECT_EQ(point.num_vertices(), 1u);
}

TEST(ConvexHull, MatchesBruteForceFacetsOnRandomPointSets) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coord(-4, 4);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<Vector> pts;
    for (int i = 0; i < 9; ++i) pts.push_back(vec({coord(rng), coord(rng), coord(rng)}));
    Polytope p = convex_hull(pts);
    if (p.dim != 3) continue;
    std::set<std::pair<Vector, Scalar>> got;
    for (const auto& f : p.facets) got.insert({f.a, f.b});
    EXPECT_EQ(got, oracle::hull_facets_brute_force(pts)) << "trial " << trial;
    validate(p);
  }
}

TEST(VertexEnumeration, Orthant) {
  Polyhedron p = vertex_enumeration(2, {{vec({-1, 0}), 0}, {vec({0, -1}), 0}});
  ASSERT_EQ(p.vertices.size(), 1u);
  EXPECT_EQ(p.vertices[0], vec({0, 0}));
  EXPECT_EQ(p.rays, (std::vector<Vector>{vec({0, 1}), vec({1, 0})}));
}

TEST(VertexEnumeration, UnitCube) {
  std::vector<Inequality> h;
  for (std::size_t i = 0; i < 3; ++i) {
    h.push_back({unit_vector(3, i), 1});
    h.push_back({scale(unit_vector(3, i), Scalar(-1)), 0});
  }
  Polyhedron p = vertex_enumeration(3, h);
  EXPECT_EQ(p.vertices.size(), 8u);
  EXPECT_TRUE(p.rays.empty());
}

TEST(VertexEnumeration, TwoPointMetricPolyhedronMatchesBruteForce) {
  // x_i + x_j >= delta(i, j) with delta(1,2) = 1, including i = j rows.
  std::vector<Inequality> h = {{vec({-2, 0}), 0}, {vec({-1, -1}), -1}, {vec({0, -2}), 0}};
  Polyhedron p = vertex_enumeration(2, h);
  auto expected = oracle::enumerate_brute_force(2, h);
  EXPECT_EQ(p.vertices, expected.vertices);
  EXPECT_EQ(p.rays, expected.rays);
  EXPECT_EQ(p.vertices, (std::vector<Vector>{vec({0, 1}), vec({1, 0})}));
}

TEST(VertexEnumeration, RandomSystemsMatchBruteForce) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> coef(-3, 3);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<Inequality> h;
    for (std::size_t i = 0; i < 3; ++i) h.push_back({scale(unit_vector(3, i), Scalar(-1)), 0});
    for (int i = 0; i < 4; ++i) h.push_back({vec({coef(rng), coef(rng), coef(rng)}), Scalar(coef(rng) + 4)});
    Polyhedron p;
    try {
      p = vertex_enumeration(3, h);
    } catch (const ValidationError&) {
      EXPECT_TRUE(oracle::enumerate_brute_force(3, h).vertices.empty());
      continue;
    }
    auto expected = oracle::enumerate_brute_force(3, h);
    EXPECT_EQ(p.vertices, expected.vertices) << "trial " << trial;
    EXPECT_EQ(p.rays, expected.rays) << "trial " << trial;
    ++checked;
  }
  EXPECT_GT(checked, 20);
}

TEST(VertexEnumeration, ReportsEmptyAndNotPointed) {
  try {
    vertex_enumeration(1, {{vec({1}), -1}, {vec({-1}), 0}});
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_STREQ(e.what(), "empty");
  }
  try {
    vertex_enumeration(2, {{vec({1, 0}), 1}});
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_STREQ(e.what(), "not pointed");
  }
  try {
    vertex_enumeration(2, {{vec({1, 0}), -1}, {vec({-1, 0}), 0}});
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_STREQ(e.what(), "empty");
  }
}

TEST(FaceLattice, Triangle) {
  FaceLattice l = face_lattice(simplex(2));
  EXPECT_EQ(l.rank_counts(), (std::vector<std::size_t>{1, 3, 3, 1}));
}

TEST(FaceLattice, PermutohedronTwoFacesAreSquaresOrHexagons) {
  Polytope p = permutohedron(4);
  FaceLattice l = face_lattice(p);
  auto two_faces = l.faces_of_dim(2);
  EXPECT_EQ(two_faces.size(), 14u);
  std::size_t squares = 0, hexagons = 0;
  for (auto f : two_faces) {
    auto k = l.faces[f].count();
    squares += k == 4;
    hexagons += k == 6;
  }
  EXPECT_EQ(squares + hexagons, 14u);
  EXPECT_EQ(squares, 6u);
  EXPECT_EQ(hexagons, 8u);
}

TEST(FaceLattice, IsRankedWithUniqueBottomAndTop) {
  for (const auto& p : families()) {
    FaceLattice l = face_lattice(p);
    auto counts = l.rank_counts();
    EXPECT_EQ(counts.front(), 1u);
    EXPECT_EQ(counts.back(), 1u);
    EXPECT_EQ(l.max_dim(), p.dim);
    for (std::size_t i = 0; i < l.faces.size(); ++i) {
      for (auto c : l.covers[i]) {
        EXPECT_EQ(l.dims[c], l.dims[i] + 1);
        EXPECT_TRUE(l.faces[i].is_proper_subset_of(l.faces[c]));
      }
    }
    // Facets of the lattice are exactly the stored facets.
    EXPECT_EQ(l.faces_of_dim(p.dim - 1).size(), p.num_facets());
  }
}

TEST(FaceLattice, EulerRelationHoldsForFamilies) {
  for (const auto& p : families()) {
    long expected = 1 - ((p.dim % 2 == 0) ? 1 : -1);
    EXPECT_EQ(euler_characteristic(face_lattice(p)), expected) << "dim " << p.dim;
  }
}

TEST(Graphs, SimplexIsSelfDual) {
  Polytope p = simplex(3);
  EXPECT_TRUE(isomorphic(graph_of(p), graphs::complete(4)));
  EXPECT_TRUE(isomorphic(dual_graph_of(p), graphs::complete(4)));
}

TEST(Graphs, CyclicFourPolytopeIsNeighborly) {
  Graph g = graph_of(cyclic(4, 7));
  EXPECT_EQ(g.num_edges(), 21u);
  EXPECT_TRUE(isomorphic(g, graphs::complete(7)));
}

TEST(Graphs, CubeDualIsOctahedron) {
  Graph d = dual_graph_of(cube(3));
  EXPECT_EQ(d.num_nodes(), 6u);
  EXPECT_EQ(d.num_edges(), 12u);
  EXPECT_TRUE(isomorphic(d, graph_of(cross_polytope(3))));
}

TEST(Graphs, PolarityExchangesGraphAndDualGraph) {
  for (const auto& p : families()) {
    Polytope q = polar(p);
    validate(q);
    EXPECT_TRUE(isomorphic(dual_graph_of(p), graph_of(q))) << "dim " << p.dim;
  }
}

TEST(Graphs, SimpleIffPolarIsSimplicial) {
  for (const auto& p : {cube(3), cube(4), simplex(3), simplex(4), permutohedron(4), permutohedron(5),
                        cross_polytope(3), cyclic(4, 7)}) {
    Polytope q = polar(p);
    FaceLattice l = face_lattice(q);
    bool simplicial = true;
    for (std::size_t i = 0; i < l.faces.size(); ++i) {
      if (l.dims[i] >= 0 && l.dims[i] < q.dim && static_cast<int>(l.faces[i].count()) != l.dims[i] + 1) {
        simplicial = false;
      }
    }
    EXPECT_EQ(is_simple(p), simplicial);
  }
}

TEST(KConnected, Examples) {
  EXPECT_FALSE(k_connected(graphs::path(3), 2));
  EXPECT_TRUE(k_connected(graph_of(cube(3)), 3));
  EXPECT_TRUE(k_connected(graph_of(permutohedron(5)), 4));
  EXPECT_FALSE(k_connected(graph_of(cube(3)), 4));
  EXPECT_THROW(k_connected(graphs::path(3), 3), ValidationError);
}

TEST(KConnected, AgreesWithCutEnumeration) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    Graph g(9);
    std::bernoulli_distribution coin(0.45);
    for (std::size_t i = 0; i < 9; ++i) {
      for (std::size_t j = i + 1; j < 9; ++j) {
        if (coin(rng)) g.add_edge(i, j);
      }
    }
    for (std::size_t k = 1; k <= 4; ++k) {
      EXPECT_EQ(k_connected(g, k), oracle::k_connected_brute_force(g, k)) << trial << " k=" << k;
    }
  }
}

TEST(KConnected, BalinskiForFamilies) {
  for (const auto& p : families()) {
    EXPECT_TRUE(k_connected(graph_of(p), static_cast<std::size_t>(p.dim)));
  }
}

TEST(Constructions, PermutohedronThreeIsHexagon) {
  Polytope p = permutohedron(3);
  EXPECT_EQ(p.dim, 2);
  EXPECT_EQ(p.num_vertices(), 6u);
  EXPECT_EQ(p.num_facets(), 6u);
}

TEST(Constructions, KleeMintyHasAscendingHamiltonianPath) {
  Polytope p = klee_minty(3);
  EXPECT_EQ(p.num_vertices(), 8u);
  EXPECT_TRUE(isomorphic(graph_of(p), graph_of(cube(3))));
  std::vector<Scalar> height;
  for (const auto& v : p.vertices) height.push_back(v[2]);
  EXPECT_EQ(longest_ascending_path(graph_of(p), height).size(), 8u);
}

TEST(Constructions, TriangleTimesCube) {
  Polytope p = product(simplex(2), cube(3));
  EXPECT_EQ(p.dim, 5);
  EXPECT_EQ(p.num_vertices(), 24u);
  EXPECT_EQ(p.num_facets(), 9u);
  EXPECT_TRUE(is_simple(p));
  std::vector<std::size_t> expected = {12, 12, 12, 12, 12, 12, 16, 16, 16};
  EXPECT_EQ(sizes_of_facets(p), expected);
}

TEST(Constructions, SimpleFlags) {
  EXPECT_TRUE(is_simple(cube(4)));
  EXPECT_TRUE(is_simple(permutohedron(5)));
  EXPECT_FALSE(is_simple(cyclic(4, 7)));
}

TEST(Constructions, InvalidParameters) {
  EXPECT_THROW(permutohedron(1), ValidationError);
  EXPECT_THROW(cyclic(2, {Scalar(1), Scalar(3), Scalar(2)}), ValidationError);
  EXPECT_THROW(cyclic(2, {Scalar(1), Scalar(1), Scalar(2)}), ValidationError);
  EXPECT_THROW(construct_standard("cube(x)"), ValidationError);
  EXPECT_THROW(construct_standard("dodecahedron(3)"), ValidationError);
}

TEST(Constructions, ExpressionParser) {
  EXPECT_EQ(construct_standard("product(simplex(2), cube(3))").num_vertices(), 24u);
  EXPECT_EQ(construct_standard("cyclic(4;0,1,3,4,6,10)").num_vertices(), 6u);
  EXPECT_EQ(construct_standard("klee_minty(4)").num_vertices(), 16u);
}

TEST(Constructions, HullEnumerationRoundTrip) {
  for (const auto& p : families()) {
    Polytope q = p.in_chart();
    Polyhedron back = vertex_enumeration(q.ambient_dim, q.facets);
    EXPECT_TRUE(back.rays.empty());
    std::set<Vector> a(back.vertices.begin(), back.vertices.end());
    std::set<Vector> b(q.vertices.begin(), q.vertices.end());
    EXPECT_EQ(a, b);
  }
}

TEST(StandardGraphs, PlatonicCounts) {
  EXPECT_EQ(graphs::icosahedron().num_edges(), 30u);
  EXPECT_EQ(graphs::dodecahedron().num_edges(), 30u);
  EXPECT_EQ(graphs::dodecahedron().num_nodes(), 20u);
}
