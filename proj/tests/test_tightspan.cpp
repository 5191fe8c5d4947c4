#include "fixtures.hpp"

#include "polydraw/tightspan.hpp"

#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

using namespace polydraw;
using namespace fixture;

namespace {

Metric algae() {
  std::ifstream in(std::string(POLYDRAW_DATA_DIR) + "/algae.txt");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_metric_text(ss.str());
}


std::set<std::pair<std::set<std::size_t>, int>> complex_faces(const BoundedComplex& c) {
  std::set<std::pair<std::set<std::size_t>, int>> out;
  for (std::size_t f = 0; f < c.lattice.faces.size(); ++f) {
    std::set<std::size_t> s;
    for (std::size_t v = 0; v < c.vertices.size(); ++v) {
      if (c.lattice.faces[f].test(v)) s.insert(v);
    }
    out.insert({s, c.lattice.dims[f]});
  }
  return out;
}

double max_norm(const Vector& a, const Vector& b) {
  double out = 0;
  for (std::size_t k = 0; k < a.size(); ++k) out = std::max(out, std::abs(to_double(a[k] - b[k])));
  return out;
}

}  // namespace

TEST(MetricInput, TextFormats) {
  Metric upper = parse_metric_text("3\na b c\n0 1 2\n0 3\n0\n");
  Metric strict = parse_metric_text("3 a b c  1 2 3");
  Metric square = parse_metric_text("# comment\n3\na b c\n0 1 2\n1 0 3\n2 3 0\n");
  EXPECT_EQ(upper.d, strict.d);
  EXPECT_EQ(upper.d, square.d);
  EXPECT_EQ(upper.labels, (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_EQ(upper.d[2][1], 3);
  EXPECT_EQ(parse_metric_text("2 a b 0.026").d[0][1], Scalar(13, 500));
}

TEST(MetricInput, RejectsInvalidMatrices) {
  EXPECT_THROW(parse_metric_text("2 a b 0 1 2 0"), ValidationError);   // asymmetric
  EXPECT_THROW(parse_metric_text("2 a b -1"), ValidationError);        // negative
  EXPECT_THROW(parse_metric_text("2 a b 1 1 1 1"), ValidationError);   // nonzero diagonal
  EXPECT_THROW(parse_metric_text("3 a b c 1 2"), ValidationError);     // wrong count
  EXPECT_THROW(parse_metric_text("x a b 1"), ValidationError);
  EXPECT_THROW(parse_metric_text(""), ValidationError);
}

TEST(MetricInput, JsonRoundTrip) {
  Metric m = algae();
  Json j = metric_to_json(m);
  Metric back = metric_from_json(j);
  EXPECT_EQ(back.labels, m.labels);
  EXPECT_EQ(back.d, m.d);
  Metric upper = metric_from_json(Json::parse(R"({"labels": ["x", "y"], "matrix": [[0, "1/2"], [0]]})"));
  EXPECT_EQ(upper.d[1][0], Scalar(1, 2));
  EXPECT_THROW(metric_from_json(Json::parse(R"({"matrix": [[0, 1], [2, 0]]})")), ValidationError);
}

TEST(MetricInput, TriangleInequalityIsFlaggedNotEnforced) {
  Metric bad = metric_of({{0, 1, 5}, {1, 0, 1}, {5, 1, 0}});
  EXPECT_FALSE(bad.satisfies_triangle_inequality());
  EXPECT_NO_THROW(polyhedron_of_metric(bad));
  EXPECT_TRUE(algae().satisfies_triangle_inequality());
}

TEST(PolyhedronOfMetric, TwoPoints) {
  Metric m = metric_of({{0, 1}, {1, 0}});
  Polyhedron p = polyhedron_of_metric(m);
  EXPECT_EQ(p.inequalities.size(), 3u);  // includes the rows 2 x_i >= 0
  auto oracle = oracle::enumerate_brute_force(2, p.inequalities);
  EXPECT_EQ(std::set<Vector>(p.vertices.begin(), p.vertices.end()),
            std::set<Vector>(oracle.vertices.begin(), oracle.vertices.end()));
  EXPECT_EQ(std::set<Vector>(p.vertices.begin(), p.vertices.end()),
            (std::set<Vector>{{Scalar(1), Scalar(0)}, {Scalar(0), Scalar(1)}}));
}

TEST(PolyhedronOfMetric, SinglePointIsTheHalfLine) {
  Polyhedron p = polyhedron_of_metric(metric_of({{0}}));
  EXPECT_EQ(p.vertices, (std::vector<Vector>{{Scalar(0)}}));
  EXPECT_EQ(p.rays.size(), 1u);
  BoundedComplex c = bounded_subcomplex(p);
  EXPECT_EQ(c.dim(), 0);
}

TEST(PolyhedronOfMetric, ContainmentAndDiagonalRay) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    std::size_t n = 3 + trial % 4;
    std::vector<std::vector<int>> d(n, std::vector<int>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) d[i][j] = d[j][i] = 5 + static_cast<int>(rng() % 6);
    }
    Metric m = metric_of(d);
    Polyhedron p = polyhedron_of_metric(m);
    for (const auto& v : p.vertices) EXPECT_TRUE(p.contains(v));
    Vector diag(n, Scalar(1));
    for (const auto& f : p.inequalities) EXPECT_LE(dot(f.a, diag), 0);
    for (const auto& row : m.d) EXPECT_TRUE(p.contains(row));
    BoundedComplex c = bounded_subcomplex(p);
    EXPECT_TRUE(c.skeleton.is_connected());
    if (n <= 4) {
      auto oracle = oracle::bounded_faces_brute_force(p.inequalities, p.vertices, p.rays);
      EXPECT_EQ(complex_faces(c), oracle);
    }
  }
}

TEST(BoundedSubcomplex, TwoPointsIsASegment) {
  BoundedComplex c = bounded_subcomplex(polyhedron_of_metric(metric_of({{0, 1}, {1, 0}})));
  EXPECT_EQ(c.vertices.size(), 2u);
  EXPECT_EQ(c.skeleton.num_edges(), 1u);
  EXPECT_EQ(c.dim(), 1);
  EXPECT_EQ(c.lattice.faces.size(), 3u);
}

TEST(BoundedSubcomplex, OrthantIsAPoint) {
  Polyhedron orthant = vertex_enumeration(2, {{{Scalar(-1), Scalar(0)}, Scalar(0)}, {{Scalar(0), Scalar(-1)}, Scalar(0)}});
  BoundedComplex c = bounded_subcomplex(orthant);
  EXPECT_EQ(c.vertices, (std::vector<Vector>{{Scalar(0), Scalar(0)}}));
  EXPECT_EQ(c.lattice.faces.size(), 1u);
}

TEST(BoundedSubcomplex, EquilateralTripleIsAStar) {
  Metric m = metric_of({{0, 2, 2}, {2, 0, 2}, {2, 2, 0}});
  BoundedComplex c = bounded_subcomplex(polyhedron_of_metric(m));
  EXPECT_EQ(c.vertices.size(), 4u);
  EXPECT_EQ(c.skeleton.num_edges(), 3u);
  auto center = std::find(c.vertices.begin(), c.vertices.end(), Vector(3, Scalar(1)));
  ASSERT_NE(center, c.vertices.end());
  EXPECT_EQ(c.skeleton.degree(static_cast<std::size_t>(center - c.vertices.begin())), 3u);
  EXPECT_TRUE(is_treelike(m));
  auto taxa = taxon_vertices(m, c);
  for (std::size_t t = 0; t < 3; ++t) {
    ASSERT_TRUE(taxa[t]);
    EXPECT_EQ(c.vertices[*taxa[t]], m.d[t]);
  }
}

TEST(BoundedSubcomplex, SquareMetricIsTwoDimensional) {
  // Four points on a 4-cycle with unit sides.
  Metric m = metric_of({{0, 1, 2, 1}, {1, 0, 1, 2}, {2, 1, 0, 1}, {1, 2, 1, 0}});
  Polyhedron p = polyhedron_of_metric(m);
  BoundedComplex c = bounded_subcomplex(p);
  EXPECT_EQ(c.dim(), 2);
  EXPECT_FALSE(is_treelike(m));
  EXPECT_EQ(complex_faces(c), oracle::bounded_faces_brute_force(p.inequalities, p.vertices, p.rays));
  auto colors = edge_dim_colors(c);
  EXPECT_EQ(colors, std::vector<int>(c.skeleton.num_edges(), 2));
}

TEST(TreeLike, SmallExamples) {
  EXPECT_TRUE(is_treelike(metric_of({{0, 1}, {1, 0}})));
  // Path t1 - t2 - t3 - t4 with unit weights.
  EXPECT_TRUE(is_treelike(metric_of({{0, 1, 2, 3}, {1, 0, 1, 2}, {2, 1, 0, 1}, {3, 2, 1, 0}})));
  // Generic perturbation of the uniform metric violating the four-point condition.
  EXPECT_FALSE(is_treelike(metric_of({{0, 20, 21, 22}, {20, 0, 23, 25}, {21, 23, 0, 24}, {22, 25, 24, 0}})));
}

TEST(TreeLike, RandomTreesAreRecovered) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    WeightedTree t = random_tree(rng);
    Metric m = tree_metric(t);
    EXPECT_TRUE(is_treelike(m)) << "trial " << trial;
    BoundedComplex c = bounded_subcomplex(polyhedron_of_metric(m));
    auto taxa = taxon_vertices(m, c);
    std::vector<int> colors(c.vertices.size(), 0);
    for (std::size_t i = 0; i < taxa.size(); ++i) {
      ASSERT_TRUE(taxa[i]) << "trial " << trial;
      colors[*taxa[i]] = static_cast<int>(i) + 1;
    }
    Suppressed expected = suppress(t);
    auto iso = find_isomorphism(expected.graph, c.skeleton, &expected.colors, &colors);
    ASSERT_TRUE(iso) << "trial " << trial;
    for (std::size_t i = 0; i < expected.graph.num_edges(); ++i) {
      const Edge& e = expected.graph.edges()[i];
      EXPECT_EQ(max_norm(c.vertices[(*iso)[e.u]], c.vertices[(*iso)[e.v]]), expected.lengths[i]) << "trial " << trial;
    }
    EXPECT_EQ(edge_dim_colors(c), std::vector<int>(c.skeleton.num_edges(), 1));
  }
}

TEST(Algae, DimensionFourAndAllTaxaMatched) {
  auto start = std::chrono::steady_clock::now();
  Metric m = algae();
  ASSERT_EQ(m.size(), 8u);
  Polyhedron p = polyhedron_of_metric(m);
  BoundedComplex c = bounded_subcomplex(p);
  EXPECT_EQ(c.dim(), 4);
  auto taxa = taxon_vertices(m, c);
  for (std::size_t t = 0; t < 8; ++t) EXPECT_TRUE(taxa[t]) << m.labels[t];
  EXPECT_TRUE(c.skeleton.is_connected());
  for (const auto& v : p.vertices) EXPECT_TRUE(p.contains(v));
  auto colors = edge_dim_colors(c);
  EXPECT_EQ(*std::min_element(colors.begin(), colors.end()), 1);
  EXPECT_EQ(*std::max_element(colors.begin(), colors.end()), 4);
  EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(), 120.0);
}

TEST(Visualize, TwoPointsApproximateMetric) {
  TightSpanDrawing d = visualize_tightspan(metric_of({{0, 1}, {1, 0}}), TightSpanMode::approximate_metric, {});
  EXPECT_EQ(d.lengths, std::vector<double>{1.0});
  ASSERT_EQ(d.scene.edges.size(), 1u);
  EXPECT_TRUE(d.spring.converged);
  const auto& a = d.scene.nodes[0].position;
  const auto& b = d.scene.nodes[1].position;
  EXPECT_NEAR(std::hypot(a[0] - b[0], a[1] - b[1], a[2] - b[2]), 1.0, 1e-3);
  for (const auto& n : d.scene.nodes) EXPECT_EQ(n.kind, NodeKind::taxon);
}

TEST(Visualize, CombinatorialColorsByFaceDimension) {
  Metric m = algae();
  SpringParams params;
  TightSpanDrawing d = visualize_tightspan(m, TightSpanMode::combinatorial, params);
  EXPECT_TRUE(d.spring.converged);
  std::set<std::string> labels;
  for (const auto& n : d.scene.nodes) {
    if (n.kind == NodeKind::taxon) labels.insert(n.label);
  }
  EXPECT_EQ(labels, std::set<std::string>(m.labels.begin(), m.labels.end()));
  std::set<std::string> colors;
  for (const auto& e : d.scene.edges) {
    ASSERT_TRUE(e.color_class);
    EXPECT_EQ(e.color, dimension_color(*e.color_class, 4));
    colors.insert(e.color);
  }
  EXPECT_EQ(colors.size(), 4u);
  EXPECT_EQ(dimension_color(1, 4), "#e61e1e");
  EXPECT_EQ(dimension_color(4, 4), "#1e3ce6");
}

TEST(Visualize, AlgaeSeparateFromNonAlgae) {
  // Taxa 0..2 are land plants, 3..7 algae.
  Metric m = algae();
  BoundedComplex c = bounded_subcomplex(polyhedron_of_metric(m));
  auto taxa = taxon_vertices(m, c);
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    SpringParams params;
    params.seed = seed;
    TightSpanDrawing d = visualize_tightspan(m, TightSpanMode::approximate_metric, params);
    auto dist = [&](std::size_t a, std::size_t b) {
      const auto& p = d.scene.nodes[*taxa[a]].position;
      const auto& q = d.scene.nodes[*taxa[b]].position;
      return std::hypot(p[0] - q[0], p[1] - q[1], p[2] - q[2]);
    };
    double within = 0, across = 0;
    for (std::size_t a = 0; a < 3; ++a) {
      for (std::size_t b = a + 1; b < 3; ++b) within += dist(a, b) / 3;
      for (std::size_t b = 3; b < 8; ++b) across += dist(a, b) / 15;
    }
    EXPECT_LT(within, across) << "seed " << seed;
  }
}
